"""Tests for exact rational linear algebra."""

from fractions import Fraction

import pytest

from dedekind_engine.errors import PreconditionError
from dedekind_engine.linalg import (
    characteristic_polynomial_coeffs,
    determinant,
    dot,
    identity,
    inverse,
    mat_mul,
    mat_vec,
    nullspace_vector,
    rank,
    solve,
    transpose,
)


class TestLinalg:
    def test_determinant(self):
        assert determinant([[1, 2], [3, 4]]) == -2
        assert determinant([[0, 1], [1, 0]]) == -1
        assert determinant([[1, 2], [2, 4]]) == 0
        assert determinant([]) == 1

    def test_determinant_rejects_non_square(self):
        with pytest.raises(PreconditionError):
            determinant([[1, 2, 3], [4, 5, 6]])

    def test_inverse(self):
        m = [[2, 1], [5, 3]]
        assert mat_mul(m, inverse(m)) == identity(2)
        with pytest.raises(PreconditionError):
            inverse([[1, 2], [2, 4]])

    def test_solve(self):
        assert solve([[2, 0], [0, 4]], [1, 1]) == [Fraction(1, 2), Fraction(1, 4)]

    def test_rank_and_transpose(self):
        assert rank([[1, 2, 3], [2, 4, 6]]) == 1
        assert transpose([[1, 2, 3], [4, 5, 6]]) == [[1, 4], [2, 5], [3, 6]]
        assert mat_vec([[1, 2], [3, 4]], [1, 1]) == [3, 7]
        assert dot([1, 2], [3, 4]) == 11

    def test_nullspace_vector(self):
        columns = [[1, 0], [0, 1], [2, 3]]
        relation = nullspace_vector(columns)
        assert relation == [-2, -3, 1]
        assert nullspace_vector([[1, 0], [0, 1]]) is None

    def test_characteristic_polynomial(self):
        assert characteristic_polynomial_coeffs([[0, -2], [1, 2]]) == [2, -2, 1]
        assert characteristic_polynomial_coeffs([[3]]) == [-3, 1]
        diagonal = [[Fraction(1, 2), 0], [0, 2]]
        assert characteristic_polynomial_coeffs(diagonal) == [1, Fraction(-5, 2), 1]

    def test_inverse_of_rational_matrix(self):
        m = [[Fraction(1, 2), 1], [0, Fraction(1, 3)]]
        assert inverse(m) == [[2, -6], [0, 3]]
