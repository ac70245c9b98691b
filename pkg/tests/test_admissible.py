"""Tests for admissible absolute values, partitions and the approximation set."""

import itertools
from fractions import Fraction

import pytest

from dedekind_engine.admissible import (
    AbsoluteValueFq,
    AbsoluteValueZ,
    card_fq,
    card_z,
    finset_approx,
    fq_exponent,
    norm_form,
    norm_form_bound,
    norm_reduction_step,
    partition,
    pigeonhole_pair,
    verify_partition,
)
from dedekind_engine.errors import PreconditionError
from dedekind_engine.order import quadratic_maximal_order, rational_integers
from dedekind_engine.poly import GF, parse_polynomial, polynomials_below_degree


def f3(text: str):
    return parse_polynomial(text, GF(3), "t")


class TestCardinalities:
    @pytest.mark.parametrize(
        "eps,expected",
        [(Fraction(1), 1), (Fraction(1, 2), 2), (Fraction(1, 4), 4), (Fraction(2, 5), 3)],
    )
    def test_card_z(self, eps, expected):
        assert card_z(eps) == expected

    def test_card_fq(self):
        assert card_fq(3, Fraction(1, 9)) == 9
        assert card_fq(3, Fraction(1, 8)) == 9
        assert card_fq(2, Fraction(1, 3)) == 4
        assert card_fq(5, Fraction(2)) == 1
        assert fq_exponent(3, Fraction(1, 10)) == 3

    @pytest.mark.parametrize("eps", [Fraction(0), Fraction(-1, 2)])
    def test_nonpositive_eps(self, eps):
        with pytest.raises(PreconditionError):
            card_z(eps)
        with pytest.raises(PreconditionError):
            card_fq(3, eps)


class TestPartitions:
    def test_integer_partition_contract(self):
        abv = AbsoluteValueZ()
        eps = Fraction(1, 4)
        values = list(range(-14, 15))
        assignment = partition(abv, eps, 7, values)
        assert set(assignment) <= set(range(4))
        assert verify_partition(abv, eps, 7, values, assignment)

    def test_negative_modulus(self):
        abv = AbsoluteValueZ()
        assignment = partition(abv, Fraction(1, 3), -6, [0, 1, 2, 5])
        assert assignment == (0, 0, 1, 2)

    def test_polynomial_partition_contract(self):
        abv = AbsoluteValueFq(3)
        eps = Fraction(1, 9)
        b = f3("t^2 + 1")
        values = list(polynomials_below_degree(GF(3), 3))
        assignment = partition(abv, eps, b, values)
        assert set(assignment) <= set(range(9))
        assert verify_partition(abv, eps, b, values, assignment)

    def test_coarse_polynomial_partition(self):
        abv = AbsoluteValueFq(3)
        b = f3("t^2 + 1")
        assignment = partition(abv, Fraction(1, 3), b, [f3("t"), f3("t + 2"), f3("2t")])
        assert assignment == (1, 1, 2)

    def test_bad_assignment_is_rejected(self):
        abv = AbsoluteValueZ()
        assert not verify_partition(abv, Fraction(1, 2), 4, [0, 3], [0, 0])
        assert not verify_partition(abv, Fraction(1, 2), 4, [0], [5])

    def test_zero_modulus(self):
        with pytest.raises(PreconditionError):
            partition(AbsoluteValueZ(), Fraction(1, 2), 0, [1])
        with pytest.raises(PreconditionError):
            partition(AbsoluteValueFq(3), Fraction(1, 2), f3("0"), [f3("1")])

    def test_pigeonhole_pair(self):
        abv = AbsoluteValueZ()
        pair = pigeonhole_pair(abv, Fraction(1, 2), 4, [(0,), (1,), (2,)])
        assert pair == (0, 1)
        assert pigeonhole_pair(abv, Fraction(1, 2), 4, []) is None

    def test_pigeonhole_forced_beyond_card_power(self):
        abv = AbsoluteValueZ()
        tuples = [(i, 2 * i) for i in range(5)]
        assert pigeonhole_pair(abv, Fraction(1, 2), 5, tuples) is not None


class TestNormForms:
    def test_gaussian_norm_form(self):
        assert norm_form(quadratic_maximal_order(-1)) == {(2, 0): 1, (0, 2): 1}

    def test_non_monogenic_basis(self):
        order = quadratic_maximal_order(-23)
        assert norm_form(order) == {(2, 0): 1, (1, 1): 1, (0, 2): 6}
        assert norm_form_bound(order) == 8


class TestFinsetApprox:
    def test_rational_integers(self):
        approx = finset_approx(rational_integers(), AbsoluteValueZ())
        assert approx.eps == 1
        assert approx.elements == (1,)
        assert approx.lcm == 1

    def test_gaussian_integers(self):
        approx = finset_approx(quadratic_maximal_order(-1), AbsoluteValueZ())
        assert approx.eps == Fraction(1, 2)
        assert approx.card == 2
        assert approx.elements == (1, 2, 3, 4)
        assert approx.lcm == 12
        assert approx.product == 24

    def test_lcm_divides_product(self):
        approx = finset_approx(quadratic_maximal_order(-5), AbsoluteValueZ())
        assert approx.eps == Fraction(1, 3)
        assert approx.lcm == 2520
        assert approx.product % approx.lcm == 0

    @pytest.mark.parametrize("a,b", [((3, 1), (1, 1)), ((7, -2), (2, 3)), ((1, 0), (5, 5))])
    def test_norm_reduction_step(self, a, b):
        order = quadratic_maximal_order(-5)
        approx = finset_approx(order, AbsoluteValueZ())
        q, r = norm_reduction_step(order, AbsoluteValueZ(), a, b, approx)
        assert r in approx.elements
        residual = tuple(r * x - y for x, y in zip(a, order.mul_coords(q, b)))
        assert abs(order.norm(residual)) < abs(order.norm(b))


def _check_partition_exhaustively(abv, eps, b, values):
    assignment = partition(abv, eps, b, values)
    assert len(assignment) == len(values)
    assert all(0 <= part < abv.card(eps) for part in assignment)
    remainders = []
    for a in values:
        quotient, remainder = abv.divmod(a, b)
        assert quotient * b + remainder == a
        assert abv.value(remainder) < abv.value(b)
        remainders.append(remainder)
    bound = eps * abv.value(b)
    for i, j in itertools.combinations(range(len(values)), 2):
        if assignment[i] == assignment[j]:
            assert abv.value(remainders[i] - remainders[j]) < bound
    assert verify_partition(abv, eps, b, values, assignment)


@pytest.mark.slow
class TestPartitionSweeps:
    @pytest.mark.parametrize("eps", [Fraction(1), Fraction(1, 2), Fraction(1, 3), Fraction(1, 4)])
    def test_integers(self, eps):
        abv = AbsoluteValueZ()
        assert abv.card(eps) == eps.denominator
        for size in range(1, 21):
            for b in (size, -size):
                values = list(range(-2 * size, 2 * size + 1))
                _check_partition_exhaustively(abv, eps, b, values)

    @pytest.mark.parametrize("q", [2, 3])
    @pytest.mark.parametrize("c", [0, 1, 2])
    def test_polynomials(self, q, c):
        abv = AbsoluteValueFq(q)
        eps = Fraction(1, q**c)
        assert abv.card(eps) == q**c
        values = list(polynomials_below_degree(GF(q), 4))
        for b in values:
            if not b.is_zero:
                _check_partition_exhaustively(abv, eps, b, values)


@pytest.mark.slow
class TestNormReductionSweep:
    @pytest.mark.parametrize("d", [-1, -5])
    def test_every_pair_in_a_box(self, d):
        order = quadratic_maximal_order(d)
        abv = AbsoluteValueZ()
        approx = finset_approx(order, abv)
        box = list(itertools.product(range(-10, 11), repeat=2))
        for b in box:
            if b == (0, 0):
                continue
            b_norm = abs(order.norm(b))
            for a in box:
                q, r = norm_reduction_step(order, abv, a, b, approx)
                assert r in approx.elements
                residual = tuple(r * x - y for x, y in zip(a, order.mul_coords(q, b)))
                assert abs(order.norm(residual)) < b_norm
