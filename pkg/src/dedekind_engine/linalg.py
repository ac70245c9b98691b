"""Exact rational linear algebra on row-major lists of lists.

Elimination, determinants, inverses and characteristic polynomials run on
sympy's `DomainMatrix` over QQ; results come back as `Fraction`s.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from sympy.polys.domains import QQ as SYMPY_QQ
from sympy.polys.matrices import DomainMatrix

from dedekind_engine.errors import PreconditionError

Vector = list[Fraction]
Matrix = list[list[Fraction]]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(m: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*m)] if m else []


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    if a and len(a[0]) != len(b):
        raise PreconditionError("matrix dimensions do not match")
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def mat_vec(m: Sequence[Sequence], v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in m]


def dot(v1: Sequence, v2: Sequence):
    if len(v1) != len(v2):
        raise PreconditionError("cannot dot vectors of different dimensions")
    return sum(x * y for x, y in zip(v1, v2))


def _to_qq(x) -> object:
    x = Fraction(x)
    return SYMPY_QQ(x.numerator, x.denominator)


def _from_qq(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def _domain_matrix(m: Sequence[Sequence]) -> DomainMatrix:
    n_cols = len(m[0]) if m else 0
    return DomainMatrix([[_to_qq(x) for x in row] for row in m], (len(m), n_cols), SYMPY_QQ)


def _entries(dm: DomainMatrix) -> Matrix:
    n_rows, n_cols = dm.shape
    return [[_from_qq(dm[i, j].element) for j in range(n_cols)] for i in range(n_rows)]


def _check_square(m: Sequence[Sequence], what: str) -> int:
    n = len(m)
    if any(len(row) != n for row in m):
        raise PreconditionError(f"{what} of a non-square matrix")
    return n


def determinant(m: Sequence[Sequence]) -> Fraction:
    if _check_square(m, "determinant") == 0:
        return Fraction(1)
    return _from_qq(_domain_matrix(m).det())


def rank(m: Sequence[Sequence]) -> int:
    if not m or not m[0]:
        return 0
    return _domain_matrix(m).rank()


def inverse(m: Sequence[Sequence]) -> Matrix:
    """Raises PreconditionError for singular input."""
    if _check_square(m, "inverse") == 0:
        return []
    dm = _domain_matrix(m)
    if dm.det() == SYMPY_QQ.zero:
        raise PreconditionError("matrix is singular")
    return _entries(dm.inv())


def solve(m: Sequence[Sequence], b: Sequence) -> Vector:
    """Unique solution x of m x = b for square invertible m."""
    return mat_vec(inverse(m), [Fraction(x) for x in b])


def characteristic_polynomial_coeffs(m: Sequence[Sequence]) -> Vector:
    """Coefficients of det(X*I - m), constant term first."""
    if _check_square(m, "characteristic polynomial") == 0:
        return [Fraction(1)]
    return [_from_qq(c) for c in reversed(_domain_matrix(m).charpoly())]


def nullspace_vector(columns: Sequence[Sequence]) -> Vector | None:
    """A nonzero rational relation sum c_j * columns[j] = 0, or None if independent.

    The relation returned has last coefficient 1 whenever the last column is the
    first dependent one.
    """
    k = len(columns)
    if k == 0:
        return None
    reduced, pivots = _domain_matrix(transpose(columns)).rref()
    free = [c for c in range(k) if c not in pivots]
    if not free:
        return None
    chosen = free[0]
    rows = _entries(reduced)
    solution = [Fraction(0)] * k
    solution[chosen] = Fraction(1)
    for row_index, col in enumerate(pivots):
        solution[col] = -rows[row_index][chosen]
    return solution
