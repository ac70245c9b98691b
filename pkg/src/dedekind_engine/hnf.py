"""Column Hermite normal form over a Euclidean domain.

A full-rank lattice in R^n is given by generating column vectors. Its HNF is the
upper-triangular n x n matrix H (stored row-major, H[i][j]) whose columns span
the same lattice, with normalized diagonal (positive over ZZ, monic over
GF(p)[t]) and every entry right of a pivot reduced modulo that pivot. The form
is unique, so lattice equality is matrix equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Protocol, Sequence

from dedekind_engine.errors import MathematicalError, PreconditionError
from dedekind_engine.exact_arith import gcd_ext
from dedekind_engine.poly import GF, Polynomial, poly_divmod, poly_xgcd


class EuclideanRing(Protocol):
    """Operations the HNF routine needs from the coefficient ring."""

    zero: Any
    one: Any

    def is_zero(self, a) -> bool: ...

    def xgcd(self, a, b) -> tuple[Any, Any, Any]: ...

    def exact_quo(self, a, b): ...

    def normalizing_unit(self, a): ...

    def divmod(self, a, b) -> tuple[Any, Any]: ...


@dataclass(frozen=True)
class IntegerEuclidean:
    zero: int = 0
    one: int = 1

    def is_zero(self, a: int) -> bool:
        return a == 0

    def xgcd(self, a: int, b: int) -> tuple[int, int, int]:
        return gcd_ext(a, b)

    def exact_quo(self, a: int, b: int) -> int:
        return a // b

    def normalizing_unit(self, a: int) -> int:
        return -1 if a < 0 else 1

    def divmod(self, a: int, b: int) -> tuple[int, int]:
        """Quotient and remainder with 0 <= r < |b|."""
        q, r = divmod(a, abs(b))
        return (q if b > 0 else -q), r


@dataclass(frozen=True)
class PolynomialEuclidean:
    """GF(p)[var] as a Euclidean ring; remainders have degree below the divisor."""

    p: int
    var: str = "t"

    @property
    def field(self):
        return GF(self.p)

    @property
    def zero(self) -> Polynomial:
        return Polynomial.zero(self.field, self.var)

    @property
    def one(self) -> Polynomial:
        return Polynomial.constant(1, self.field, self.var)

    def is_zero(self, a: Polynomial) -> bool:
        return a.is_zero

    def xgcd(self, a: Polynomial, b: Polynomial):
        return poly_xgcd(a, b)

    def exact_quo(self, a: Polynomial, b: Polynomial) -> Polynomial:
        return poly_divmod(a, b)[0]

    def normalizing_unit(self, a: Polynomial) -> Polynomial:
        return Polynomial.constant(self.field.one / a.leading_coefficient, self.field, self.var)

    def divmod(self, a: Polynomial, b: Polynomial):
        return poly_divmod(a, b)


INTEGERS = IntegerEuclidean()


def _combine(u, p: list, w, v: list) -> list:
    return [u * x + w * y for x, y in zip(p, v)]


def hnf(
    columns: Sequence[Sequence],
    n: int,
    ring: EuclideanRing = INTEGERS,
    modulus=None,
) -> list[list]:
    """HNF of the lattice spanned by `columns` (each of length n).

    `modulus`, when given, must be a nonzero ring element D with D * R^n inside
    the lattice; entries are then kept reduced mod D during elimination. Raises
    MathematicalError if the columns do not span a full-rank lattice.
    """
    if modulus is not None and ring.is_zero(modulus):
        raise PreconditionError("HNF modulus must be nonzero")
    active = [list(v) for v in columns if any(not ring.is_zero(x) for x in v)]
    if any(len(v) != n for v in active):
        raise PreconditionError(f"HNF input vectors must have length {n}")
    pivots: list[list | None] = [None] * n

    for i in reversed(range(n)):
        if modulus is not None:
            active = [[ring.divmod(x, modulus)[1] for x in v] for v in active]
            active = [v for v in active if any(not ring.is_zero(x) for x in v)]
            unit_vector = [ring.zero] * n
            unit_vector[i] = modulus
            active.append(unit_vector)
        nonzero = [v for v in active if not ring.is_zero(v[i])]
        rest = [v for v in active if ring.is_zero(v[i])]
        if not nonzero:
            raise MathematicalError("generators do not span a full-rank lattice")
        pivot = nonzero[0]
        for v in nonzero[1:]:
            a, b = pivot[i], v[i]
            g, u, w = ring.xgcd(a, b)
            new_pivot = _combine(u, pivot, w, v)
            remainder = _combine(ring.exact_quo(a, g), v, -ring.exact_quo(b, g), pivot)
            pivot = new_pivot
            if any(not ring.is_zero(x) for x in remainder):
                rest.append(remainder)
        unit = ring.normalizing_unit(pivot[i])
        pivots[i] = [unit * x for x in pivot]
        active = rest

    for j in range(n):
        column = pivots[j]
        for i in range(j - 1, -1, -1):
            q, _ = ring.divmod(column[i], pivots[i][i])
            if not ring.is_zero(q):
                column = [x - q * y for x, y in zip(column, pivots[i])]
        pivots[j] = column

    return [[pivots[j][i] for j in range(n)] for i in range(n)]


def hnf_columns(h: Sequence[Sequence]) -> list[list]:
    """Basis vectors (columns) of an HNF matrix."""
    n = len(h)
    return [[h[i][j] for i in range(n)] for j in range(n)]


def hnf_diagonal_product(h: Sequence[Sequence], ring: EuclideanRing = INTEGERS):
    result = ring.one
    for i in range(len(h)):
        result = result * h[i][i]
    return result


def hnf_coordinates(h: Sequence[Sequence], v: Sequence, ring: EuclideanRing = INTEGERS):
    """Coefficients c with sum c_j * column_j = v, or None if v is not in the lattice.

    Back-substitution from the bottom row; exact because H is triangular.
    """
    n = len(h)
    residual = list(v)
    coords = [ring.zero] * n
    for i in reversed(range(n)):
        q, r = ring.divmod(residual[i], h[i][i])
        if not ring.is_zero(r):
            return None
        coords[i] = q
        if not ring.is_zero(q):
            for k in range(i + 1):
                residual[k] = residual[k] - q * h[k][i]
    return coords


def hnf_contains(h: Sequence[Sequence], v: Sequence, ring: EuclideanRing = INTEGERS) -> bool:
    return hnf_coordinates(h, v, ring) is not None


def hnf_sort_key(h: Sequence[Sequence[int]]) -> tuple:
    """Lexicographic key over the entries of an integer HNF (row-major)."""
    return tuple(x for row in h for x in row)


def is_hnf(h: Sequence[Sequence[int]]) -> bool:
    """Check the integer HNF shape: upper triangular, positive diagonal, reduced rows."""
    n = len(h)
    for i in range(n):
        if h[i][i] <= 0:
            return False
        for j in range(n):
            if j < i and h[i][j] != 0:
                return False
            if j > i and not 0 <= h[i][j] < h[i][i]:
                return False
    return True
