"""Admissible absolute values on ZZ and Fq[t] and the pigeonhole approximation set.

An admissible absolute value comes with card(eps) and a way to split any finite
family of remainders mod b into at most card(eps) parts whose members differ by
less than eps*|b|. Applied coordinate-wise to multiples r*a of an element this
yields a finite set S of scalars such that for every a and b != 0 in an order
some r in S and q satisfy |N(r*a - q*b)| < |N(b)|.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import lcm, prod
from typing import Any, Protocol, Sequence

from dedekind_engine.errors import InvariantViolation, PreconditionError
from dedekind_engine.exact_arith import ceil_fraction
from dedekind_engine.poly import (
    GF,
    Polynomial,
    poly_divmod,
    poly_lcm,
    polynomials_below_degree,
)

logger = logging.getLogger(__name__)


def _check_eps(eps: Fraction) -> Fraction:
    eps = Fraction(eps)
    if eps <= 0:
        raise PreconditionError(f"eps must be positive, got {eps}")
    return eps


def card_z(eps: Fraction) -> int:
    """ceil(1/eps)."""
    return ceil_fraction(1 / _check_eps(eps))


def fq_exponent(q: int, eps: Fraction) -> int:
    """Least c >= 0 with q^-c <= eps, by exact comparison."""
    eps = _check_eps(eps)
    if q < 2:
        raise PreconditionError(f"field size must be >= 2, got {q}")
    c = 0
    while Fraction(1, q**c) > eps:
        c += 1
    return c


def card_fq(q: int, eps: Fraction) -> int:
    return q ** fq_exponent(q, eps)


class AbsoluteValue(Protocol):
    name: str

    def value(self, x) -> int: ...

    def card(self, eps: Fraction) -> int: ...

    def divmod(self, a, b) -> tuple[Any, Any]: ...

    def bucket(self, eps: Fraction, b, remainder) -> int: ...


@dataclass(frozen=True)
class AbsoluteValueZ:
    """x -> |x| on ZZ."""

    name: str = "Z"

    def value(self, x: int) -> int:
        return abs(x)

    def card(self, eps: Fraction) -> int:
        return card_z(eps)

    def divmod(self, a: int, b: int) -> tuple[int, int]:
        """a = q*b + r with 0 <= r < |b|."""
        if b == 0:
            raise PreconditionError("division by zero")
        q, r = divmod(a, abs(b))
        return (q if b > 0 else -q), r

    def bucket(self, eps: Fraction, b: int, remainder: int) -> int:
        # interval [k*eps*|b|, (k+1)*eps*|b|)
        return int(Fraction(remainder) / (eps * abs(b)))


@dataclass(frozen=True)
class AbsoluteValueFq:
    """f -> q^deg(f) on Fq[t], with |0| = 0."""

    q: int
    var: str = "t"

    def __post_init__(self):
        GF(self.q)

    @property
    def name(self) -> str:
        return f"F{self.q}[{self.var}]"

    def value(self, f: Polynomial) -> int:
        return 0 if f.is_zero else self.q**f.degree

    def card(self, eps: Fraction) -> int:
        return card_fq(self.q, eps)

    def divmod(self, a: Polynomial, b: Polynomial) -> tuple[Polynomial, Polynomial]:
        return poly_divmod(a, b)

    def bucket(self, eps: Fraction, b: Polynomial, remainder: Polynomial) -> int:
        """Index from the top min(c, deg b) coefficients of the remainder."""
        c = fq_exponent(self.q, eps)
        d = b.degree
        index = 0
        for k in range(d - 1, d - 1 - min(c, d), -1):
            index = index * self.q + remainder[k].residue
        return index


def partition(abv: AbsoluteValue, eps: Fraction, b, values: Sequence) -> tuple[int, ...]:
    """Assign each value a part in [0, card(eps)); values in one part have
    remainders mod b differing by less than eps*|b|."""
    eps = _check_eps(eps)
    if abv.value(b) == 0:
        raise PreconditionError("partition modulus must be nonzero")
    return tuple(abv.bucket(eps, b, abv.divmod(a, b)[1]) for a in values)


def verify_partition(
    abv: AbsoluteValue, eps: Fraction, b, values: Sequence, assignment: Sequence[int]
) -> bool:
    """Exact check of the partition contract for one assignment."""
    eps = _check_eps(eps)
    if any(not 0 <= part < abv.card(eps) for part in assignment):
        return False
    remainders = [abv.divmod(a, b)[1] for a in values]
    bound = eps * abv.value(b)
    for i, j in itertools.combinations(range(len(values)), 2):
        if assignment[i] == assignment[j] and not abv.value(remainders[i] - remainders[j]) < bound:
            return False
    return True


def pigeonhole_pair(
    abv: AbsoluteValue, eps: Fraction, b, tuples: Sequence[Sequence]
) -> tuple[int, int] | None:
    """Indices of two distinct tuples whose components share a part, component-wise.

    Always found once there are more than card(eps)^n tuples.
    """
    if not tuples:
        return None
    n = len(tuples[0])
    columns = [partition(abv, eps, b, [t[i] for t in tuples]) for i in range(n)]
    seen: dict[tuple[int, ...], int] = {}
    for index in range(len(tuples)):
        key = tuple(column[index] for column in columns)
        if key in seen and tuple(tuples[seen[key]]) != tuple(tuples[index]):
            return seen[key], index
        seen.setdefault(key, index)
    return None


# ---------------------------------------------------------------------------
# Norm forms


def norm_form(order) -> dict[tuple[int, ...], int]:
    """N(x_1 b_1 + ... + x_n b_n) as {exponent tuple: integer coefficient}.

    Leibniz expansion of det(sum x_i * lmul(b_i)).
    """
    n = order.degree
    mats = [order.lmul(order.unit_vector(i)) for i in range(n)]
    result: dict[tuple[int, ...], int] = {}
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i, j in itertools.combinations(range(n), 2) if perm[i] > perm[j])
        sign = -1 if inversions % 2 else 1
        terms: dict[tuple[int, ...], int] = {(0,) * n: sign}
        for k in range(n):
            entries = [mats[i][k][perm[k]] for i in range(n)]
            expanded: dict[tuple[int, ...], int] = {}
            for monomial, coefficient in terms.items():
                for i, entry in enumerate(entries):
                    if entry:
                        key = tuple(e + (1 if t == i else 0) for t, e in enumerate(monomial))
                        expanded[key] = expanded.get(key, 0) + coefficient * entry
            terms = expanded
        for monomial, coefficient in terms.items():
            result[monomial] = result.get(monomial, 0) + coefficient
    return {m: c for m, c in result.items() if c}


def norm_form_bound(order) -> int:
    """Sum of |coefficients| of the norm form: |N(x)| <= bound * max|x_i|^n."""
    return sum(abs(c) for c in norm_form(order).values())


# ---------------------------------------------------------------------------
# finset_approx


@dataclass(frozen=True)
class FinsetApprox:
    """Pigeonhole data: eps, card(eps), the grid, the difference set S, M and L.

    M is the product of S; L = lcm(S) divides M and is what class enumeration uses.
    """

    eps: Fraction
    card: int
    grid: tuple
    elements: tuple
    product: Any
    lcm: Any
    norm_bound: int


def _z_eps(bound: int, n: int) -> int:
    k = 1
    while bound > k**n:
        k += 1
    return k


def finset_approx(order, abv: AbsoluteValue) -> FinsetApprox:
    """The approximation set for an order over ZZ (number field) or Fq[t].

    ZZ: eps = 1/k for the least k with C * eps^n <= 1 (C the norm-form bound),
    grid 0..k^n and S = {1..k^n}.
    Fq[t]: eps = q^-c for the least c with q^(max deg of norm-form coefficients)
    * eps^n < q^n; the grid is every polynomial of degree < c*n followed by
    t^(c*n).
    """
    n = order.degree
    if isinstance(abv, AbsoluteValueZ):
        bound = norm_form_bound(order)
        k = _z_eps(bound, n)
        eps = Fraction(1, k)
        card = abv.card(eps)
        grid = tuple(range(card**n + 1))
        # differences of 0..m are exactly 1..m
        elements = tuple(range(1, len(grid)))
        approx = FinsetApprox(eps, card, grid, elements, prod(elements), lcm(*elements), bound)
    else:
        max_degree = order.norm_form_max_degree()
        c = 0
        while max_degree >= n * (c + 1):
            c += 1
        eps = Fraction(1, abv.q**c)
        card = abv.card(eps)
        field = GF(abv.q)
        grid = tuple(polynomials_below_degree(field, c * n, abv.var)) + (
            Polynomial.monomial(c * n, field, abv.var),
        )
        differences = {}
        for i, j in itertools.combinations(range(len(grid)), 2):
            diff = grid[j] - grid[i]
            differences[diff] = None
        elements = tuple(
            sorted(differences, key=lambda f: (f.degree, [x.residue for x in f.coeffs]))
        )
        product = Polynomial.constant(1, field, abv.var)
        running_lcm = Polynomial.constant(1, field, abv.var)
        for f in elements:
            product = product * f
            running_lcm = poly_lcm(running_lcm, f)
        approx = FinsetApprox(eps, card, grid, elements, product, running_lcm, max_degree)
    logger.debug(
        f"finset_approx over {abv.name}: eps={approx.eps} card={approx.card} "
        f"|S|={len(approx.elements)} L={approx.lcm}"
    )
    return approx


def norm_reduction_step(order, abv: AbsoluteValue, a: Sequence, b: Sequence, approx=None):
    """(q, r) with r in S and |N(r*a - q*b)| < |N(b)|.

    With c*b = N(b) = b' and a' = a*c, two grid values r_j < r_j' whose remainders
    r*a'_i mod b' share a part in every coordinate give r = r_j' - r_j and q the
    difference of the coordinate quotients.
    """
    if approx is None:
        approx = finset_approx(order, abv)
    b_norm = order.norm(b)
    if abv.value(b_norm) == 0:
        raise PreconditionError("norm_reduction_step needs b != 0")
    c = order.adjugate_multiplier(b)
    a_prime = order.mul_coords(a, c)
    n = order.degree

    seen: dict[tuple[int, ...], int] = {}
    quotients = []
    first = second = None
    for j, r_j in enumerate(approx.grid):
        parts = []
        row = []
        for i in range(n):
            quotient, remainder = abv.divmod(r_j * a_prime[i], b_norm)
            row.append(quotient)
            parts.append(abv.bucket(approx.eps, b_norm, remainder))
        quotients.append(row)
        key = tuple(parts)
        if key in seen:
            first, second = seen[key], j
            break
        seen[key] = j
    if first is None:
        raise InvariantViolation("pigeonhole failed: grid is smaller than the number of cells")

    r = approx.grid[second] - approx.grid[first]
    q = tuple(quotients[second][i] - quotients[first][i] for i in range(n))
    residual = tuple(r * x - y for x, y in zip(a, order.mul_coords(q, b)))
    if not abv.value(order.norm(residual)) < abv.value(b_norm):
        raise InvariantViolation(f"norm reduction failed for a={a}, b={b}")
    return q, r
