"""Fractional ideals (1/den) * num of an order, colon ideals and inverses."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from dedekind_engine.errors import MathematicalError, PreconditionError, UnsupportedError
from dedekind_engine.exact_arith import common_denominator, is_prime
from dedekind_engine.hnf import hnf
from dedekind_engine.ideals import (
    IntegralIdeal,
    ideal_add,
    ideal_from_generators,
    ideal_mul,
    ideal_norm,
    ideal_scale,
    is_maximal_ideal_check,
    primes_above,
    unit_ideal,
    zero_ideal,
)
from dedekind_engine.linalg import inverse, mat_mul, transpose
from dedekind_engine.number_field import NfElement
from dedekind_engine.order import OrderBasis, maximality_certificate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FractionalIdeal:
    """(1/den) * num with den > 0 minimal; build through `frac_normalize`."""

    num: IntegralIdeal
    den: int

    @property
    def order(self) -> OrderBasis:
        return self.num.order

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def norm(self) -> Fraction:
        return Fraction(ideal_norm(self.num), self.den**self.order.degree)

    def __str__(self) -> str:
        if self.den == 1:
            return str(self.num)
        return f"(1/{self.den}) * {self.num}"


def _content(ideal: IntegralIdeal) -> int:
    g = 0
    for row in ideal.hnf:
        for x in row:
            g = gcd(g, x)
    return g


def frac_normalize(num: IntegralIdeal, den: int) -> FractionalIdeal:
    """Canonical pair: den > 0 and gcd(content(num), den) = 1; zero is (0, 1)."""
    if den == 0:
        raise PreconditionError("fractional ideal with zero denominator")
    if num.is_zero:
        return FractionalIdeal(num, 1)
    den = abs(den)
    g = gcd(_content(num), den)
    if g > 1:
        num = IntegralIdeal(num.order, tuple(tuple(x // g for x in row) for row in num.hnf))
        den //= g
    return FractionalIdeal(num, den)


def frac_from_integral(ideal: IntegralIdeal) -> FractionalIdeal:
    return frac_normalize(ideal, 1)


def frac_unit(order: OrderBasis) -> FractionalIdeal:
    return FractionalIdeal(unit_ideal(order), 1)


def frac_zero(order: OrderBasis) -> FractionalIdeal:
    return FractionalIdeal(zero_ideal(order), 1)


def frac_principal(order: OrderBasis, x: NfElement) -> FractionalIdeal:
    """(x) for any x in K."""
    coords = order.coords(x)
    d = common_denominator(coords)
    numerator = ideal_from_generators(order, [[int(c * d) for c in coords]])
    return frac_normalize(numerator, d)


def frac_scale(ideal: FractionalIdeal, c: Fraction) -> FractionalIdeal:
    """c * I for a rational c."""
    c = Fraction(c)
    if c == 0:
        return frac_zero(ideal.order)
    return frac_normalize(ideal_scale(ideal.num, abs(c.numerator)), ideal.den * c.denominator)


def _check(i: FractionalIdeal, j: FractionalIdeal) -> None:
    if i.order != j.order:
        raise PreconditionError("fractional ideals of different orders")


def frac_mul(i: FractionalIdeal, j: FractionalIdeal) -> FractionalIdeal:
    _check(i, j)
    return frac_normalize(ideal_mul(i.num, j.num), i.den * j.den)


def frac_add(i: FractionalIdeal, j: FractionalIdeal) -> FractionalIdeal:
    _check(i, j)
    return frac_normalize(
        ideal_add(ideal_scale(i.num, j.den), ideal_scale(j.num, i.den)), i.den * j.den
    )


def frac_eq(i: FractionalIdeal, j: FractionalIdeal) -> bool:
    return i == j


def frac_contains(ideal: FractionalIdeal, x: NfElement) -> bool:
    scaled = [c * ideal.den for c in ideal.order.coords(x)]
    if any(c.denominator != 1 for c in scaled):
        return False
    return ideal.num.contains([c.numerator for c in scaled])


def _colon_integral(a: IntegralIdeal, b: IntegralIdeal) -> FractionalIdeal:
    """(A : B) = {x : x*B in A} for nonzero integral A, B.

    x (order coordinates X) qualifies iff H_A^-1 * lmul(beta) * X is integral for
    every basis vector beta of B. The admissible X form the dual of the row lattice
    of the stacked matrices; that dual is spanned by the columns of W^-T where W
    holds a row-lattice basis.
    """
    order = a.order
    n = order.degree
    h_inv = inverse(a.hnf)
    rows = []
    for beta in b.basis():
        rows.extend(mat_mul(h_inv, order.lmul(beta)))
    d = common_denominator(x for row in rows for x in row)
    integer_rows = [[int(x * d) for x in row] for row in rows]
    row_lattice = hnf(integer_rows, n)
    dual = [[d * x for x in row] for row in inverse(transpose(row_lattice))]
    e = common_denominator(x for row in dual for x in row)
    columns = transpose([[int(x * e) for x in row] for row in dual])
    numerator = IntegralIdeal(order, tuple(tuple(r) for r in hnf(columns, n)))
    return frac_normalize(numerator, e)


def frac_div(i: FractionalIdeal, j: FractionalIdeal) -> FractionalIdeal:
    """The colon module I / J = {x in K : x*J is contained in I}."""
    _check(i, j)
    if j.is_zero:
        raise MathematicalError("division by the zero fractional ideal")
    if i.is_zero:
        return frac_zero(i.order)
    colon = _colon_integral(i.num, j.num)
    return frac_scale(colon, Fraction(j.den, i.den))


def frac_inv(ideal: FractionalIdeal) -> FractionalIdeal:
    """1 / I, with the convention that the inverse of zero is zero."""
    if ideal.is_zero:
        return ideal
    return frac_div(frac_unit(ideal.order), ideal)


def is_invertible(ideal: FractionalIdeal) -> bool:
    if ideal.is_zero:
        return False
    return frac_mul(ideal, frac_inv(ideal)) == frac_unit(ideal.order)


# ---------------------------------------------------------------------------
# Dedekind characterisations side by side


def sample_ideals(order: OrderBasis, bound: int) -> list[IntegralIdeal]:
    """Distinct ideals (m, x) for 1 <= m <= bound and x in [0, m)^n, by (norm, HNF)."""
    found: set[IntegralIdeal] = set()
    for m in range(1, bound + 1):
        m_coords = [m * c for c in order.one_coords]
        for x in itertools.product(range(m), repeat=order.degree):
            found.add(ideal_from_generators(order, [m_coords, x]))
    return sorted(found, key=lambda i: (i.norm, i.sort_key()))


@dataclass(frozen=True)
class DedekindReport:
    """Both characterisations of a Dedekind domain, evaluated on one order."""

    noetherian: bool
    integrally_closed: bool
    dimension_at_most_one: bool
    all_sampled_invertible: bool
    non_invertible_witness: str | None
    primes_checked: int
    ideals_checked: int

    @property
    def is_dedekind(self) -> bool:
        return self.noetherian and self.integrally_closed and self.dimension_at_most_one

    @property
    def is_dedekind_inv(self) -> bool:
        return self.all_sampled_invertible


def dedekind_report(order: OrderBasis, ideal_bound: int = 6, prime_cap: int = 7) -> DedekindReport:
    """Noetherian (every order is a finitely generated ZZ-module), integrally closed
    (maximality certificate), dimension <= 1 (primes over p <= prime_cap are maximal)
    and invertibility of sampled nonzero fractional ideals."""
    closed = (
        order.is_maximal
        if order.is_maximal is not None
        else bool(maximality_certificate(order))
    )

    primes_checked = 0
    dimension_ok = True
    for p in range(2, prime_cap + 1):
        if not is_prime(p):
            continue
        try:
            primes = primes_above(order, p)
        except UnsupportedError:
            logger.debug(f"skipping p = {p}: no generator with index prime to p")
            continue
        for prime in primes:
            primes_checked += 1
            dimension_ok = dimension_ok and is_maximal_ideal_check(prime.ideal)

    witness = None
    ideals = sample_ideals(order, ideal_bound)
    for ideal in ideals:
        if not is_invertible(frac_from_integral(ideal)):
            witness = str(ideal)
            break
    return DedekindReport(
        noetherian=True,
        integrally_closed=bool(closed),
        dimension_at_most_one=dimension_ok,
        all_sampled_invertible=witness is None,
        non_invertible_witness=witness,
        primes_checked=primes_checked,
        ideals_checked=len(ideals),
    )
