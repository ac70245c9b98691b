"""Imaginary quadratic function fields Fq(t)(y), y^2 = f(t), and their class groups.

The order Fq[t][y] is maximal when q is odd and f is squarefree. With deg f = 3
the place at infinity ramifies, so deg N(u + v*y) = max(2 deg u, 3 + 2 deg v)
and principality reduces to a finite search over bounded degrees. Ideals are
2 x 2 column HNF lattices over Fq[t].
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterator, Sequence

from dedekind_engine.admissible import AbsoluteValueFq, FinsetApprox, finset_approx
from dedekind_engine.class_group import (
    ClassGroupTable,
    PrincipalityResult,
    PrincipalityStatus,
    close_classes,
)
from dedekind_engine.errors import (
    InvariantViolation,
    MathematicalError,
    PreconditionError,
    UnsupportedError,
)
from dedekind_engine.hnf import PolynomialEuclidean, hnf, hnf_columns, hnf_coordinates
from dedekind_engine.poly import (
    DEGREE_OF_ZERO,
    GF,
    Polynomial,
    factor_mod_p,
    is_irreducible_mod_p,
    parse_polynomial,
    poly_divmod,
    poly_gcd,
    polynomials_below_degree,
)

logger = logging.getLogger(__name__)

Coords = tuple[Polynomial, Polynomial]


def _residues(f: Polynomial) -> tuple[int, ...]:
    return tuple(c.residue for c in f.coeffs)


def _poly_key(f: Polynomial) -> tuple:
    return (f.degree, tuple(reversed(_residues(f))))


@dataclass(frozen=True)
class FfOrder:
    """Fq[t][y] with y^2 = f, f monic squarefree of degree 3 and q an odd prime."""

    q: int
    f: Polynomial

    @property
    def base(self):
        return GF(self.q)

    @property
    def ring(self) -> PolynomialEuclidean:
        return PolynomialEuclidean(self.q, "t")

    @property
    def degree(self) -> int:
        return 2

    @property
    def is_maximal(self) -> bool:
        return True

    def poly(self, value) -> Polynomial:
        if isinstance(value, Polynomial):
            return value
        return Polynomial.constant(value, self.base, "t")

    @property
    def one_coords(self) -> Coords:
        return (self.poly(1), self.poly(0))

    def unit_vector(self, i: int) -> Coords:
        return (self.poly(int(i == 0)), self.poly(int(i == 1)))

    def mul_coords(self, a: Sequence[Polynomial], b: Sequence[Polynomial]) -> Coords:
        (u1, v1), (u2, v2) = a, b
        return (u1 * u2 + self.f * v1 * v2, u1 * v2 + u2 * v1)

    def lmul(self, a: Sequence[Polynomial]) -> list[list[Polynomial]]:
        u, v = a
        return [[u, self.f * v], [v, u]]

    def norm(self, a: Sequence[Polynomial]) -> Polynomial:
        u, v = a
        return u * u - self.f * v * v

    def adjugate_multiplier(self, b: Sequence[Polynomial]) -> Coords:
        """The conjugate u - v*y, whose product with b is N(b)."""
        u, v = b
        return (u, -v)

    def norm_form_max_degree(self) -> int:
        return self.f.degree

    def format_coords(self, coords: Sequence[Polynomial]) -> str:
        u, v = coords
        if v.is_zero:
            return str(u)
        if v.degree == 0:
            y_part = "y" if v[0].residue == 1 else f"{v}*y"
        else:
            y_part = f"({v})*y"
        return y_part if u.is_zero else f"{u} + {y_part}"

    def __str__(self) -> str:
        return f"F{self.q}[t][y]/(y^2 - ({self.f}))"


@dataclass(frozen=True)
class FfElement:
    """u + v*y in Fq[t][y]."""

    order: FfOrder
    u: Polynomial
    v: Polynomial

    @property
    def coords(self) -> Coords:
        return (self.u, self.v)

    def _wrap(self, coords: Sequence[Polynomial]) -> FfElement:
        return FfElement(self.order, coords[0], coords[1])

    def __add__(self, other: FfElement) -> FfElement:
        return self._wrap((self.u + other.u, self.v + other.v))

    def __sub__(self, other: FfElement) -> FfElement:
        return self._wrap((self.u - other.u, self.v - other.v))

    def __neg__(self) -> FfElement:
        return self._wrap((-self.u, -self.v))

    def __mul__(self, other: FfElement) -> FfElement:
        return self._wrap(self.order.mul_coords(self.coords, other.coords))

    def conjugate(self) -> FfElement:
        return self._wrap(self.order.adjugate_multiplier(self.coords))

    def norm(self) -> Polynomial:
        return self.order.norm(self.coords)

    def __str__(self) -> str:
        return self.order.format_coords(self.coords)


def ff_order(q: int, f: Polynomial | str) -> FfOrder:
    """Validate (q, f) and return the maximal order Fq[t][y]."""
    if q == 2:
        raise UnsupportedError("characteristic 2 needs Artin-Schreier extensions")
    field = GF(q)
    if isinstance(f, str):
        f = parse_polynomial(f, field, "t")
    else:
        f = f.map_domain(field, "t")
    if f.degree != 3 or not f.is_monic:
        raise PreconditionError(f"f must be monic of degree 3, got {f}")
    if poly_gcd(f, f.derivative()).degree > 0:
        raise MathematicalError(f"{f} is not squarefree over GF({q})")
    return FfOrder(q, f)


def ff_element(order: FfOrder, u, v=0) -> FfElement:
    return FfElement(order, order.poly(u), order.poly(v))


# ---------------------------------------------------------------------------
# Ideals


@dataclass(frozen=True)
class FfIdeal:
    """Column HNF [[a, b], [0, c]] over Fq[t]; the zero ideal has an empty `hnf`."""

    order: FfOrder
    hnf: tuple[tuple[Polynomial, ...], ...]

    @property
    def is_zero(self) -> bool:
        return not self.hnf

    @property
    def norm(self) -> Polynomial:
        """Monic generator of the norm ideal, the product of the diagonal."""
        if self.is_zero:
            raise MathematicalError("the zero ideal has no norm")
        return self.hnf[0][0] * self.hnf[1][1]

    @property
    def absolute_norm(self) -> int:
        return self.order.q**self.norm.degree

    def basis(self) -> list[Coords]:
        return [tuple(col) for col in hnf_columns(self.hnf)]

    def contains(self, x: Sequence[Polynomial] | FfElement) -> bool:
        coords = x.coords if isinstance(x, FfElement) else tuple(x)
        if self.is_zero:
            return all(c.is_zero for c in coords)
        return hnf_coordinates(self.hnf, list(coords), self.order.ring) is not None

    def sort_key(self) -> tuple:
        return tuple(_poly_key(x) for row in self.hnf for x in row)

    def __str__(self) -> str:
        if self.is_zero:
            return "(0)"
        return "<" + ", ".join(self.order.format_coords(v) for v in self.basis()) + ">"


def _from_columns(order: FfOrder, columns, modulus: Polynomial) -> FfIdeal:
    matrix = hnf(list(columns), 2, order.ring, modulus=modulus.monic())
    return FfIdeal(order, tuple(tuple(row) for row in matrix))


def ff_zero_ideal(order: FfOrder) -> FfIdeal:
    return FfIdeal(order, ())


def ff_unit_ideal(order: FfOrder) -> FfIdeal:
    one, zero = order.one_coords
    return FfIdeal(order, ((one, zero), (zero, one)))


def ff_ideal_from_generators(order: FfOrder, gens) -> FfIdeal:
    coords = [
        g.coords if isinstance(g, FfElement) else tuple(order.poly(c) for c in g) for g in gens
    ]
    coords = [c for c in coords if not all(x.is_zero for x in c)]
    if not coords:
        return ff_zero_ideal(order)
    modulus = order.norm(coords[0])
    for g in coords[1:]:
        modulus = poly_gcd(modulus, order.norm(g))
    columns = [order.mul_coords(g, order.unit_vector(j)) for g in coords for j in range(2)]
    return _from_columns(order, columns, modulus)


def ff_principal(order: FfOrder, x) -> FfIdeal:
    return ff_ideal_from_generators(order, [x])


def ff_ideal_mul(i: FfIdeal, j: FfIdeal) -> FfIdeal:
    order = i.order
    if i.is_zero or j.is_zero:
        return ff_zero_ideal(order)
    columns = [order.mul_coords(a, b) for a in i.basis() for b in j.basis()]
    return _from_columns(order, columns, i.norm * j.norm)


def ff_conjugate(ideal: FfIdeal) -> FfIdeal:
    if ideal.is_zero:
        return ideal
    order = ideal.order
    columns = [order.adjugate_multiplier(v) for v in ideal.basis()]
    return _from_columns(order, columns, ideal.norm)


def _divide_exactly(ideal: FfIdeal, d: Polynomial) -> FfIdeal:
    rows = []
    for row in ideal.hnf:
        new_row = []
        for x in row:
            quotient, remainder = poly_divmod(x, d)
            if not remainder.is_zero:
                raise InvariantViolation(f"{ideal} is not divisible by ({d})")
            new_row.append(quotient)
        rows.append(tuple(new_row))
    return FfIdeal(ideal.order, tuple(rows))


# ---------------------------------------------------------------------------
# Primes


@dataclass(frozen=True)
class FfPrime:
    ideal: FfIdeal
    p: Polynomial
    residue_degree: int
    ramification: int
    generators: str = ""

    def __str__(self) -> str:
        return self.generators or str(self.ideal)


def _pow_mod(a: Polynomial, exponent: int, modulus: Polynomial) -> Polynomial:
    result = Polynomial.constant(1, modulus.domain, modulus.var)
    base = a % modulus
    while exponent:
        if exponent & 1:
            result = (result * base) % modulus
        base = (base * base) % modulus
        exponent >>= 1
    return result


def _is_one(a: Polynomial) -> bool:
    return a.degree == 0 and a[0].residue == 1


def _nonresidue(p: Polynomial, size: int) -> Polynomial:
    minus_one = Polynomial.constant(-1, p.domain, p.var)
    for z in polynomials_below_degree(p.domain, p.degree, p.var):
        if not z.is_zero and _pow_mod(z, (size - 1) // 2, p) == minus_one:
            return z
    raise InvariantViolation(f"no quadratic nonresidue modulo {p}")


def sqrt_mod(a: Polynomial, p: Polynomial) -> Polynomial | None:
    """A square root of a in the field Fq[t]/(p) (Tonelli-Shanks), or None."""
    q = p.domain.p
    size = q**p.degree
    a = a % p
    if a.is_zero:
        return a
    if not _is_one(_pow_mod(a, (size - 1) // 2, p)):
        return None
    s, e = size - 1, 0
    while s % 2 == 0:
        s //= 2
        e += 1
    x = _pow_mod(a, (s + 1) // 2, p)
    b = _pow_mod(a, s, p)
    g = _pow_mod(_nonresidue(p, size), s, p)
    r = e
    while not _is_one(b):
        m, t = 0, b
        while not _is_one(t):
            t = (t * t) % p
            m += 1
        gs = _pow_mod(g, 2 ** (r - m - 1), p)
        g = (gs * gs) % p
        x = (x * gs) % p
        b = (b * g) % p
        r = m
    if (x * x) % p != a:
        raise InvariantViolation(f"square root of {a} modulo {p} failed")
    return x


def ff_primes_above(order: FfOrder, p: Polynomial) -> list[FfPrime]:
    """Primes over a monic irreducible p(t): ramified if p | f, split if f is a
    nonzero square mod p, inert otherwise."""
    p = order.poly(p).monic()
    if p.degree < 1 or not is_irreducible_mod_p(p):
        raise PreconditionError(f"{p} is not irreducible over GF({order.q})")
    zero, one = order.poly(0), order.poly(1)
    residue = order.f % p
    if residue.is_zero:
        ideal = ff_ideal_from_generators(order, [(p, zero), (zero, one)])
        primes = [FfPrime(ideal, p, 1, 2, f"({p}, y)")]
    else:
        root = sqrt_mod(residue, p)
        if root is None:
            ideal = ff_ideal_from_generators(order, [(p, zero)])
            primes = [FfPrime(ideal, p, 2, 1, f"({p})")]
        else:
            primes = []
            for s in (root, -root % p):
                ideal = ff_ideal_from_generators(order, [(p, zero), (-s, one)])
                text = f"({p}, {order.format_coords((-s, one))})"
                primes.append(FfPrime(ideal, p, 1, 1, text))
    for prime in primes:
        if prime.ideal.norm != p**prime.residue_degree:
            raise InvariantViolation(f"prime above {p} has norm {prime.ideal.norm}")
    if sum(P.residue_degree * P.ramification for P in primes) != 2:
        raise InvariantViolation(f"sum of e*f above {p} differs from 2")
    primes.sort(key=lambda P: P.ideal.sort_key())
    return primes


# ---------------------------------------------------------------------------
# Principality and reduction


def _polys_up_to(field, degree: int) -> Iterator[Polynomial]:
    """Polynomials of degree <= `degree`; only zero when `degree` < 0."""
    yield from polynomials_below_degree(field, max(degree + 1, 0), "t")


def elements_of_norm_degree(ideal: FfIdeal, d: int) -> Iterator[Coords]:
    """Every x in I with deg N(x) = d, by direct enumeration of the HNF lattice.

    deg N(u + v*y) = max(2 deg u, 3 + 2 deg v), so deg u <= d/2 and
    deg v <= (d - 3)/2; with x = alpha*(a, 0) + beta*(b, c) the remainder of
    beta*b mod a fixes u up to multiples of a.
    """
    order = ideal.order
    field = order.base
    (a, b), (_, c) = ideal.hnf
    v_max = (d - 3) // 2 if d >= 3 else DEGREE_OF_ZERO
    u_max = d // 2
    for beta in _polys_up_to(field, v_max - c.degree if v_max >= 0 else -1):
        u0 = (beta * b) % a
        for k in _polys_up_to(field, u_max - a.degree):
            x = (u0 + k * a, beta * c)
            if x[0].is_zero and x[1].is_zero:
                continue
            if order.norm(x).degree == d:
                yield x


def ff_is_principal(ideal: FfIdeal) -> PrincipalityResult:
    """Exact: I = (x) iff some x in I has deg N(x) = deg N(I)."""
    if ideal.is_zero:
        raise MathematicalError("principality of the zero ideal")
    for x in elements_of_norm_degree(ideal, ideal.norm.degree):
        return PrincipalityResult(PrincipalityStatus.PRINCIPAL, x, ideal.order.format_coords(x))
    return PrincipalityResult(PrincipalityStatus.NOT_PRINCIPAL)


def ff_minimal_element(ideal: FfIdeal) -> Coords:
    """A nonzero element whose norm has least degree.

    The curve y^2 = f has genus one and a single rational point at infinity, so
    every ideal class is represented by (1) or by a prime of degree one. Hence I^-1
    contains an integral J with deg N(J) <= 1, and x with (x) = I*J has
    deg N(x) <= deg N(I) + 1. Running out of candidates below that bound is a bug.
    """
    start = ideal.norm.degree
    for d in range(start, start + 2):
        for x in elements_of_norm_degree(ideal, d):
            return x
    raise InvariantViolation(f"no small element found in {ideal}")


def ff_reduce(ideal: FfIdeal) -> FfIdeal:
    """(x / N(I)) * I for x of least norm degree in the conjugate ideal."""
    y = ff_minimal_element(ff_conjugate(ideal))
    reduced = _divide_exactly(ff_ideal_mul(ff_principal(ideal.order, y), ideal), ideal.norm)
    if (reduced.norm.degree, reduced.sort_key()) < (ideal.norm.degree, ideal.sort_key()):
        return reduced
    return ideal


def ff_same_class(i: FfIdeal, j: FfIdeal) -> bool:
    """I ~ J iff I * conj(J) is principal, since J^-1 = conj(J) / N(J)."""
    return bool(ff_is_principal(ff_ideal_mul(i, ff_conjugate(j))))


# ---------------------------------------------------------------------------
# Class numbers


@dataclass
class FunctionFieldBackend:
    order: FfOrder
    approx: FinsetApprox

    def identity(self) -> FfIdeal:
        return ff_unit_ideal(self.order)

    def multiply(self, a: FfIdeal, b: FfIdeal) -> FfIdeal:
        return ff_reduce(ff_ideal_mul(a, b))

    def same_class(self, a: FfIdeal, b: FfIdeal) -> bool:
        return ff_same_class(a, b)

    def key(self, a: FfIdeal) -> tuple:
        return (a.norm.degree, a.sort_key())

    def generators(self) -> list[tuple[str, FfIdeal]]:
        gens = []
        for p, _ in factor_mod_p(self.approx.lcm):
            for prime in ff_primes_above(self.order, p):
                gens.append((str(prime), prime.ideal))
        return gens

    def describe(self, a: FfIdeal) -> str:
        return str(a)


def ff_class_group(order: FfOrder, threads: int | None = None) -> ClassGroupTable:
    approx = finset_approx(order, AbsoluteValueFq(order.q))
    table = close_classes(FunctionFieldBackend(order, approx), threads, approx)
    logger.debug(f"class group of {order}: h = {table.class_number}")
    return table


def ff_class_number(order: FfOrder, threads: int | None = None) -> int:
    return ff_class_group(order, threads).class_number


# ---------------------------------------------------------------------------
# The base ring Fq[t]


@dataclass(frozen=True)
class PolynomialRingOrder:
    """Fq[t] as a rank-one order over itself; ideals are monic generators."""

    q: int

    @property
    def degree(self) -> int:
        return 1

    def norm_form_max_degree(self) -> int:
        return 0

    def __str__(self) -> str:
        return f"F{self.q}[t]"


def fq_ideal(q: int, gens: Sequence[Polynomial]) -> Polynomial:
    """Monic generator of the ideal (gens) of Fq[t]; every ideal is principal."""
    nonzero = [g.map_domain(GF(q), "t") for g in gens if not g.is_zero]
    if not nonzero:
        return Polynomial.zero(GF(q), "t")
    result = nonzero[0].monic()
    for g in nonzero[1:]:
        result = poly_gcd(result, g)
    return result


def fq_quotient_is_field(p: Polynomial) -> bool:
    """Fq[t]/(p) is a field: every nonzero residue is coprime to p."""
    if p.degree < 1:
        return False
    return all(
        poly_gcd(r, p).degree == 0
        for r in polynomials_below_degree(p.domain, p.degree, p.var)
        if not r.is_zero
    )


@dataclass
class PolynomialRingBackend:
    order: PolynomialRingOrder
    approx: FinsetApprox

    def identity(self) -> Polynomial:
        return Polynomial.constant(1, GF(self.order.q), "t")

    def multiply(self, a: Polynomial, b: Polynomial) -> Polynomial:
        return a * b

    def same_class(self, a: Polynomial, b: Polynomial) -> bool:
        return not a.is_zero and not b.is_zero

    def key(self, a: Polynomial) -> tuple:
        return _poly_key(a)

    def generators(self) -> list[tuple[str, Polynomial]]:
        return [(f"({p})", p) for p, _ in factor_mod_p(self.approx.lcm) if p.degree > 0]

    def describe(self, a: Polynomial) -> str:
        return f"({a})"


def base_ring_class_number(q: int) -> int:
    order = PolynomialRingOrder(q)
    approx = finset_approx(order, AbsoluteValueFq(q))
    return close_classes(PolynomialRingBackend(order, approx), 1, approx).class_number
