"""Dense univariate polynomials over ZZ, QQ and GF(p).

Coefficients are stored lowest degree first with no trailing zeros. The zero
polynomial has degree `DEGREE_OF_ZERO` (-1), below every real degree.
"""

from __future__ import annotations

import itertools
import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Any, Iterator

from sympy import primerange
from sympy.polys.domains import ZZ as SYMPY_ZZ
from sympy.polys.galoistools import gf_factor, gf_irreducible_p

from dedekind_engine.errors import (
    InvariantViolation,
    ParseError,
    PreconditionError,
    UnsupportedError,
)
from dedekind_engine.exact_arith import (
    PrimeFieldElement,
    format_rational,
    integer_divisors,
    is_prime,
    mod_inverse,
)

logger = logging.getLogger(__name__)

DEGREE_OF_ZERO = -1


# ---------------------------------------------------------------------------
# Coefficient domains


@dataclass(frozen=True)
class IntegerRing:
    name: str = "ZZ"
    is_field: bool = False
    zero: int = 0
    one: int = 1

    def convert(self, value: Any) -> int:
        if isinstance(value, bool):
            return int(value)
        if isinstance(value, int):
            return value
        if isinstance(value, Fraction) and value.denominator == 1:
            return value.numerator
        raise PreconditionError(f"{value!r} is not an integer")

    def quo(self, a: int, b: int) -> int:
        """Exact quotient a / b."""
        if b == 0 or a % b != 0:
            raise PreconditionError(f"{a} is not divisible by {b} in ZZ")
        return a // b


@dataclass(frozen=True)
class RationalField:
    name: str = "QQ"
    is_field: bool = True
    zero: Fraction = Fraction(0)
    one: Fraction = Fraction(1)

    def convert(self, value: Any) -> Fraction:
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        raise PreconditionError(f"{value!r} is not a rational")

    def quo(self, a: Fraction, b: Fraction) -> Fraction:
        if b == 0:
            raise PreconditionError("division by zero in QQ")
        return a / b


@dataclass(frozen=True)
class PrimeField:
    p: int
    is_field: bool = True

    @property
    def name(self) -> str:
        return f"GF({self.p})"

    @property
    def zero(self) -> PrimeFieldElement:
        return PrimeFieldElement(0, self.p)

    @property
    def one(self) -> PrimeFieldElement:
        return PrimeFieldElement(1, self.p)

    def convert(self, value: Any) -> PrimeFieldElement:
        if isinstance(value, PrimeFieldElement):
            if value.modulus != self.p:
                raise PreconditionError(f"{value} lives in GF({value.modulus}), not {self.name}")
            return value
        if isinstance(value, int):
            return PrimeFieldElement(value % self.p, self.p)
        if isinstance(value, Fraction):
            return PrimeFieldElement(value.numerator, self.p) / value.denominator
        raise PreconditionError(f"{value!r} cannot be mapped into {self.name}")

    def quo(self, a: PrimeFieldElement, b: PrimeFieldElement) -> PrimeFieldElement:
        return a * mod_inverse(b)

    def elements(self) -> list[PrimeFieldElement]:
        return [PrimeFieldElement(r, self.p) for r in range(self.p)]


ZZ = IntegerRing()
QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:  # noqa: N802
    """The prime field with p elements; p is checked for primality once."""
    if not is_prime(p):
        raise PreconditionError(f"GF(p) needs a prime p, got {p}")
    return PrimeField(p)


Domain = IntegerRing | RationalField | PrimeField


# ---------------------------------------------------------------------------
# Polynomials


@dataclass(frozen=True)
class Polynomial:
    """Immutable dense polynomial; `coeffs[i]` is the coefficient of var**i."""

    coeffs: tuple
    domain: Domain = QQ
    var: str = field(default="x", compare=False)

    def __post_init__(self):
        converted = [self.domain.convert(c) for c in self.coeffs]
        while converted and not converted[-1]:
            converted.pop()
        object.__setattr__(self, "coeffs", tuple(converted))

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, domain: Domain = QQ, var: str = "x") -> Polynomial:
        return cls((), domain, var)

    @classmethod
    def constant(cls, value: Any, domain: Domain = QQ, var: str = "x") -> Polynomial:
        return cls((value,), domain, var)

    @classmethod
    def monomial(cls, degree: int, domain: Domain = QQ, var: str = "x", coefficient=1):
        return cls((0,) * degree + (coefficient,), domain, var)

    @classmethod
    def gen(cls, domain: Domain = QQ, var: str = "x") -> Polynomial:
        return cls.monomial(1, domain, var)

    def _like(self, coeffs) -> Polynomial:
        return Polynomial(tuple(coeffs), self.domain, self.var)

    # -- inspection ---------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else DEGREE_OF_ZERO

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading_coefficient(self):
        return self.coeffs[-1] if self.coeffs else self.domain.zero

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.domain.one

    def __getitem__(self, index: int):
        if 0 <= index < len(self.coeffs):
            return self.coeffs[index]
        return self.domain.zero

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: Polynomial) -> None:
        if self.domain != other.domain:
            raise PreconditionError(
                f"mixed coefficient domains {self.domain.name} and {other.domain.name}"
            )

    def _lift(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(other, self.domain, self.var)

    def __add__(self, other) -> Polynomial:
        other = self._lift(other)
        size = max(len(self.coeffs), len(other.coeffs))
        return self._like(self[i] + other[i] for i in range(size))

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return self._like(-c for c in self.coeffs)

    def __sub__(self, other) -> Polynomial:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> Polynomial:
        return self._lift(other) - self

    def __mul__(self, other) -> Polynomial:
        if not isinstance(other, Polynomial):
            c = self.domain.convert(other)
            return self._like(c * a for a in self.coeffs)
        self._check(other)
        if self.is_zero or other.is_zero:
            return Polynomial.zero(self.domain, self.var)
        product = [self.domain.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                product[i + j] = product[i + j] + a * b
        return self._like(product)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> Polynomial:
        if exponent < 0:
            raise PreconditionError("negative polynomial power")
        result = Polynomial.constant(self.domain.one, self.domain, self.var)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __divmod__(self, other: Polynomial) -> tuple[Polynomial, Polynomial]:
        return poly_divmod(self, other)

    def __floordiv__(self, other: Polynomial) -> Polynomial:
        return poly_divmod(self, other)[0]

    def __mod__(self, other: Polynomial) -> Polynomial:
        return poly_divmod(self, other)[1]

    def evaluate(self, point):
        """Horner evaluation; `point` may be any ring element compatible with the coefficients."""
        result = self.domain.zero
        for c in reversed(self.coeffs):
            result = result * point + c
        return result

    __call__ = evaluate

    def derivative(self) -> Polynomial:
        return self._like(c * i for i, c in enumerate(self.coeffs) if i > 0)

    def monic(self) -> Polynomial:
        if self.is_zero:
            return self
        if not self.domain.is_field:
            raise PreconditionError(f"cannot make monic over {self.domain.name}")
        inverse = self.domain.quo(self.domain.one, self.leading_coefficient)
        return self * inverse

    def map_domain(self, domain: Domain, var: str | None = None) -> Polynomial:
        return Polynomial(self.coeffs, domain, var or self.var)

    def with_var(self, var: str) -> Polynomial:
        return Polynomial(self.coeffs, self.domain, var)

    # -- text ---------------------------------------------------------------

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r}, {self.domain.name})"


def format_polynomial(f: Polynomial) -> str:
    """Render as e.g. "x^2 + 5", "t^3 - t + 1", "3/2*x - 1/3"."""
    if f.is_zero:
        return "0"
    pieces = []
    for degree in range(f.degree, -1, -1):
        c = f.coeffs[degree]
        if not c:
            continue
        if isinstance(c, PrimeFieldElement):
            magnitude, negative = Fraction(c.residue), False
        else:
            magnitude, negative = abs(Fraction(c)), c < 0
        if degree == 0:
            body = format_rational(magnitude)
        else:
            power = f.var if degree == 1 else f"{f.var}^{degree}"
            if magnitude == 1:
                body = power
            elif magnitude.denominator == 1:
                body = f"{magnitude.numerator}{power}"
            else:
                body = f"{format_rational(magnitude)}*{power}"
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(pieces)


_TERM_RE = re.compile(r"([+-]?)([^+-]+)")


def parse_polynomial(text: str, domain: Domain = QQ, var: str = "x") -> Polynomial:
    """Parse "x^2 + 5", "t^3 - t + 1", "3/2*x^2 - x" (whitespace-insensitive)."""
    compact = re.sub(r"\s+", "", text).replace("**", "^")
    if not compact:
        raise ParseError("empty polynomial")
    term_re = re.compile(
        rf"^(?:(\d+)(?:/(\d+))?)?(\*)?(?:({re.escape(var)})(?:\^(\d+))?)?$"
    )
    coeffs: dict[int, Fraction] = {}
    position = 0
    for match in _TERM_RE.finditer(compact):
        if match.start() != position:
            raise ParseError(f"cannot parse polynomial {text!r}")
        position = match.end()
        sign, body = match.groups()
        term = term_re.match(body)
        if not term:
            raise ParseError(f"bad term {body!r} in {text!r} (variable is {var!r})")
        numerator, denominator, star, variable, exponent = term.groups()
        if numerator is None and variable is None:
            raise ParseError(f"bad term {body!r} in {text!r}")
        if star and (numerator is None or variable is None):
            raise ParseError(f"dangling '*' in {text!r}")
        if exponent is not None and variable is None:
            raise ParseError(f"exponent without variable in {text!r}")
        if denominator is not None and int(denominator) == 0:
            raise ParseError(f"zero denominator in {text!r}")
        value = Fraction(int(numerator), int(denominator or 1)) if numerator else Fraction(1)
        if sign == "-":
            value = -value
        degree = 0 if variable is None else int(exponent or 1)
        coeffs[degree] = coeffs.get(degree, Fraction(0)) + value
    if position != len(compact):
        raise ParseError(f"cannot parse polynomial {text!r}")
    size = max(coeffs) + 1
    values = [coeffs.get(i, Fraction(0)) for i in range(size)]
    if domain == ZZ and any(v.denominator != 1 for v in values):
        raise ParseError(f"{text!r} has non-integer coefficients")
    return Polynomial(tuple(values), domain, var)


# ---------------------------------------------------------------------------
# Division and gcd


def poly_divmod(a: Polynomial, b: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Return (q, r) with a = q*b + r and deg r < deg b.

    Over ZZ the divisor must be monic.
    """
    a._check(b)
    domain = a.domain
    if b.is_zero:
        raise PreconditionError("division by the zero polynomial")
    if not domain.is_field and b.leading_coefficient not in (1, -1):
        raise PreconditionError(f"non-monic divisor {b} over {domain.name}")
    if a.degree < b.degree:
        return Polynomial.zero(domain, a.var), a

    remainder = list(a.coeffs)
    quotient = [domain.zero] * (a.degree - b.degree + 1)
    lead = b.leading_coefficient
    for k in range(a.degree - b.degree, -1, -1):
        c = domain.quo(remainder[k + b.degree], lead)
        quotient[k] = c
        if not c:
            continue
        for j, bj in enumerate(b.coeffs):
            remainder[j + k] = remainder[j + k] - c * bj
    return a._like(quotient), a._like(remainder[: b.degree])


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd over a field."""
    a._check(b)
    if not a.domain.is_field:
        raise PreconditionError(f"poly_gcd needs a field, got {a.domain.name}")
    if a.is_zero and b.is_zero:
        raise PreconditionError("gcd of two zero polynomials")
    while not b.is_zero:
        a, b = b, poly_divmod(a, b)[1]
    return a.monic()


def poly_xgcd(a: Polynomial, b: Polynomial) -> tuple[Polynomial, Polynomial, Polynomial]:
    """Return (g, s, t) with g = gcd(a, b) monic and s*a + t*b = g."""
    a._check(b)
    if not a.domain.is_field:
        raise PreconditionError(f"poly_xgcd needs a field, got {a.domain.name}")
    if a.is_zero and b.is_zero:
        raise PreconditionError("gcd of two zero polynomials")
    one = Polynomial.constant(a.domain.one, a.domain, a.var)
    zero = Polynomial.zero(a.domain, a.var)
    old_r, r = a, b
    old_s, s = one, zero
    old_t, t = zero, one
    while not r.is_zero:
        q, rem = poly_divmod(old_r, r)
        old_r, r = r, rem
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    inverse = a.domain.quo(a.domain.one, old_r.leading_coefficient)
    return old_r * inverse, old_s * inverse, old_t * inverse


def poly_lcm(a: Polynomial, b: Polynomial) -> Polynomial:
    if a.is_zero or b.is_zero:
        return Polynomial.zero(a.domain, a.var)
    return poly_divmod(a * b, poly_gcd(a, b))[0].monic()


# ---------------------------------------------------------------------------
# Integer polynomials


def content(f: Polynomial) -> Fraction:
    """Positive rational c with f / c a primitive integer polynomial."""
    if f.is_zero:
        return Fraction(0)
    den = lcm(*(Fraction(c).denominator for c in f.coeffs))
    num = 0
    for c in f.coeffs:
        num = gcd(num, int(Fraction(c) * den))
    return Fraction(num, den)


def primitive_part(f: Polynomial) -> Polynomial:
    """Primitive integer polynomial with positive leading coefficient, same roots as f."""
    if f.is_zero:
        raise PreconditionError("zero polynomial has no primitive part")
    c = content(f)
    if f.leading_coefficient < 0:
        c = -c
    return Polynomial(tuple(Fraction(x) / c for x in f.coeffs), ZZ, f.var)


def reduce_mod_p(f: Polynomial, p: int) -> Polynomial:
    """Image of an integer (or p-integral rational) polynomial in GF(p)[x]."""
    return f.map_domain(GF(p))


def rational_roots(f: Polynomial) -> set[Fraction]:
    """All rational roots of a nonzero polynomial over ZZ or QQ.

    Candidates are p/q with p | constant term and q | leading coefficient (the
    Rational Root Theorem makes this list complete); each is verified exactly.
    """
    if f.is_zero:
        raise PreconditionError("the zero polynomial has every number as a root")
    g = primitive_part(f)
    roots: set[Fraction] = set()
    shift = 0
    while g.coeffs[shift] == 0:
        shift += 1
    if shift:
        roots.add(Fraction(0))
        g = Polynomial(g.coeffs[shift:], ZZ, g.var)
    if g.degree <= 0:
        return roots
    rational = g.map_domain(QQ)
    for p in integer_divisors(g.coeffs[0]):
        for q in integer_divisors(g.leading_coefficient):
            for candidate in (Fraction(p, q), Fraction(-p, q)):
                if candidate not in roots and rational.evaluate(candidate) == 0:
                    roots.add(candidate)
    return roots


def is_integrally_closed_check(f: Polynomial) -> bool:
    """For monic f in ZZ[x]: every rational root is an integer (ZZ is integrally closed)."""
    if not f.is_monic or f.domain != ZZ:
        raise PreconditionError("is_integrally_closed_check expects a monic integer polynomial")
    return all(root.denominator == 1 for root in rational_roots(f))


# ---------------------------------------------------------------------------
# Factorisation over prime fields


def _to_gf_list(f: Polynomial) -> list:
    return [SYMPY_ZZ(int(c)) for c in reversed(f.coeffs)]


def _from_gf_list(coeffs, domain: PrimeField, var: str) -> Polynomial:
    return Polynomial(tuple(int(c) for c in reversed(coeffs)), domain, var)


def _has_root(f: Polynomial) -> bool:
    return any(not f.evaluate(a) for a in f.domain.elements())


def is_irreducible_mod_p(f: Polynomial) -> bool:
    """Irreducibility over GF(p): root search for degree <= 3, Rabin's test above."""
    if f.degree < 1:
        return False
    if f.degree == 1:
        return True
    if f.degree <= 3:
        return not _has_root(f)
    return bool(gf_irreducible_p(_to_gf_list(f.monic()), f.domain.p, SYMPY_ZZ))


def factor_mod_p(f: Polynomial) -> list[tuple[Polynomial, int]]:
    """Factor f in GF(p)[x] into monic irreducibles with multiplicities.

    The result is sorted by (degree, coefficients) and certified by
    re-multiplication and per-factor irreducibility checks.
    """
    if not isinstance(f.domain, PrimeField):
        raise PreconditionError(f"factor_mod_p needs GF(p) coefficients, got {f.domain.name}")
    if f.is_zero:
        raise PreconditionError("cannot factor the zero polynomial")
    p = f.domain.p
    lc, raw = gf_factor(_to_gf_list(f), p, SYMPY_ZZ)
    factors = [(_from_gf_list(g, f.domain, f.var), int(e)) for g, e in raw]
    factors.sort(key=lambda item: (item[0].degree, [c.residue for c in item[0].coeffs], item[1]))

    product = Polynomial.constant(int(lc), f.domain, f.var)
    for g, e in factors:
        product = product * g**e
    if product != f or not all(is_irreducible_mod_p(g) for g, _ in factors):
        raise InvariantViolation(f"factorisation of {f} mod {p} failed certification")
    return factors


def monic_polynomials(domain: PrimeField, degree: int, var: str = "t") -> Iterator[Polynomial]:
    """All monic polynomials of the given degree, lexicographic in the coefficients."""
    for tail in itertools.product(range(domain.p), repeat=degree):
        yield Polynomial(tuple(reversed(tail)) + (1,), domain, var)


def polynomials_below_degree(domain: PrimeField, bound: int, var: str = "t"):
    """All polynomials of degree < bound (the zero polynomial first)."""
    for coeffs in itertools.product(range(domain.p), repeat=bound):
        yield Polynomial(tuple(reversed(coeffs)), domain, var)


def monic_irreducibles(domain: PrimeField, degree: int, var: str = "t") -> list[Polynomial]:
    return [f for f in monic_polynomials(domain, degree, var) if is_irreducible_mod_p(f)]


# ---------------------------------------------------------------------------
# Irreducibility over QQ


@dataclass(frozen=True)
class IrreducibilityCertificate:
    """Outcome of `is_irreducible_q` and the evidence behind it."""

    irreducible: bool
    method: str
    detail: str = ""

    def __bool__(self) -> bool:
        return self.irreducible


def _subset_degree_sums(degrees: list[int]) -> set[int]:
    sums = {0}
    for d in degrees:
        sums |= {s + d for s in sums}
    return sums


def _kronecker_quadratic_factor(g: Polynomial) -> Polynomial | None:
    """Search an integer quadratic factor of g through the values g(-1), g(0), g(1)."""
    values = [int(g.evaluate(k)) for k in (-1, 0, 1)]
    choices = [[d for d in integer_divisors(v)] + [-d for d in integer_divisors(v)] for v in values]
    rational = g.map_domain(QQ)
    for d_minus, d_zero, d_plus in itertools.product(*choices):
        if (d_plus - d_minus) % 2:
            continue
        c1 = (d_plus - d_minus) // 2
        c2 = (d_plus + d_minus) // 2 - d_zero
        if c2 == 0:
            continue
        candidate = Polynomial((d_zero, c1, c2), QQ, g.var)
        if poly_divmod(rational, candidate)[1].is_zero:
            return primitive_part(candidate)
    return None


def is_irreducible_q(f: Polynomial, prime_bound: int = 200) -> IrreducibilityCertificate:
    """Decide irreducibility over QQ with a certificate.

    Certificates: degree one; absence of rational roots (degree 2-3); Eisenstein
    at a prime; irreducibility modulo an odd prime; incompatible factor-degree
    patterns modulo several primes; exhaustive quadratic-factor search (degree 4).
    """
    if f.degree < 1:
        raise PreconditionError("irreducibility is undefined for constants")
    g = primitive_part(f)
    n = g.degree
    if n == 1:
        return IrreducibilityCertificate(True, "degree-one")

    roots = rational_roots(g)
    if roots:
        root = max(roots)
        return IrreducibilityCertificate(False, "rational-root", format_rational(root))
    if n <= 3:
        return IrreducibilityCertificate(True, "no-rational-root")

    lead, constant = g.leading_coefficient, g.coeffs[0]
    tail_content = 0
    for c in g.coeffs[:-1]:
        tail_content = gcd(tail_content, c)
    for p in integer_divisors(tail_content):
        if is_prime(p) and lead % p != 0 and constant % (p * p) != 0:
            return IrreducibilityCertificate(True, "eisenstein", str(p))

    possible = set(range(1, n))
    used: list[int] = []
    for p in primerange(3, prime_bound):
        if lead % p == 0:
            continue
        factors = factor_mod_p(reduce_mod_p(g, p))
        degrees = [h.degree for h, e in factors for _ in range(e)]
        if degrees == [n]:
            return IrreducibilityCertificate(True, "irreducible-mod-p", str(p))
        before = len(possible)
        possible &= _subset_degree_sums(degrees)
        if len(possible) < before:
            used.append(p)
        if not possible:
            return IrreducibilityCertificate(
                True, "degree-pattern", ",".join(str(q) for q in used)
            )

    if n == 4:
        factor = _kronecker_quadratic_factor(g)
        if factor is not None:
            return IrreducibilityCertificate(False, "factor", str(factor))
        return IrreducibilityCertificate(True, "kronecker")

    logger.warning(f"no irreducibility certificate for {f} below prime bound {prime_bound}")
    raise UnsupportedError(f"cannot certify irreducibility of {f} (degree {n})")
