"""Exact integers, rationals and prime-field scalars.

Integers are Python ints and rationals are `fractions.Fraction`: both are
arbitrary precision, immutable and canonical (a Fraction is always reduced with a
positive denominator), so equality of values is equality of representations.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import lcm, prod

from sympy import factorint, isprime

from dedekind_engine.errors import InvariantViolation, ParseError, PreconditionError

ExactInteger = int
ExactRational = Fraction

_INTEGER_RE = re.compile(r"^[+-]?\d+$")
_RATIONAL_RE = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")


def gcd_ext(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: return (g, u, v) with g = gcd(a, b) >= 0 and u*a + v*b = g."""
    if a == 0 and b == 0:
        return 0, 0, 0
    if a != 0 and b % a == 0:
        return abs(a), (1 if a > 0 else -1), 0

    old_r, r = a, b
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v

    if old_r < 0:
        old_r, old_u, old_v = -old_r, -old_u, -old_v
    return old_r, old_u, old_v


def is_prime(n: int) -> bool:
    """Deterministic primality for the sizes used here (sympy's BPSW + trial division)."""
    return n >= 2 and bool(isprime(n))


def factor_integer(n: int) -> list[tuple[int, int]]:
    """Factor n >= 1 into (prime, exponent) pairs with strictly increasing primes.

    The factorisation is certified: every reported prime is re-checked and the
    product is re-multiplied.
    """
    if n <= 0:
        raise PreconditionError(f"factor_integer needs n >= 1, got {n}")
    if n == 1:
        return []

    factors = sorted((int(p), int(e)) for p, e in factorint(n).items())
    if prod(p**e for p, e in factors) != n or not all(is_prime(p) for p, _ in factors):
        raise InvariantViolation(f"factorisation of {n} failed certification: {factors}")
    return factors


def integer_divisors(n: int) -> list[int]:
    """Positive divisors of n != 0, ascending."""
    if n == 0:
        raise PreconditionError("0 has infinitely many divisors")
    divisors = [1]
    for p, e in factor_integer(abs(n)):
        divisors = [d * p**k for d in divisors for k in range(e + 1)]
    return sorted(divisors)


def is_squarefree(n: int) -> bool:
    """True iff no prime square divides n (n != 0)."""
    if n == 0:
        return False
    return all(e == 1 for _, e in factor_integer(abs(n)))


def squarefree_part(n: int) -> int:
    """Signed squarefree kernel: n = squarefree_part(n) * k**2."""
    if n == 0:
        raise PreconditionError("0 has no squarefree part")
    core = prod(p for p, e in factor_integer(abs(n)) if e % 2 == 1)
    return core if n > 0 else -core


def ceil_fraction(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def floor_fraction(x: Fraction) -> int:
    return x.numerator // x.denominator


def common_denominator(values) -> int:
    """Least common multiple of the denominators of a collection of rationals."""
    return lcm(1, *(Fraction(value).denominator for value in values))


# ---------------------------------------------------------------------------
# Prime fields


@dataclass(frozen=True, slots=True)
class PrimeFieldElement:
    """A residue class modulo a prime p, stored as 0 <= residue < p."""

    residue: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 2:
            raise PreconditionError(f"modulus must be a prime, got {self.modulus}")
        if not 0 <= self.residue < self.modulus:
            object.__setattr__(self, "residue", self.residue % self.modulus)

    def _coerce(self, other) -> PrimeFieldElement:
        if isinstance(other, PrimeFieldElement):
            if other.modulus != self.modulus:
                raise PreconditionError(
                    f"mixed prime fields F{self.modulus} and F{other.modulus}"
                )
            return other
        if isinstance(other, int):
            return PrimeFieldElement(other, self.modulus)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return PrimeFieldElement((self.residue + other.residue) % self.modulus, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return PrimeFieldElement((self.residue - other.residue) % self.modulus, self.modulus)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return PrimeFieldElement((self.residue * other.residue) % self.modulus, self.modulus)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * mod_inverse(other)

    def __neg__(self):
        return PrimeFieldElement((-self.residue) % self.modulus, self.modulus)

    def __pow__(self, exponent: int):
        if exponent < 0:
            return mod_inverse(self) ** (-exponent)
        return PrimeFieldElement(pow(self.residue, exponent, self.modulus), self.modulus)

    def __bool__(self) -> bool:
        return self.residue != 0

    def __int__(self) -> int:
        return self.residue

    def __str__(self) -> str:
        return str(self.residue)


def mod_inverse(a: PrimeFieldElement) -> PrimeFieldElement:
    """Multiplicative inverse in F_p."""
    if a.residue == 0:
        raise PreconditionError(f"0 has no inverse modulo {a.modulus}")
    g, u, _ = gcd_ext(a.residue, a.modulus)
    if g != 1:
        raise PreconditionError(f"{a.residue} is not invertible modulo {a.modulus}")
    return PrimeFieldElement(u % a.modulus, a.modulus)


# ---------------------------------------------------------------------------
# Text round trip


def parse_integer(text: str) -> int:
    text = text.strip()
    if not _INTEGER_RE.match(text):
        raise ParseError(f"not an integer: {text!r}")
    return int(text)


def parse_rational(text: str | int) -> Fraction:
    """Parse "a" or "a/b" (b > 0) exactly."""
    if isinstance(text, int):
        return Fraction(text)
    match = _RATIONAL_RE.match(text.replace(" ", ""))
    if not match:
        raise ParseError(f"not a rational: {text!r}")
    numerator, denominator = match.groups()
    if denominator is not None and int(denominator) == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(int(numerator), int(denominator or 1))


def format_rational(value: Fraction | int) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
