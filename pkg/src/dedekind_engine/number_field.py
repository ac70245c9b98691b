"""Number fields K = QQ[x]/(f) with the power basis 1, a, ..., a^(n-1)."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from dataclasses import field as dataclass_field
from fractions import Fraction
from typing import Sequence

from dedekind_engine.errors import MathematicalError, PreconditionError, ReducibleError
from dedekind_engine.exact_arith import format_rational
from dedekind_engine.linalg import (
    characteristic_polynomial_coeffs,
    determinant,
    nullspace_vector,
)
from dedekind_engine.poly import (
    QQ,
    IrreducibilityCertificate,
    Polynomial,
    format_polynomial,
    is_irreducible_q,
    parse_polynomial,
    poly_divmod,
    poly_xgcd,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NumberField:
    """A field QQ(a) where a is a root of the monic irreducible `defining_poly`."""

    defining_poly: Polynomial
    certificate: IrreducibilityCertificate = dataclass_field(compare=False, repr=False)

    @property
    def degree(self) -> int:
        return self.defining_poly.degree

    def __str__(self) -> str:
        return f"QQ[x]/({format_polynomial(self.defining_poly)})"

    # -- elements -----------------------------------------------------------

    def element(self, coords: Sequence) -> NfElement:
        if len(coords) != self.degree:
            raise PreconditionError(
                f"element needs {self.degree} coordinates, got {len(coords)}"
            )
        return NfElement(tuple(Fraction(c) for c in coords), self)

    def scalar(self, value) -> NfElement:
        return self.element([value] + [0] * (self.degree - 1))

    def zero(self) -> NfElement:
        return self.scalar(0)

    def one(self) -> NfElement:
        return self.scalar(1)

    def gen(self) -> NfElement:
        if self.degree == 1:
            # QQ: the root of x is 0
            return self.scalar(-self.defining_poly[0])
        return self.element([0, 1] + [0] * (self.degree - 2))

    def from_polynomial(self, g: Polynomial) -> NfElement:
        """Image of g(a) in K."""
        remainder = poly_divmod(g.map_domain(QQ, "x"), self.defining_poly)[1]
        return self.element([remainder[i] for i in range(self.degree)])

    def parse_element(self, text: str) -> NfElement:
        return self.from_polynomial(parse_polynomial(text, QQ, "x"))

    # -- arithmetic ---------------------------------------------------------

    def mul(self, x: NfElement, y: NfElement) -> NfElement:
        return self.from_polynomial(x.as_polynomial() * y.as_polynomial())

    def inv(self, x: NfElement) -> NfElement:
        if x.is_zero:
            raise MathematicalError("inverse of zero in a number field")
        g, s, _ = poly_xgcd(x.as_polynomial(), self.defining_poly)
        if g.degree != 0:
            raise MathematicalError(f"{x} is a zero divisor: defining polynomial is reducible")
        return self.from_polynomial(s)

    def power(self, x: NfElement, exponent: int) -> NfElement:
        if exponent < 0:
            return self.power(self.inv(x), -exponent)
        result, base = self.one(), x
        while exponent:
            if exponent & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            exponent >>= 1
        return result

    def lmul_matrix(self, x: NfElement) -> list[list[Fraction]]:
        """Matrix of y -> x*y in the power basis; column j holds x * a^j."""
        n = self.degree
        columns = []
        current = x
        a = self.gen()
        for _ in range(n):
            columns.append(current.coords)
            current = self.mul(current, a)
        return [[columns[j][i] for j in range(n)] for i in range(n)]

    def trace(self, x: NfElement) -> Fraction:
        m = self.lmul_matrix(x)
        return sum((m[i][i] for i in range(self.degree)), Fraction(0))

    def norm(self, x: NfElement) -> Fraction:
        return determinant(self.lmul_matrix(x))

    def characteristic_polynomial(self, x: NfElement) -> Polynomial:
        """det(X*I - lmul(x))."""
        coeffs = characteristic_polynomial_coeffs(self.lmul_matrix(x))
        return Polynomial(tuple(coeffs), QQ, "X")

    def minpoly_of(self, x: NfElement) -> Polynomial:
        """Monic minimal polynomial: the first linear relation among 1, x, x^2, ..."""
        powers = [self.one().coords]
        current = self.one()
        for _ in range(self.degree):
            current = self.mul(current, x)
            powers.append(current.coords)
            relation = nullspace_vector(powers)
            if relation is not None:
                return Polynomial(tuple(relation), QQ, "X")
        raise MathematicalError(f"no linear relation among powers of {x}")

    def trace_form_matrix(self, basis: Sequence[NfElement]) -> list[list[Fraction]]:
        if len(basis) != self.degree:
            raise PreconditionError(f"trace form needs {self.degree} basis elements")
        return [[self.trace(self.mul(bi, bj)) for bj in basis] for bi in basis]

    def discriminant(self, basis: Sequence[NfElement] | None = None) -> Fraction:
        if basis is None:
            basis = self.power_basis()
        return determinant(self.trace_form_matrix(basis))

    def power_basis(self) -> list[NfElement]:
        return [self.power(self.gen(), i) for i in range(self.degree)]

    def is_integral(self, x: NfElement) -> bool:
        """True iff the minimal polynomial of x has integer coefficients."""
        return all(Fraction(c).denominator == 1 for c in self.minpoly_of(x).coeffs)

    def trace_form_is_integral(self, basis: Sequence[NfElement]) -> bool:
        return all(v.denominator == 1 for row in self.trace_form_matrix(basis) for v in row)


@dataclass(frozen=True)
class NfElement:
    """c0 + c1*a + ... + c(n-1)*a^(n-1) in the power basis of `field`."""

    coords: tuple[Fraction, ...]
    field: NumberField = dataclass_field(repr=False)

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    def as_polynomial(self) -> Polynomial:
        return Polynomial(self.coords, QQ, "x")

    def _lift(self, other) -> NfElement:
        if isinstance(other, NfElement):
            if other.field != self.field:
                raise PreconditionError("elements of different number fields")
            return other
        return self.field.scalar(other)

    def __add__(self, other) -> NfElement:
        other = self._lift(other)
        return NfElement(tuple(a + b for a, b in zip(self.coords, other.coords)), self.field)

    __radd__ = __add__

    def __neg__(self) -> NfElement:
        return NfElement(tuple(-a for a in self.coords), self.field)

    def __sub__(self, other) -> NfElement:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> NfElement:
        return self._lift(other) - self

    def __mul__(self, other) -> NfElement:
        if isinstance(other, (int, Fraction)):
            return NfElement(tuple(a * other for a in self.coords), self.field)
        return self.field.mul(self, self._lift(other))

    __rmul__ = __mul__

    def __truediv__(self, other) -> NfElement:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise MathematicalError("division by zero")
            return NfElement(tuple(a / other for a in self.coords), self.field)
        return self.field.mul(self, self.field.inv(self._lift(other)))

    def __pow__(self, exponent: int) -> NfElement:
        return self.field.power(self, exponent)

    def __str__(self) -> str:
        return format_polynomial(self.as_polynomial())

    def to_strings(self) -> list[str]:
        return [format_rational(c) for c in self.coords]


def nf_new(f: Polynomial | str) -> NumberField:
    """Validate a monic irreducible defining polynomial and build its field."""
    if isinstance(f, str):
        f = parse_polynomial(f, QQ, "x")
    f = f.map_domain(QQ, "x")
    if f.degree < 1:
        raise PreconditionError("defining polynomial must have degree >= 1")
    if not f.is_monic:
        raise PreconditionError(f"defining polynomial {f} is not monic")
    certificate = is_irreducible_q(f)
    if not certificate:
        raise ReducibleError(
            f"{f} is reducible over QQ ({certificate.method}: {certificate.detail})",
            witness=_witness_text(certificate),
        )
    logger.debug(f"field {f}: irreducible by {certificate.method} {certificate.detail}".strip())
    return NumberField(f, certificate)


def _witness_text(certificate: IrreducibilityCertificate) -> str:
    if certificate.method == "rational-root":
        root = Fraction(certificate.detail)
        return format_polynomial(Polynomial((-root.numerator, root.denominator), QQ, "x"))
    return certificate.detail


def rational_field() -> NumberField:
    """QQ itself, presented as the degree-one field QQ[x]/(x)."""
    return nf_new(Polynomial((0, 1), QQ, "x"))
