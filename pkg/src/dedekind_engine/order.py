"""Orders of number fields given by an integral basis.

An order is stored with its basis in power-basis coordinates, the inverse
change of basis, and integer structure constants so that ideal arithmetic can
work entirely on integer coordinate vectors.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, replace
from dataclasses import field as dataclass_field
from fractions import Fraction
from typing import Sequence

from dedekind_engine.errors import (
    MathematicalError,
    NotInOrderError,
    NotIntegralError,
    PreconditionError,
    UnsupportedError,
)
from dedekind_engine.exact_arith import factor_integer, is_squarefree
from dedekind_engine.linalg import determinant, inverse, mat_vec
from dedekind_engine.number_field import NfElement, NumberField, nf_new, rational_field
from dedekind_engine.poly import (
    ZZ,
    Polynomial,
    factor_mod_p,
    poly_gcd,
    reduce_mod_p,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OrderBasis:
    """A full-rank subring of O_K with basis b_0..b_(n-1).

    `basis_matrix[i][j]` is the i-th power-basis coordinate of b_j and
    `mult_table[i][j]` the integer coordinates of b_i * b_j.
    """

    field: NumberField
    basis: tuple[NfElement, ...]
    basis_matrix: tuple[tuple[Fraction, ...], ...] = dataclass_field(compare=False, repr=False)
    inverse_matrix: tuple[tuple[Fraction, ...], ...] = dataclass_field(compare=False, repr=False)
    mult_table: tuple[tuple[tuple[int, ...], ...], ...] = dataclass_field(
        compare=False, repr=False
    )
    one_coords: tuple[int, ...] = dataclass_field(compare=False, repr=False)
    is_maximal: bool | None = dataclass_field(default=None, compare=False)
    maximality_evidence: str = dataclass_field(default="", compare=False)
    name: str = dataclass_field(default="", compare=False)

    @property
    def degree(self) -> int:
        return self.field.degree

    def __str__(self) -> str:
        if self.name:
            return self.name
        return "Z<" + ", ".join(str(b) for b in self.basis) + ">"

    # -- coordinates ----------------------------------------------------------

    def coords(self, x: NfElement) -> tuple[Fraction, ...]:
        """Rational coordinates of x with respect to the order basis."""
        return tuple(mat_vec(self.inverse_matrix, x.coords))

    def integer_coords(self, x: NfElement) -> tuple[int, ...]:
        coords = self.coords(x)
        if any(c.denominator != 1 for c in coords):
            raise NotInOrderError(f"{x} is not in the order {self}")
        return tuple(c.numerator for c in coords)

    def contains(self, x: NfElement) -> bool:
        return all(c.denominator == 1 for c in self.coords(x))

    def element_of(self, coords: Sequence) -> NfElement:
        return self.field.element(mat_vec(self.basis_matrix, [Fraction(c) for c in coords]))

    def unit_vector(self, i: int) -> tuple[int, ...]:
        return tuple(int(i == k) for k in range(self.degree))

    # -- integer arithmetic ---------------------------------------------------

    def mul_coords(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        n = self.degree
        result = [0] * n
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if not bj:
                    continue
                row = self.mult_table[i][j]
                for k in range(n):
                    result[k] += ai * bj * row[k]
        return tuple(result)

    def lmul(self, a: Sequence[int]) -> list[list[int]]:
        """Integer matrix of y -> a*y in the order basis; column j = a * b_j."""
        columns = [self.mul_coords(a, self.unit_vector(j)) for j in range(self.degree)]
        return [[columns[j][i] for j in range(self.degree)] for i in range(self.degree)]

    def norm(self, a: Sequence[int]) -> int:
        return int(determinant(self.lmul(a)))

    def adjugate_multiplier(self, b: Sequence[int]) -> tuple[int, ...]:
        """Coordinates of c in O with c * b = N(b).

        c = adj(lmul(b)) applied to the coordinates of 1, which is integral.
        """
        m = self.lmul(b)
        d = determinant(m)
        if d == 0:
            raise MathematicalError("adjugate multiplier of zero")
        c = mat_vec(inverse(m), [Fraction(x) for x in self.one_coords])
        return tuple(int(d * x) for x in c)

    def pow_coords(self, a: Sequence[int], exponent: int) -> tuple[int, ...]:
        result, base = self.one_coords, tuple(a)
        while exponent:
            if exponent & 1:
                result = self.mul_coords(result, base)
            base = self.mul_coords(base, base)
            exponent >>= 1
        return result

    # -- invariants -------------------------------------------------------------

    def discriminant(self) -> int:
        return int(self.field.discriminant(self.basis))

    def index(self) -> Fraction:
        """[O : ZZ[a]] as the rational 1/|det(basis_matrix)|."""
        return 1 / abs(determinant(self.basis_matrix))

    def format_coords(self, coords: Sequence[int]) -> str:
        return str(self.element_of(coords))


def _build(
    field: NumberField, basis: Sequence[NfElement], name: str = "", **flags
) -> OrderBasis:
    n = field.degree
    if len(basis) != n:
        raise PreconditionError(f"an order basis needs {n} elements, got {len(basis)}")
    matrix = [[basis[j].coords[i] for j in range(n)] for i in range(n)]
    if determinant(matrix) == 0:
        raise MathematicalError("basis elements are linearly dependent")
    inv = inverse(matrix)

    for j, b in enumerate(basis):
        if not field.is_integral(b):
            raise NotIntegralError(f"basis element {j} ({b}) is not integral")

    one = mat_vec(inv, field.one().coords)
    if any(c.denominator != 1 for c in one):
        raise MathematicalError("1 is not in the span of the basis")

    table = []
    for i in range(n):
        row = []
        for j in range(n):
            product = mat_vec(inv, field.mul(basis[i], basis[j]).coords)
            if any(c.denominator != 1 for c in product):
                raise MathematicalError(
                    f"basis not closed under multiplication: b{i} * b{j} = "
                    f"{field.mul(basis[i], basis[j])} is outside the lattice"
                )
            row.append(tuple(c.numerator for c in product))
        table.append(tuple(row))

    return OrderBasis(
        field=field,
        basis=tuple(basis),
        basis_matrix=tuple(tuple(row) for row in matrix),
        inverse_matrix=tuple(tuple(row) for row in inv),
        mult_table=tuple(table),
        one_coords=tuple(c.numerator for c in one),
        name=name,
        **flags,
    )


def order_from_basis(field: NumberField, basis: Sequence[NfElement], name: str = "") -> OrderBasis:
    """Validate a user basis: independent, integral, contains 1, closed under products."""
    order = _build(field, basis, name)
    logger.debug(f"validated order {order} with discriminant {order.discriminant()}")
    return order


def equation_order(field: NumberField) -> OrderBasis:
    """ZZ[a] for the field generator a; needs an integral defining polynomial."""
    if any(c.denominator != 1 for c in field.defining_poly.coeffs):
        raise NotIntegralError(f"the generator of {field} is not integral")
    name = "Z" if field.degree == 1 else f"Z[x]/({field.defining_poly})"
    return _build(field, field.power_basis(), name)


def quadratic_maximal_order(d: int) -> OrderBasis:
    """The ring of integers of QQ(sqrt(d)) for squarefree d not in {0, 1}."""
    if d in (0, 1):
        raise MathematicalError(f"QQ(sqrt({d})) is not a quadratic field")
    if not is_squarefree(d):
        raise MathematicalError(f"{d} is not squarefree")
    field = nf_new(Polynomial((-d, 0, 1), ZZ, "x"))
    root = field.gen()
    if d % 4 == 1:
        basis = [field.one(), (1 + root) / 2]
        name = f"Z[(1+sqrt({d}))/2]"
    else:
        basis = [field.one(), root]
        name = "Z[i]" if d == -1 else f"Z[sqrt({d})]"
    return _build(
        field,
        basis,
        name,
        is_maximal=True,
        maximality_evidence="quadratic closed form",
    )


def rational_integers() -> OrderBasis:
    """ZZ as the maximal order of QQ."""
    field = rational_field()
    return _build(
        field,
        [field.one()],
        "Z",
        is_maximal=True,
        maximality_evidence="ZZ is a PID",
    )


def quadratic_radicand(order: OrderBasis) -> int | None:
    """d when the field is QQ[x]/(x^2 - d), otherwise None."""
    f = order.field.defining_poly
    if f.degree == 2 and f[1] == 0 and f[0].denominator == 1:
        return -f[0].numerator
    return None


def is_imaginary_quadratic(order: OrderBasis) -> bool:
    d = quadratic_radicand(order)
    if d is not None:
        return d < 0
    f = order.field.defining_poly
    return f.degree == 2 and f[1] * f[1] - 4 * f[0] < 0


# ---------------------------------------------------------------------------
# Maximality


@dataclass(frozen=True)
class MonogenicGenerator:
    """theta in O with p not dividing [O : ZZ[theta]]."""

    theta: tuple[int, ...]
    minpoly: Polynomial
    index: int


@dataclass(frozen=True)
class PrimeMaximality:
    p: int
    maximal: bool
    generator: str


@dataclass(frozen=True)
class MaximalityCertificate:
    maximal: bool
    discriminant: int
    checks: tuple[PrimeMaximality, ...] = ()

    def __bool__(self) -> bool:
        return self.maximal


def _candidate_generators(order: OrderBasis):
    n = order.degree
    for j in range(1, n):
        yield order.unit_vector(j)
    for combo in itertools.product((0, 1, -1, 2), repeat=n - 1):
        if sum(1 for c in combo if c) > 1:
            yield (0,) + combo


def monogenic_generator(order: OrderBasis, p: int) -> MonogenicGenerator:
    """Find theta in O with ZZ[theta] of finite index prime to p."""
    n = order.degree
    if n == 1:
        return MonogenicGenerator(order.one_coords, Polynomial((-1, 1), ZZ, "x"), 1)
    for theta in _candidate_generators(order):
        powers = [order.pow_coords(theta, k) for k in range(n)]
        index = abs(int(determinant([[powers[j][i] for j in range(n)] for i in range(n)])))
        if index == 0 or index % p == 0:
            continue
        minpoly = order.field.minpoly_of(order.element_of(theta)).map_domain(ZZ, "x")
        return MonogenicGenerator(theta, minpoly, index)
    raise UnsupportedError(f"no generator of {order} with index prime to {p} was found")


def dedekind_criterion(f: Polynomial, p: int) -> bool:
    """ZZ[x]/(f) is p-maximal iff gcd(F, g, h) = 1 mod p.

    With f = prod g_i^e_i mod p: g = prod g_i, h = prod g_i^(e_i - 1) (monic lifts)
    and F = (g*h - f) / p.
    """
    factors = factor_mod_p(reduce_mod_p(f, p))
    g = Polynomial((1,), ZZ, f.var)
    h = Polynomial((1,), ZZ, f.var)
    for factor, e in factors:
        lifted = Polynomial(tuple(c.residue for c in factor.coeffs), ZZ, f.var)
        g = g * lifted
        h = h * lifted ** (e - 1)
    difference = g * h - f
    big_f = Polynomial(tuple(c // p for c in difference.coeffs), ZZ, f.var)
    if big_f.is_zero:
        common = reduce_mod_p(g, p)
    else:
        common = poly_gcd(reduce_mod_p(big_f, p), reduce_mod_p(g, p))
    if common.degree > 0 and not reduce_mod_p(h, p).is_zero:
        common = poly_gcd(common, reduce_mod_p(h, p))
    return common.degree == 0


def maximality_certificate(order: OrderBasis) -> MaximalityCertificate:
    """Check p-maximality at every p with p^2 | disc(O) by Dedekind's criterion."""
    disc = order.discriminant()
    checks = []
    for p, e in factor_integer(abs(disc)):
        if e < 2:
            continue
        generator = monogenic_generator(order, p)
        passed = dedekind_criterion(generator.minpoly, p)
        logger.debug(f"{order}: p = {p} maximal={passed} via {generator.minpoly}")
        checks.append(
            PrimeMaximality(p, passed, order.format_coords(generator.theta))
        )
    return MaximalityCertificate(all(c.maximal for c in checks), disc, tuple(checks))


def certify_maximal(order: OrderBasis) -> OrderBasis:
    """Return the order with `is_maximal` set from `maximality_certificate`."""
    if order.is_maximal is not None:
        return order
    certificate = maximality_certificate(order)
    evidence = "; ".join(
        f"p={c.p}: {'maximal' if c.maximal else 'not maximal'} via {c.generator}"
        for c in certificate.checks
    ) or "no prime square divides the discriminant"
    return replace(order, is_maximal=certificate.maximal, maximality_evidence=evidence)
