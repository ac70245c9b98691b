"""Ideal class groups.

Every class contains a divisor of <L>, where L is the lcm of the pigeonhole set
from `admissible.finset_approx`. So the classes of the prime ideals above the
primes dividing L generate the class group, and the group is the closure of
the identity class under multiplication by them. Classes are told apart by
principality of I * J^-1, which is decided exactly whenever the norm form is
definite (imaginary quadratic fields, QQ, imaginary quadratic function fields).
"""

from __future__ import annotations

import itertools
import logging
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from math import isqrt, prod
from typing import Any, Protocol, Sequence

from dedekind_engine.admissible import AbsoluteValueZ, FinsetApprox, finset_approx
from dedekind_engine.config import get_settings
from dedekind_engine.errors import InvariantViolation, MathematicalError, UnsupportedError
from dedekind_engine.exact_arith import factor_integer, is_prime
from dedekind_engine.fractional_ideals import (
    frac_from_integral,
    frac_inv,
    frac_mul,
    frac_normalize,
    frac_scale,
)
from dedekind_engine.ideals import (
    IntegralIdeal,
    divisors_of,
    factor_ideal,
    ideal_mul,
    ideal_norm,
    primes_above,
    principal_ideal,
    unit_ideal,
)
from dedekind_engine.order import OrderBasis, is_imaginary_quadratic, maximality_certificate

logger = logging.getLogger(__name__)


class PrincipalityStatus(str, Enum):
    PRINCIPAL = "principal"
    NOT_PRINCIPAL = "not-principal"
    NOT_FOUND = "not-found-within-bound"


@dataclass(frozen=True)
class PrincipalityResult:
    status: PrincipalityStatus
    witness: Any = None
    witness_text: str | None = None

    def __bool__(self) -> bool:
        return self.status is PrincipalityStatus.PRINCIPAL

    @property
    def conclusive(self) -> bool:
        return self.status is not PrincipalityStatus.NOT_FOUND


# ---------------------------------------------------------------------------
# Lattice point search in number-field ideals


def is_definite(order: OrderBasis) -> bool:
    return order.degree == 1 or is_imaginary_quadratic(order)


def _binary_form(ideal: IntegralIdeal) -> tuple[int, int, int, list]:
    """N(s*v1 + t*v2) = A s^2 + B s t + C t^2 on the HNF basis v1, v2."""
    order = ideal.order
    v1, v2 = ideal.basis()
    a = order.norm(v1)
    c = order.norm(v2)
    b = order.norm(tuple(x + y for x, y in zip(v1, v2))) - a - c
    return a, b, c, [v1, v2]


def _points_up_to(a: int, b: int, c: int, bound: int):
    """Nonzero (s, t) with A s^2 + B s t + C t^2 <= bound for a definite form."""
    disc = 4 * a * c - b * b
    t_max = isqrt(4 * a * bound // disc)
    for t in range(-t_max, t_max + 1):
        radicand = (b * t) ** 2 - 4 * a * (c * t * t - bound)
        if radicand < 0:
            continue
        root = isqrt(radicand) + 1
        low = (-b * t - root) // (2 * a)
        high = (-b * t + root) // (2 * a) + 1
        for s in range(low, high + 1):
            if (s or t) and a * s * s + b * s * t + c * t * t <= bound:
                yield s, t


def _points_with_value(a: int, b: int, c: int, value: int):
    disc = 4 * a * c - b * b
    t_max = isqrt(4 * a * value // disc)
    for t in range(-t_max, t_max + 1):
        radicand = (b * t) ** 2 - 4 * a * (c * t * t - value)
        if radicand < 0:
            continue
        root = isqrt(radicand)
        if root * root != radicand:
            continue
        for numerator in sorted({-b * t + root, -b * t - root}, reverse=True):
            if numerator % (2 * a) == 0:
                yield numerator // (2 * a), t


def _combine(coefficients: Sequence[int], basis: Sequence[Sequence[int]]) -> tuple[int, ...]:
    return tuple(sum(k * v[i] for k, v in zip(coefficients, basis)) for i in range(len(basis[0])))


def _box(n: int, radius: int):
    """Integer vectors ordered by sup-norm, then lexicographically."""
    yield (0,) * n
    for r in range(1, radius + 1):
        for v in itertools.product(range(-r, r + 1), repeat=n):
            if max(abs(x) for x in v) == r:
                yield v


def minimal_element(ideal: IntegralIdeal, search_bound: int | None = None) -> tuple[int, ...]:
    """A nonzero element of smallest |norm| (exact in the definite case)."""
    order = ideal.order
    if ideal.is_zero:
        raise MathematicalError("the zero ideal has no nonzero element")
    if order.degree == 1:
        return (ideal.hnf[0][0],)
    if is_imaginary_quadratic(order):
        a, b, c, basis = _binary_form(ideal)
        bound = min(a, c)
        best = min(
            _points_up_to(a, b, c, bound),
            key=lambda st: (a * st[0] ** 2 + b * st[0] * st[1] + c * st[1] ** 2, st[1], st[0]),
        )
        return _combine(best, basis)
    radius = search_bound or get_settings().search_bound
    basis = ideal.basis()
    best, best_norm = None, None
    for v in _box(order.degree, min(radius, 6)):
        if not any(v):
            continue
        x = _combine(v, basis)
        value = abs(order.norm(x))
        if best_norm is None or value < best_norm:
            best, best_norm = x, value
    return best


def is_principal(ideal: IntegralIdeal, search_bound: int | None = None) -> PrincipalityResult:
    """Is there x in I with |N(x)| = N(I)? Exact when the norm form is definite."""
    if ideal.is_zero:
        raise MathematicalError("principality of the zero ideal")
    order = ideal.order
    target = ideal_norm(ideal)
    if order.degree == 1:
        x = (ideal.hnf[0][0],)
        return PrincipalityResult(PrincipalityStatus.PRINCIPAL, x, order.format_coords(x))
    if is_imaginary_quadratic(order):
        a, b, c, basis = _binary_form(ideal)
        for point in _points_with_value(a, b, c, target):
            x = _combine(point, basis)
            return PrincipalityResult(PrincipalityStatus.PRINCIPAL, x, order.format_coords(x))
        return PrincipalityResult(PrincipalityStatus.NOT_PRINCIPAL)
    radius = search_bound or get_settings().search_bound
    basis = ideal.basis()
    for v in _box(order.degree, radius):
        if not any(v):
            continue
        x = _combine(v, basis)
        if abs(order.norm(x)) == target:
            return PrincipalityResult(PrincipalityStatus.PRINCIPAL, x, order.format_coords(x))
    logger.warning(f"no generator of {ideal} found with coordinates up to {radius}")
    return PrincipalityResult(PrincipalityStatus.NOT_FOUND)


def reduce_ideal(ideal: IntegralIdeal, search_bound: int | None = None) -> IntegralIdeal:
    """An ideal of the same class and no larger norm: (y / e) * I for y of least
    norm in the numerator of I^-1 = (1/e) * N."""
    if ideal.is_zero:
        raise MathematicalError("cannot reduce the zero ideal")
    order = ideal.order
    if order.degree == 1:
        return unit_ideal(order)
    inverse = frac_inv(frac_from_integral(ideal))
    y = minimal_element(inverse.num, search_bound)
    reduced = frac_normalize(ideal_mul(principal_ideal(order, y), ideal), inverse.den)
    if reduced.den != 1:
        raise InvariantViolation(f"reduction of {ideal} left the order")
    if reduced.num.norm < ideal.norm or (
        reduced.num.norm == ideal.norm and reduced.num.sort_key() < ideal.sort_key()
    ):
        return reduced.num
    return ideal


def quotient_numerator(i: IntegralIdeal, j: IntegralIdeal) -> IntegralIdeal:
    """Integral numerator of I * J^-1; principal iff I and J share a class."""
    return frac_mul(frac_from_integral(i), frac_inv(frac_from_integral(j))).num


def same_class(i: IntegralIdeal, j: IntegralIdeal, search_bound: int | None = None) -> bool:
    return bool(is_principal(quotient_numerator(i, j), search_bound))


def divisor_witness(ideal: IntegralIdeal, multiplier: int) -> IntegralIdeal:
    """J = (L / b) * I, for b of least norm in I: an ideal of the class of I with L in J.

    `multiplier` must be the lcm (or the product) of the approximation set.
    """
    order = ideal.order
    b = minimal_element(ideal)
    inverse_b = frac_inv(frac_from_integral(principal_ideal(order, b)))
    scaled = frac_scale(frac_mul(frac_from_integral(ideal), inverse_b), multiplier)
    if scaled.den != 1:
        raise InvariantViolation(f"(L/b) * I is not integral for I = {ideal}")
    if not scaled.num.contains(tuple(multiplier * x for x in order.one_coords)):
        raise InvariantViolation(f"L is not in the divisor witness of {ideal}")
    return scaled.num


# ---------------------------------------------------------------------------
# Generic closure pipeline


class ClassGroupBackend(Protocol):
    """What the closure needs from a Dedekind domain with decidable principality."""

    def identity(self) -> Any: ...

    def multiply(self, a, b) -> Any: ...

    def same_class(self, a, b) -> bool: ...

    def key(self, a) -> tuple: ...

    def generators(self) -> list[tuple[str, Any]]: ...

    def describe(self, a) -> str: ...


@dataclass(frozen=True)
class IdealClass:
    representative: Any
    order: int
    label: str


@dataclass(frozen=True)
class ClassGroupTable:
    """Classes (identity first), the Cayley table and the abelian invariants."""

    classes: tuple[IdealClass, ...]
    table: tuple[tuple[int, ...], ...]
    invariant_factors: tuple[int, ...]
    generators: tuple[tuple[str, int], ...]
    approx: FinsetApprox | None = None
    mode: str = "exact"

    @property
    def class_number(self) -> int:
        return len(self.classes)

    def multiply(self, i: int, j: int) -> int:
        return self.table[i][j]

    def inverse(self, i: int) -> int:
        return next(j for j in range(self.class_number) if self.table[i][j] == 0)


@dataclass(frozen=True)
class BoundOnlyResult:
    """Indefinite case: a certified finite family of class representatives."""

    approx: FinsetApprox
    divisor_count: int
    class_number_upper_bound: int
    divisors: tuple[IntegralIdeal, ...]
    reason: str
    mode: str = "bound-only"


def _element_power(table: Sequence[Sequence[int]], x: int, k: int) -> int:
    result = 0
    for _ in range(k):
        result = table[result][x]
    return result


def invariant_factors(table: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Invariant factors d_1 | d_2 | ... of a finite abelian group (identity = 0).

    Per prime p, |G[p^j]| = p^(sum_k min(j, e_k)) determines the cyclic p-parts.
    """
    h = len(table)
    if h == 1:
        return ()
    parts: dict[int, list[int]] = {}
    for p, e in factor_integer(h):
        counts = [0]
        for j in range(1, e + 1):
            killed = sum(1 for x in range(h) if _element_power(table, x, p**j) == 0)
            exponent = 0
            while p**exponent < killed:
                exponent += 1
            counts.append(exponent)
        at_least = [counts[j] - counts[j - 1] for j in range(1, e + 1)] + [0]
        orders = []
        for j in range(e, 0, -1):
            orders.extend([p**j] * (at_least[j - 1] - at_least[j]))
        parts[p] = orders
    width = max(len(orders) for orders in parts.values())
    factors = [
        prod(orders[i] if i < len(orders) else 1 for orders in parts.values())
        for i in range(width)
    ]
    return tuple(sorted(factors))


def close_classes(
    backend: ClassGroupBackend, threads: int | None = None, approx: FinsetApprox | None = None
) -> ClassGroupTable:
    """Breadth-first closure of the identity class under the generator classes."""
    threads = threads or get_settings().threads
    gens = backend.generators()
    representatives = [backend.identity()]
    members: list[list[Any]] = [[backend.identity()]]
    edges: list[list[int | None]] = []
    parents: list[tuple[int, int] | None] = [None]

    def find(candidate) -> int | None:
        for index, rep in enumerate(representatives):
            if backend.same_class(candidate, rep):
                return index
        return None

    queue = deque([0])
    with ThreadPoolExecutor(max_workers=threads) as pool:
        while queue:
            current = queue.popleft()
            while len(edges) <= current:
                edges.append([None] * len(gens))
            products = list(
                pool.map(lambda g: backend.multiply(representatives[current], g[1]), gens)
            )
            for g_index, product in enumerate(products):
                index = find(product)
                if index is None:
                    index = len(representatives)
                    representatives.append(product)
                    members.append([])
                    parents.append((current, g_index))
                    queue.append(index)
                    logger.debug(f"new class {index}: {backend.describe(product)}")
                members[index].append(product)
                edges[current][g_index] = index

    gen_classes = []
    for label, g in gens:
        index = find(g)
        if index is None:
            raise InvariantViolation(f"generator {label} escaped the closure")
        members[index].append(g)
        gen_classes.append((label, index))

    h = len(representatives)

    def path(index: int) -> list[int]:
        steps = []
        while parents[index] is not None:
            index, g_index = parents[index]
            steps.append(g_index)
        return steps

    def multiply(i: int, j: int) -> int:
        result = i
        for g_index in path(j):
            result = edges[result][g_index]
        return result

    raw_table = [[multiply(i, j) for j in range(h)] for i in range(h)]
    canonical = [min(group, key=backend.key) for group in members]
    order = sorted(range(h), key=lambda i: (i != 0, backend.key(canonical[i])))
    position = {old: new for new, old in enumerate(order)}
    table = tuple(
        tuple(position[raw_table[old_i][old_j]] for old_j in order) for old_i in order
    )
    for i in range(h):
        if table[0][i] != i or not any(table[i][j] == 0 for j in range(h)):
            raise InvariantViolation("class table is not a group table")

    classes = []
    for new, old in enumerate(order):
        element_order = next(k for k in range(1, h + 1) if _element_power(table, new, k) == 0)
        classes.append(IdealClass(canonical[old], element_order, backend.describe(canonical[old])))
    return ClassGroupTable(
        classes=tuple(classes),
        table=table,
        invariant_factors=invariant_factors(table),
        generators=tuple((label, position[index]) for label, index in gen_classes),
        approx=approx,
    )


# ---------------------------------------------------------------------------
# Number fields


@dataclass
class NumberFieldBackend:
    order: OrderBasis
    approx: FinsetApprox
    search_bound: int | None = None

    def identity(self) -> IntegralIdeal:
        return unit_ideal(self.order)

    def multiply(self, a: IntegralIdeal, b: IntegralIdeal) -> IntegralIdeal:
        return reduce_ideal(ideal_mul(a, b), self.search_bound)

    def same_class(self, a: IntegralIdeal, b: IntegralIdeal) -> bool:
        return same_class(a, b, self.search_bound)

    def key(self, a: IntegralIdeal) -> tuple:
        return (a.norm, a.sort_key())

    def generators(self) -> list[tuple[str, IntegralIdeal]]:
        gens = []
        for p, _ in factor_integer(self.approx.lcm):
            for prime in primes_above(self.order, p):
                gens.append((str(prime), prime.ideal))
        return gens

    def describe(self, a: IntegralIdeal) -> str:
        return str(a)


def _require_maximal(order: OrderBasis) -> None:
    maximal = order.is_maximal
    if maximal is None:
        maximal = bool(maximality_certificate(order))
    if not maximal:
        raise UnsupportedError(f"class groups need the maximal order; {order} is not maximal")


def class_group_compute(
    order: OrderBasis, threads: int | None = None, search_bound: int | None = None
) -> ClassGroupTable | BoundOnlyResult:
    """Exact class group in the definite case, a bound-only result otherwise."""
    _require_maximal(order)
    approx = finset_approx(order, AbsoluteValueZ())
    if is_definite(order):
        backend = NumberFieldBackend(order, approx, search_bound)
        result = close_classes(backend, threads, approx)
        logger.debug(f"class group of {order}: h = {result.class_number}")
        return result
    return _bound_only(order, approx, search_bound)


def _bound_only(
    order: OrderBasis, approx: FinsetApprox, search_bound: int | None, max_divisors: int = 256
) -> BoundOnlyResult:
    """Divisors of <L> represent every class; merge those proven equivalent."""
    lcm_ideal = principal_ideal(order, tuple(approx.lcm * x for x in order.one_coords))
    factorization = factor_ideal(lcm_ideal)
    count = prod(e + 1 for _, e in factorization)
    if count > max_divisors:
        return BoundOnlyResult(
            approx, count, count, (), "norm form is indefinite; divisor family not enumerated"
        )
    divisors = divisors_of(factorization)
    groups: list[IntegralIdeal] = []
    for divisor in divisors:
        if not any(same_class(divisor, rep, search_bound) for rep in groups):
            groups.append(divisor)
    return BoundOnlyResult(
        approx,
        count,
        len(groups),
        tuple(groups),
        "norm form is indefinite; principality is only semi-decidable by bounded search",
    )


def class_number(
    order: OrderBasis, threads: int | None = None, search_bound: int | None = None
) -> int:
    result = class_group_compute(order, threads, search_bound)
    if isinstance(result, BoundOnlyResult):
        raise UnsupportedError(
            f"exact class number of {order} needs units of a real field; "
            f"upper bound {result.class_number_upper_bound}"
        )
    return result.class_number


@dataclass(frozen=True)
class PidEquivalence:
    """h = 1 on one side, every checked prime principal on the other."""

    class_number: int
    all_primes_principal: bool
    primes_checked: int
    nonprincipal_witness: str | None

    @property
    def class_number_is_one(self) -> bool:
        return self.class_number == 1

    @property
    def consistent(self) -> bool:
        return self.class_number_is_one == self.all_primes_principal


def class_number_is_one_iff_pid_check(
    order: OrderBasis, prime_cap: int | None = None, threads: int | None = None
) -> PidEquivalence:
    """Compare h = 1 with principality of the primes above p | L and p <= prime_cap."""
    prime_cap = prime_cap or get_settings().prime_cap
    table = class_group_compute(order, threads)
    if isinstance(table, BoundOnlyResult):
        raise UnsupportedError("the PID check needs an exact class group")
    primes = {p for p, _ in factor_integer(table.approx.lcm)} if table.approx.lcm > 1 else set()
    primes |= {p for p in range(2, prime_cap + 1) if is_prime(p)}
    witness = None
    checked = 0
    for p in sorted(primes):
        for prime in primes_above(order, p):
            checked += 1
            if witness is None and not is_principal(prime.ideal):
                witness = str(prime)
    return PidEquivalence(table.class_number, witness is None, checked, witness)
