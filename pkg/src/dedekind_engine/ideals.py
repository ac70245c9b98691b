"""Integral ideals of an order as integer lattices in Hermite normal form.

Coordinates are always taken with respect to the order basis. The HNF is the
canonical form, so ideal equality is dataclass equality.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from dataclasses import field as dataclass_field
from math import gcd, prod
from typing import Iterable, Iterator, Sequence

from dedekind_engine.errors import (
    InvariantViolation,
    MathematicalError,
    PreconditionError,
    UnsupportedError,
)
from dedekind_engine.exact_arith import factor_integer
from dedekind_engine.hnf import hnf, hnf_columns, hnf_contains, hnf_sort_key
from dedekind_engine.number_field import NfElement
from dedekind_engine.order import OrderBasis, maximality_certificate, monogenic_generator
from dedekind_engine.poly import factor_mod_p, reduce_mod_p

logger = logging.getLogger(__name__)

Coords = tuple[int, ...]


@dataclass(frozen=True)
class IntegralIdeal:
    """A nonzero ideal is a full-rank sublattice; the zero ideal has an empty `hnf`."""

    order: OrderBasis
    hnf: tuple[tuple[int, ...], ...]

    @property
    def is_zero(self) -> bool:
        return not self.hnf

    @property
    def norm(self) -> int:
        return ideal_norm(self)

    def basis(self) -> list[Coords]:
        return [tuple(col) for col in hnf_columns(self.hnf)]

    def contains(self, x: Sequence[int] | NfElement) -> bool:
        coords = _coords(self.order, x)
        if self.is_zero:
            return not any(coords)
        return hnf_contains(self.hnf, coords)

    def sort_key(self) -> tuple:
        return hnf_sort_key(self.hnf)

    def generators_text(self) -> str:
        if self.is_zero:
            return "(0)"
        return "<" + ", ".join(self.order.format_coords(v) for v in self.basis()) + ">"

    def __str__(self) -> str:
        return self.generators_text()


def _coords(order: OrderBasis, x) -> Coords:
    if isinstance(x, NfElement):
        return order.integer_coords(x)
    coords = tuple(int(c) for c in x)
    if len(coords) != order.degree:
        raise PreconditionError(f"expected {order.degree} coordinates, got {len(coords)}")
    return coords


def _check_same_order(i: IntegralIdeal, j: IntegralIdeal) -> None:
    if i.order != j.order:
        raise PreconditionError("ideals belong to different orders")


def _from_columns(
    order: OrderBasis, columns: Iterable[Sequence[int]], modulus: int
) -> IntegralIdeal:
    matrix = hnf(list(columns), order.degree, modulus=abs(modulus))
    return IntegralIdeal(order, tuple(tuple(row) for row in matrix))


def zero_ideal(order: OrderBasis) -> IntegralIdeal:
    return IntegralIdeal(order, ())


def unit_ideal(order: OrderBasis) -> IntegralIdeal:
    n = order.degree
    return IntegralIdeal(order, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))


def ideal_from_generators(
    order: OrderBasis, gens: Iterable[Sequence[int] | NfElement]
) -> IntegralIdeal:
    """Smallest ideal containing `gens` (elements or integer coordinate vectors)."""
    coords = [c for c in (_coords(order, g) for g in gens) if any(c)]
    if not coords:
        return zero_ideal(order)
    modulus = 0
    for g in coords:
        modulus = gcd(modulus, order.norm(g))
    columns = [
        order.mul_coords(g, order.unit_vector(j)) for g in coords for j in range(order.degree)
    ]
    return _from_columns(order, columns, modulus)


def principal_ideal(order: OrderBasis, x: Sequence[int] | NfElement) -> IntegralIdeal:
    return ideal_from_generators(order, [x])


def ideal_norm(ideal: IntegralIdeal) -> int:
    """Index [O : I], the product of the HNF diagonal."""
    if ideal.is_zero:
        raise MathematicalError("the zero ideal has no norm")
    return prod(ideal.hnf[i][i] for i in range(len(ideal.hnf)))


def ideal_mul(i: IntegralIdeal, j: IntegralIdeal) -> IntegralIdeal:
    _check_same_order(i, j)
    if i.is_zero or j.is_zero:
        return zero_ideal(i.order)
    order = i.order
    columns = [order.mul_coords(a, b) for a in i.basis() for b in j.basis()]
    return _from_columns(order, columns, i.norm * j.norm)


def ideal_add(i: IntegralIdeal, j: IntegralIdeal) -> IntegralIdeal:
    _check_same_order(i, j)
    if i.is_zero:
        return j
    if j.is_zero:
        return i
    return _from_columns(i.order, i.basis() + j.basis(), gcd(i.norm, j.norm))


def ideal_scale(ideal: IntegralIdeal, m: int) -> IntegralIdeal:
    """m * I for an integer m."""
    if m == 0 or ideal.is_zero:
        return zero_ideal(ideal.order)
    return _from_columns(ideal.order, [[m * x for x in v] for v in ideal.basis()], m * ideal.norm)


def ideal_pow(ideal: IntegralIdeal, exponent: int) -> IntegralIdeal:
    if exponent < 0:
        raise PreconditionError("negative powers of integral ideals are fractional")
    result = unit_ideal(ideal.order)
    base = ideal
    while exponent:
        if exponent & 1:
            result = ideal_mul(result, base)
        base = ideal_mul(base, base)
        exponent >>= 1
    return result


def ideal_contains(big: IntegralIdeal, small: IntegralIdeal) -> bool:
    """small is a subset of big."""
    _check_same_order(big, small)
    if small.is_zero:
        return True
    if big.is_zero:
        return False
    return all(hnf_contains(big.hnf, v) for v in small.basis())


def ideal_dvd(i: IntegralIdeal, j: IntegralIdeal) -> bool:
    """I divides J, decided as J contained in I."""
    if i.is_zero:
        raise MathematicalError("divisibility by the zero ideal")
    if i.order.is_maximal is not True:
        logger.warning(f"divisibility in {i.order} is decided by containment only")
    return ideal_contains(i, j)


def ideal_quotient_integral(j: IntegralIdeal, i: IntegralIdeal) -> IntegralIdeal | None:
    """The integral H with I*H = J when I divides J in a maximal order, else None."""
    if not ideal_contains(i, j):
        return None
    factorization = factor_ideal(j)
    own = dict(factor_ideal(i).exponents())
    result = unit_ideal(j.order)
    for prime, e in factorization.exponents():
        remaining = e - own.pop(prime, 0)
        if remaining < 0:
            return None
        result = ideal_mul(result, ideal_pow(prime.ideal, remaining))
    if own:
        return None
    return result


# ---------------------------------------------------------------------------
# Prime ideals


@dataclass(frozen=True)
class PrimeIdealData:
    ideal: IntegralIdeal
    p: int
    residue_degree: int
    ramification: int
    generators: str = dataclass_field(default="", compare=False)

    @property
    def norm(self) -> int:
        return self.p**self.residue_degree

    def __str__(self) -> str:
        return self.generators or str(self.ideal)


def _evaluate_at(order: OrderBasis, coefficients: Sequence[int], theta: Coords) -> Coords:
    result = tuple(0 for _ in range(order.degree))
    for c in reversed(coefficients):
        result = order.mul_coords(result, theta)
        result = tuple(r + c * o for r, o in zip(result, order.one_coords))
    return result


def primes_above(order: OrderBasis, p: int) -> list[PrimeIdealData]:
    """Prime ideals over p by Kummer-Dedekind on a generator theta with p not dividing
    [O : ZZ[theta]]: if minpoly(theta) = prod g_i^e_i mod p then the primes are
    (p, g_i(theta)) with residue degree deg g_i and ramification e_i."""
    generator = monogenic_generator(order, p)
    factors = factor_mod_p(reduce_mod_p(generator.minpoly, p))
    p_coords = tuple(p * c for c in order.one_coords)
    primes = []
    for g, e in factors:
        coefficients = [c.residue for c in g.coeffs]
        value = _evaluate_at(order, coefficients, generator.theta)
        ideal = ideal_from_generators(order, [p_coords, value])
        if ideal.norm != p**g.degree:
            raise InvariantViolation(
                f"prime above {p} from {g} has norm {ideal.norm}, expected {p ** g.degree}"
            )
        text = f"({p}, {order.format_coords(value)})" if g.degree < order.degree else f"({p})"
        primes.append(PrimeIdealData(ideal, p, g.degree, e, text))
    if sum(P.residue_degree * P.ramification for P in primes) != order.degree:
        raise InvariantViolation(f"sum of e*f above {p} differs from the degree")
    primes.sort(key=lambda P: P.ideal.sort_key())
    logger.debug(f"{len(primes)} prime(s) above {p} in {order}")
    return primes


def is_maximal_ideal_check(prime: IntegralIdeal) -> bool:
    """O/P is a field: |O/P| is a prime power and P + (x) = (1) for every x not in P.

    Representatives of O/pO are all coordinate vectors in [0, p)^n.
    """
    norm = ideal_norm(prime)
    factors = factor_integer(norm)
    if len(factors) != 1:
        return False
    p = factors[0][0]
    order = prime.order
    one = unit_ideal(order)
    for x in itertools.product(range(p), repeat=order.degree):
        if prime.contains(x):
            continue
        if ideal_add(prime, principal_ideal(order, x)) != one:
            return False
    return True


# ---------------------------------------------------------------------------
# Factorisation


@dataclass(frozen=True)
class IdealFactorization:
    """Canonically sorted prime factors (p ascending, then HNF) with exponents."""

    ideal: IntegralIdeal
    factors: tuple[tuple[PrimeIdealData, int], ...]

    def __iter__(self) -> Iterator[tuple[PrimeIdealData, int]]:
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)

    def exponents(self) -> list[tuple[PrimeIdealData, int]]:
        return list(self.factors)

    def product(self) -> IntegralIdeal:
        result = unit_ideal(self.ideal.order)
        for prime, e in self.factors:
            result = ideal_mul(result, ideal_pow(prime.ideal, e))
        return result

    def __str__(self) -> str:
        if not self.factors:
            return "(1)"
        return " * ".join(
            str(prime) if e == 1 else f"{prime}^{e}" for prime, e in self.factors
        )


def _require_maximal(order: OrderBasis) -> None:
    if order.is_maximal is None:
        if not maximality_certificate(order):
            raise UnsupportedError(f"{order} is not maximal; ideal factorisation may not exist")
        return
    if not order.is_maximal:
        raise UnsupportedError(f"{order} is not maximal; ideal factorisation may not exist")


def factor_ideal(ideal: IntegralIdeal) -> IdealFactorization:
    """Unique factorisation into prime ideals; valuations by repeated divisibility."""
    if ideal.is_zero:
        raise MathematicalError("the zero ideal has no factorisation")
    order = ideal.order
    _require_maximal(order)
    factors = []
    for p, _ in factor_integer(ideal.norm):
        for prime in primes_above(order, p):
            exponent = 0
            power = prime.ideal
            while ideal_contains(power, ideal):
                exponent += 1
                power = ideal_mul(power, prime.ideal)
            if exponent:
                factors.append((prime, exponent))
    factors.sort(key=lambda item: (item[0].p, item[0].ideal.sort_key()))
    result = IdealFactorization(ideal, tuple(factors))
    if result.product() != ideal:
        raise InvariantViolation(f"factorisation of {ideal} does not multiply back")
    return result


def divisors_of(factorization: IdealFactorization) -> list[IntegralIdeal]:
    """All integral divisors of a factored ideal, ordered by (norm, HNF)."""
    order = factorization.ideal.order
    choices = [range(e + 1) for _, e in factorization.factors]
    divisors = []
    for exponents in itertools.product(*choices):
        divisor = unit_ideal(order)
        for (prime, _), k in zip(factorization.factors, exponents):
            if k:
                divisor = ideal_mul(divisor, ideal_pow(prime.ideal, k))
        divisors.append(divisor)
    divisors.sort(key=lambda d: (d.norm, d.sort_key()))
    return divisors


def ideals_of_norm_at_most(order: OrderBasis, bound: int) -> list[IntegralIdeal]:
    """Every nonzero ideal of norm <= bound in a maximal order, ordered by (norm, HNF)."""
    _require_maximal(order)
    result = [unit_ideal(order)]
    for m in range(2, bound + 1):
        seen = set()
        for divisor in _ideals_of_norm(order, m):
            if divisor not in seen:
                seen.add(divisor)
                result.append(divisor)
    result.sort(key=lambda d: (d.norm, d.sort_key()))
    return result


def _ideals_of_norm(order: OrderBasis, m: int) -> list[IntegralIdeal]:
    """Products of prime powers with total norm exactly m."""
    candidates = [unit_ideal(order)]
    for p, e in factor_integer(m):
        extended = []
        primes = primes_above(order, p)
        # exponent vectors k with sum k_i * f_i = e
        for ks in itertools.product(*(range(e // P.residue_degree + 1) for P in primes)):
            if sum(k * P.residue_degree for k, P in zip(ks, primes)) != e:
                continue
            part = unit_ideal(order)
            for k, P in zip(ks, primes):
                if k:
                    part = ideal_mul(part, ideal_pow(P.ideal, k))
            extended.extend(ideal_mul(c, part) for c in candidates)
        candidates = extended
    return candidates
