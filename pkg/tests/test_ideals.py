"""Tests for integral ideals, prime decomposition and factorisation."""

import itertools
from collections import Counter

import pytest
from sympy import primerange

from dedekind_engine.errors import MathematicalError, UnsupportedError
from dedekind_engine.ideals import (
    divisors_of,
    factor_ideal,
    ideal_add,
    ideal_contains,
    ideal_dvd,
    ideal_from_generators,
    ideal_mul,
    ideal_pow,
    ideal_quotient_integral,
    ideal_scale,
    ideals_of_norm_at_most,
    is_maximal_ideal_check,
    primes_above,
    principal_ideal,
    unit_ideal,
    zero_ideal,
)
from dedekind_engine.number_field import nf_new
from dedekind_engine.order import (
    certify_maximal,
    equation_order,
    quadratic_maximal_order,
    rational_integers,
)


@pytest.fixture
def zi():
    return quadratic_maximal_order(-1)


@pytest.fixture
def z5():
    return quadratic_maximal_order(-5)


class TestConstruction:
    def test_principal_ideal_norm(self, z5):
        assert principal_ideal(z5, (1, 1)).norm == 6
        assert principal_ideal(z5, (6, 0)).norm == 36

    def test_hnf_of_two_generator_ideal(self, z5):
        p2 = ideal_from_generators(z5, [(2, 0), (1, 1)])
        assert p2.hnf == ((2, 1), (0, 1))
        assert p2.norm == 2

    def test_generators_as_field_elements(self, zi):
        field = zi.field
        ideal = ideal_from_generators(zi, [field.parse_element("1 + x")])
        assert ideal == ideal_from_generators(zi, [(1, 1)])
        assert ideal.contains(field.scalar(2))

    def test_zero_ideal(self, zi):
        zero = ideal_from_generators(zi, [(0, 0)])
        assert zero == zero_ideal(zi)
        assert zero.is_zero
        assert str(zero) == "(0)"
        with pytest.raises(MathematicalError):
            zero.norm

    def test_unit_ideal(self, zi):
        assert ideal_from_generators(zi, [(2, 0), (3, 0)]) == unit_ideal(zi)


class TestArithmetic:
    def test_norm_is_multiplicative(self, z5):
        a = ideal_from_generators(z5, [(2, 0), (1, 1)])
        b = ideal_from_generators(z5, [(3, 0), (1, 1)])
        assert ideal_mul(a, b).norm == a.norm * b.norm

    def test_non_principal_square_is_principal(self, z5):
        p2 = ideal_from_generators(z5, [(2, 0), (1, 1)])
        assert ideal_pow(p2, 2) == principal_ideal(z5, (2, 0))

    def test_add_is_gcd(self, zi):
        a = principal_ideal(zi, (2, 0))
        b = principal_ideal(zi, (1, 1))
        assert ideal_add(a, b) == b
        assert ideal_add(a, zero_ideal(zi)) == a

    def test_scale(self, zi):
        p = principal_ideal(zi, (1, 1))
        assert ideal_scale(p, 3) == principal_ideal(zi, (3, 3))
        assert ideal_scale(p, 0).is_zero

    def test_containment_and_divisibility(self, z5):
        big = ideal_from_generators(z5, [(2, 0), (1, 1)])
        small = principal_ideal(z5, (6, 0))
        assert ideal_contains(big, small)
        assert not ideal_contains(small, big)
        assert ideal_dvd(big, small)

    def test_quotient(self, z5):
        p2 = ideal_from_generators(z5, [(2, 0), (1, 1)])
        six = principal_ideal(z5, (6, 0))
        quotient = ideal_quotient_integral(six, p2)
        assert quotient is not None
        assert ideal_mul(p2, quotient) == six
        assert ideal_quotient_integral(p2, six) is None


class TestPrimes:
    def test_split_ramified_inert_in_gaussian_integers(self, zi):
        assert [(P.residue_degree, P.ramification) for P in primes_above(zi, 2)] == [(1, 2)]
        assert [(P.residue_degree, P.ramification) for P in primes_above(zi, 5)] == [
            (1, 1),
            (1, 1),
        ]
        inert = primes_above(zi, 3)
        assert [(P.residue_degree, P.ramification) for P in inert] == [(2, 1)]
        assert str(inert[0]) == "(3)"
        assert inert[0].norm == 9

    def test_primes_of_rational_integers(self):
        primes = primes_above(rational_integers(), 7)
        assert len(primes) == 1
        assert primes[0].ideal.hnf == ((7,),)

    def test_primes_in_non_monogenic_basis(self):
        order = quadratic_maximal_order(-23)
        primes = primes_above(order, 2)
        assert len(primes) == 2
        assert all(P.norm == 2 for P in primes)

    def test_maximal_ideal_check(self, zi):
        for P in primes_above(zi, 5):
            assert is_maximal_ideal_check(P.ideal)
        assert not is_maximal_ideal_check(principal_ideal(zi, (5, 0)))
        assert not is_maximal_ideal_check(principal_ideal(zi, (6, 0)))


class TestFactorization:
    def test_six_in_z_sqrt_minus_five(self, z5):
        factorization = factor_ideal(principal_ideal(z5, (6, 0)))
        assert str(factorization) == "(2, x + 1)^2 * (3, x + 1) * (3, x + 2)"
        assert factorization.product() == principal_ideal(z5, (6, 0))
        assert [e for _, e in factorization] == [2, 1, 1]

    def test_five_in_gaussian_integers(self, zi):
        factorization = factor_ideal(principal_ideal(zi, (5, 0)))
        assert len(factorization) == 2
        assert all(e == 1 and P.p == 5 for P, e in factorization)

    def test_unit_ideal_has_empty_factorisation(self, zi):
        assert str(factor_ideal(unit_ideal(zi))) == "(1)"

    def test_zero_ideal_rejected(self, zi):
        with pytest.raises(MathematicalError):
            factor_ideal(zero_ideal(zi))

    def test_non_maximal_order_rejected(self):
        order = equation_order(nf_new("x^2 + 3"))
        with pytest.raises(UnsupportedError):
            factor_ideal(principal_ideal(order, (2, 0)))

    def test_divisors(self, z5):
        divisors = divisors_of(factor_ideal(principal_ideal(z5, (6, 0))))
        assert len(divisors) == 12
        assert divisors[0] == unit_ideal(z5)
        assert divisors[-1] == principal_ideal(z5, (6, 0))

    def test_ideals_of_small_norm(self, zi):
        ideals = ideals_of_norm_at_most(zi, 5)
        assert [ideal.norm for ideal in ideals] == [1, 2, 4, 5, 5]


def _rebuild(factors):
    product = None
    for prime, e in factors:
        power = ideal_pow(prime.ideal, e)
        product = power if product is None else ideal_mul(product, power)
    return product


def _exponents(factorization) -> Counter:
    return Counter({prime.ideal: e for prime, e in factorization})


@pytest.mark.slow
class TestUniqueFactorizationSweep:
    @pytest.mark.parametrize("d", [-1, -5])
    def test_refactoring_a_reordered_product(self, d):
        order = quadratic_maximal_order(d)
        for ideal in ideals_of_norm_at_most(order, 100)[1:]:
            factorization = factor_ideal(ideal)
            rebuilt = _rebuild(reversed(factorization.factors))
            assert rebuilt == ideal
            assert factor_ideal(rebuilt).factors == factorization.factors

    @pytest.mark.parametrize("d", [-1, -5])
    def test_exponents_add_under_multiplication(self, d):
        order = quadratic_maximal_order(d)
        ideals = ideals_of_norm_at_most(order, 20)[1:]
        for i, j in itertools.combinations_with_replacement(ideals, 2):
            expected = _exponents(factor_ideal(i)) + _exponents(factor_ideal(j))
            assert _exponents(factor_ideal(ideal_mul(j, i))) == expected

    @pytest.mark.parametrize("d", [-1, -5])
    def test_divides_iff_contains(self, d):
        order = quadratic_maximal_order(d)
        ideals = ideals_of_norm_at_most(order, 50)
        by_norm: dict[int, list] = {}
        for ideal in ideals:
            by_norm.setdefault(ideal.norm, []).append(ideal)
        for i in ideals:
            for j in ideals:
                cofactors = by_norm.get(j.norm // i.norm, []) if j.norm % i.norm == 0 else []
                witness = next((h for h in cofactors if ideal_mul(i, h) == j), None)
                assert ideal_dvd(i, j) == (witness is not None)
                assert ideal_contains(i, j) == (witness is not None)
                assert ideal_quotient_integral(j, i) == witness

    @pytest.mark.parametrize(
        "order",
        [
            rational_integers(),
            quadratic_maximal_order(-1),
            quadratic_maximal_order(-5),
            quadratic_maximal_order(-23),
            quadratic_maximal_order(5),
            certify_maximal(equation_order(nf_new("x^3 - 2"))),
        ],
        ids=["Z", "Z[i]", "Z[sqrt(-5)]", "disc -23", "Q(sqrt(5))", "Z[cbrt(2)]"],
    )
    def test_sum_of_ef_is_the_degree(self, order):
        for p in primerange(2, 101):
            primes = primes_above(order, p)
            assert sum(P.residue_degree * P.ramification for P in primes) == order.degree
            norm = 1
            for P in primes:
                norm *= P.norm**P.ramification
            assert norm == p**order.degree


@pytest.mark.slow
class TestHnfCanonicity:
    @pytest.mark.parametrize("d", [-1, -5, -23, 5])
    def test_generators_in_any_order_give_the_same_hnf(self, d):
        order = quadratic_maximal_order(d)
        for ideal in ideals_of_norm_at_most(order, 30):
            b0, b1 = ideal.basis()
            combined = tuple(3 * u + v for u, v in zip(b0, b1))
            variants = [
                [b1, b0],
                [b0, b1, combined],
                [combined, b1, b0, order.mul_coords(b0, b1)],
                [b1, b1, b0, b0],
            ]
            for gens in variants:
                assert ideal_from_generators(order, gens).hnf == ideal.hnf
