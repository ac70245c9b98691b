"""Tests for principality, reduction and class group closure."""

import math

import pytest
from sympy import primerange

from dedekind_engine.class_group import (
    BoundOnlyResult,
    ClassGroupTable,
    PrincipalityStatus,
    class_group_compute,
    class_number,
    class_number_is_one_iff_pid_check,
    divisor_witness,
    invariant_factors,
    is_definite,
    is_principal,
    minimal_element,
    reduce_ideal,
    same_class,
)
from dedekind_engine.errors import MathematicalError, UnsupportedError
from dedekind_engine.ideals import (
    ideal_from_generators,
    ideal_mul,
    ideals_of_norm_at_most,
    is_maximal_ideal_check,
    primes_above,
    principal_ideal,
    unit_ideal,
    zero_ideal,
)
from dedekind_engine.number_field import nf_new
from dedekind_engine.order import equation_order, quadratic_maximal_order, rational_integers

from .oracles import (
    class_number_from_forms,
    imaginary_quadratic_radicands,
    invariant_factor_chain,
    two_rank,
)


@pytest.fixture
def z5():
    return quadratic_maximal_order(-5)


@pytest.fixture
def p2(z5):
    return ideal_from_generators(z5, [(2, 0), (1, 1)])


class TestPrincipality:
    def test_non_principal_prime(self, p2):
        result = is_principal(p2)
        assert result.status is PrincipalityStatus.NOT_PRINCIPAL
        assert result.conclusive
        assert not result

    def test_principal_with_witness(self, z5):
        ideal = principal_ideal(z5, (1, 1))
        result = is_principal(ideal)
        assert result
        assert abs(z5.norm(result.witness)) == 6
        assert principal_ideal(z5, result.witness) == ideal

    def test_rational_integers_are_principal(self):
        z = rational_integers()
        result = is_principal(principal_ideal(z, (6,)))
        assert result
        assert result.witness == (6,)

    def test_square_of_non_principal_is_principal(self, p2):
        assert is_principal(ideal_mul(p2, p2))

    def test_zero_ideal(self, z5):
        with pytest.raises(MathematicalError):
            is_principal(zero_ideal(z5))

    def test_real_quadratic_search(self):
        order = quadratic_maximal_order(2)
        assert not is_definite(order)
        result = is_principal(principal_ideal(order, (1, 1)), search_bound=3)
        assert result
        assert abs(order.norm(result.witness)) == 1


class TestReduction:
    def test_minimal_element(self, p2, z5):
        x = minimal_element(p2)
        assert abs(z5.norm(x)) == 4
        assert p2.contains(x)

    def test_principal_ideal_reduces_to_unit(self, z5):
        reduced = reduce_ideal(principal_ideal(z5, (6, 0)))
        assert reduced == unit_ideal(z5)

    def test_reduction_keeps_class(self, z5, p2):
        p3 = ideal_from_generators(z5, [(3, 0), (1, 1)])
        ideal = ideal_mul(ideal_mul(p2, p3), p3)
        reduced = reduce_ideal(ideal)
        assert reduced.norm <= ideal.norm
        assert same_class(reduced, ideal)

    def test_same_class(self, z5, p2):
        p3 = ideal_from_generators(z5, [(3, 0), (1, 1)])
        assert same_class(p2, p3)
        assert not same_class(p2, unit_ideal(z5))

    def test_divisor_witness_contains_lcm(self, z5, p2):
        witness = divisor_witness(p2, 2520)
        assert witness.contains((2520, 0))
        assert same_class(witness, p2)


class TestInvariantFactors:
    def test_cyclic(self):
        table = [[(i + j) % 4 for j in range(4)] for i in range(4)]
        assert invariant_factors(table) == (4,)

    def test_klein_four(self):
        table = [[i ^ j for j in range(4)] for i in range(4)]
        assert invariant_factors(table) == (2, 2)

    def test_mixed(self):
        # Z/2 x Z/6 with elements (a, b) -> 6a + b
        elements = [(a, b) for a in range(2) for b in range(6)]
        index = {e: k for k, e in enumerate(elements)}
        table = [
            [index[((a1 + a2) % 2, (b1 + b2) % 6)] for (a2, b2) in elements]
            for (a1, b1) in elements
        ]
        assert invariant_factors(table) == (2, 6)

    def test_trivial(self):
        assert invariant_factors([[0]]) == ()


class TestClassGroups:
    def test_rationals(self):
        table = class_group_compute(rational_integers())
        assert isinstance(table, ClassGroupTable)
        assert table.class_number == 1
        assert table.generators == ()

    @pytest.mark.parametrize("d", [-1, -2, -3, -5, -23])
    def test_class_numbers_match_reduced_forms(self, d):
        assert class_number(quadratic_maximal_order(d)) == class_number_from_forms(d)

    def test_z_sqrt_minus_five(self, z5, p2):
        table = class_group_compute(z5)
        assert table.class_number == 2
        assert table.invariant_factors == (2,)
        assert table.classes[0].representative == unit_ideal(z5)
        assert table.classes[1].order == 2
        assert table.inverse(1) == 1
        assert table.multiply(1, 1) == 0
        assert table.approx.lcm == 2520
        assert ("(2, x + 1)", 1) in table.generators

    def test_cyclic_of_order_three(self):
        table = class_group_compute(quadratic_maximal_order(-23))
        assert table.class_number == 3
        assert table.invariant_factors == (3,)
        assert sorted(c.order for c in table.classes) == [1, 3, 3]

    @pytest.mark.slow
    @pytest.mark.parametrize("d,expected", [(-14, (4,)), (-21, (2, 2))])
    def test_group_structure(self, d, expected):
        table = class_group_compute(quadratic_maximal_order(d))
        assert table.class_number == class_number_from_forms(d)
        assert table.invariant_factors == expected
        assert sum(1 for f in table.invariant_factors if f % 2 == 0) == two_rank(d)

    @pytest.mark.slow
    @pytest.mark.parametrize("d", imaginary_quadratic_radicands(100))
    def test_every_discriminant_down_to_minus_one_hundred(self, d):
        table = class_group_compute(quadratic_maximal_order(d))
        h = class_number_from_forms(d)
        factors = table.invariant_factors
        assert table.class_number == h
        assert math.prod(factors) == h
        assert sum(1 for f in factors if f % 2 == 0) == two_rank(d)
        assert h == 1 or invariant_factor_chain(factors)
        assert len(table.classes) == h

    def test_radicand_sweep_is_complete(self):
        radicands = imaginary_quadratic_radicands(100)
        assert radicands[:5] == [-1, -2, -3, -5, -6]
        assert -95 in radicands and -23 in radicands
        assert -26 not in radicands and -9 not in radicands

    def test_thread_pool_gives_same_table(self):
        order = quadratic_maximal_order(-23)
        assert class_group_compute(order, threads=4) == class_group_compute(order, threads=1)

    def test_real_quadratic_is_bound_only(self):
        order = quadratic_maximal_order(2)
        result = class_group_compute(order, search_bound=5)
        assert isinstance(result, BoundOnlyResult)
        assert result.class_number_upper_bound == 1
        with pytest.raises(UnsupportedError):
            class_number(order, search_bound=5)

    def test_non_maximal_order_rejected(self):
        with pytest.raises(UnsupportedError):
            class_group_compute(equation_order(nf_new("x^2 + 3")))


class TestPidEquivalence:
    def test_gaussian_integers(self):
        check = class_number_is_one_iff_pid_check(quadratic_maximal_order(-1), prime_cap=10)
        assert check.class_number_is_one
        assert check.all_primes_principal
        assert check.consistent
        assert check.nonprincipal_witness is None

    def test_z_sqrt_minus_five(self, z5):
        check = class_number_is_one_iff_pid_check(z5, prime_cap=10)
        assert not check.class_number_is_one
        assert not check.all_primes_principal
        assert check.consistent
        assert check.nonprincipal_witness == "(2, x + 1)"


@pytest.mark.slow
class TestRationalIntegersArePid:
    def test_every_small_ideal_is_principal(self):
        z = rational_integers()
        for ideal in ideals_of_norm_at_most(z, 60):
            result = is_principal(ideal)
            assert result
            assert principal_ideal(z, result.witness) == ideal

    def test_primes_are_maximal(self):
        z = rational_integers()
        for p in primerange(2, 60):
            (prime,) = primes_above(z, p)
            assert is_maximal_ideal_check(prime.ideal)
        for n in (4, 6, 9, 15, 49):
            assert not is_maximal_ideal_check(principal_ideal(z, (n,)))

    def test_class_number_is_one(self):
        check = class_number_is_one_iff_pid_check(rational_integers(), prime_cap=30)
        assert check.class_number_is_one
        assert check.all_primes_principal
        assert check.consistent
