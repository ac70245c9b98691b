"""Tests for the text and JSON input grammar."""

import json

import pytest

from dedekind_engine.errors import MathematicalError, ParseError
from dedekind_engine.parsing import (
    parse_basis_list,
    parse_domain,
    parse_function_field,
    parse_generators,
    parse_modulus,
    parse_order,
    read_argument,
)
from dedekind_engine.poly import GF, parse_polynomial


class TestOrders:
    @pytest.mark.parametrize(
        "text,name",
        [
            ("Q", "Z"),
            ("Q(i)", "Z[i]"),
            ("Q(sqrt(-5))", "Z[sqrt(-5)]"),
            ("Q( sqrt( -23 ) )", "Z[(1+sqrt(-23))/2]"),
            ("x^3 - 2", "Z[x]/(x^3 - 2)"),
        ],
    )
    def test_named_orders(self, text, name):
        assert str(parse_order(text)) == name

    def test_json_order_with_basis(self):
        order = parse_order(json.dumps({"defining_poly": "x^2 + 3", "basis": ["1", "(1+x)/2"]}))
        assert order.discriminant() == -3

    def test_json_order_without_basis(self):
        order = parse_order('{"defining_poly": "x^2 + 1"}')
        assert order.discriminant() == -4

    def test_order_from_file(self, tmp_path):
        path = tmp_path / "order.json"
        path.write_text('{"defining_poly": "x^2 + 5"}', encoding="utf-8")
        assert parse_order(f"@{path}").discriminant() == -20

    def test_missing_file(self, tmp_path):
        with pytest.raises(ParseError):
            read_argument(f"@{tmp_path / 'missing.json'}")

    @pytest.mark.parametrize("text", ["", "{not json", '{"basis": ["1"]}'])
    def test_malformed(self, text):
        with pytest.raises(ParseError):
            parse_order(text)

    def test_non_squarefree_radicand(self):
        with pytest.raises(MathematicalError):
            parse_order("Q(sqrt(-4))")


class TestGenerators:
    def test_parenthesised_list(self):
        order = parse_order("Q(sqrt(-5))")
        assert parse_generators(order, "(2, 1+x)") == [(2, 0), (1, 1)]
        assert parse_generators(order, "(6)") == [(6, 0)]

    def test_json_list(self):
        order = parse_order("Q(i)")
        assert parse_generators(order, '["2", [1, 1]]') == [(2, 0), (1, 1)]

    def test_non_integral_generator(self):
        order = parse_order("Q(i)")
        with pytest.raises(MathematicalError):
            parse_generators(order, "(1/2)")

    @pytest.mark.parametrize("text", ["(2,)", "()", "[]"])
    def test_malformed(self, text):
        with pytest.raises(ParseError):
            parse_generators(parse_order("Q(i)"), text)


class TestFunctionFieldsAndDomains:
    def test_function_field(self):
        order = parse_function_field('{"q": 5, "f": "t^3+t+1"}')
        assert order.q == 5
        assert str(order.f) == "t^3 + t + 1"

    def test_function_field_validation(self):
        with pytest.raises(ParseError):
            parse_function_field('{"q": 1, "f": "t^3"}')
        with pytest.raises(ParseError):
            parse_function_field('{"q": 5}')

    def test_domains(self):
        assert parse_domain("Z") is None
        assert parse_domain("F3[t]") == 3
        assert parse_domain("F_7[t]") == 7
        with pytest.raises(ParseError):
            parse_domain("R")

    def test_modulus(self):
        assert parse_modulus("Z", "-7") == -7
        assert parse_modulus("F3[t]", "t^2 + 1") == parse_polynomial("t^2 + 1", GF(3), "t")
        with pytest.raises(ParseError):
            parse_modulus("Z", "x")

    def test_basis_list(self):
        assert parse_basis_list('["1", "x"]') == ["1", "x"]
        with pytest.raises(ParseError):
            parse_basis_list("[1, 2]")
