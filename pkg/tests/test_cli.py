"""End-to-end tests of the dedekind command line."""

import json

import pytest
from typer.testing import CliRunner

from dedekind_engine.cli import app
from dedekind_engine.version import get_version

runner = CliRunner()


def invoke(*args: str):
    return runner.invoke(app, list(args))


def output_json(result) -> dict:
    return json.loads(result.stdout)


class TestFieldInfo:
    def test_quadratic_field(self):
        result = invoke("field-info", "x^2+5")
        assert result.exit_code == 0
        data = output_json(result)
        assert data["degree"] == 2
        assert data["power_basis_discriminant"] == "-20"
        assert data["equation_order"]["maximal"] is True
        assert data["maximal_order"]["name"] == "Z[sqrt(-5)]"
        assert data["rational_roots_integral"] is True

    def test_reducible_polynomial(self):
        result = invoke("field-info", "x^2-1")
        assert result.exit_code == 3
        data = output_json(result)
        assert data["error"] == "reducible"
        assert data["witness"] == "x - 1"

    def test_supplied_basis(self):
        result = invoke("field-info", "x^2+3", "--basis", '["1", "(1+x)/2"]')
        assert result.exit_code == 0
        data = output_json(result)
        assert data["equation_order"]["maximal"] is False
        assert data["supplied_order"]["maximal"] is True


class TestFactorIdeal:
    def test_six_in_sqrt_minus_5(self):
        result = invoke("factor-ideal", "Q(sqrt(-5))", "(6)")
        assert result.exit_code == 0
        data = output_json(result)
        assert data["factorization"] == "(2, x + 1)^2 * (3, x + 1) * (3, x + 2)"
        assert data["ideal"]["norm"] == "36"

    def test_malformed_generators(self):
        result = invoke("factor-ideal", "Q(i)", "(2,)")
        assert result.exit_code == 2
        assert output_json(result)["error"] == "parse"


class TestClassNumber:
    @pytest.mark.parametrize(
        "order,h,invariants",
        [("Q", 1, []), ("Q(i)", 1, []), ("Q(sqrt(-5))", 2, [2]), ("Q(sqrt(-23))", 3, [3])],
    )
    def test_imaginary_quadratic(self, order, h, invariants):
        result = invoke("class-number", order)
        assert result.exit_code == 0
        data = output_json(result)
        assert data["mode"] == "exact"
        assert data["class_number"] == h
        assert data["invariant_factors"] == invariants

    def test_real_quadratic_is_bound_only(self):
        result = invoke("class-number", "Q(sqrt(2))", "--search-bound", "5")
        assert result.exit_code == 0
        data = output_json(result)
        assert data["mode"] == "bound-only"
        assert data["class_number"] is None

    def test_real_quadratic_exact_is_unsupported(self):
        result = invoke("class-number", "Q(sqrt(2))", "--exact", "--search-bound", "5")
        assert result.exit_code == 4

    def test_non_maximal_order(self):
        result = invoke("class-number", "x^2+3")
        assert result.exit_code == 4

    def test_function_field_json(self):
        result = invoke("class-number", '{"q": 5, "f": "t^3+t+1"}')
        assert result.exit_code == 0
        assert output_json(result)["class_group"]["class_number"] == 9

    def test_mermaid_export(self, tmp_path):
        path = tmp_path / "cg.mmd"
        result = invoke("class-number", "Q(sqrt(-5))", "--mermaid", str(path))
        assert result.exit_code == 0
        assert path.read_text(encoding="utf-8").startswith("graph LR")

    def test_output_file(self, tmp_path):
        path = tmp_path / "cg.json"
        result = invoke("class-number", "Q(sqrt(-5))", "--output", str(path))
        assert result.exit_code == 0
        assert json.loads(path.read_text(encoding="utf-8"))["class_number"] == 2


class TestFunctionField:
    def test_options(self):
        result = invoke("function-field", "--q", "5", "--f", "t^3+t+1")
        assert result.exit_code == 0
        data = output_json(result)
        assert data["maximal"] is True
        assert data["class_group"]["class_number"] == 9

    def test_spec_from_file(self, tmp_path):
        path = tmp_path / "ff.json"
        path.write_text('{"q": 5, "f": "t^3+t+1"}', encoding="utf-8")
        result = invoke("function-field", f"@{path}")
        assert result.exit_code == 0
        assert output_json(result)["q"] == 5

    def test_singular_curve(self):
        result = invoke("function-field", "--q", "3", "--f", "t^3")
        assert result.exit_code == 3

    def test_missing_arguments(self):
        result = invoke("function-field", "--q", "5")
        assert result.exit_code == 2
        assert output_json(result)["error"] == "parse"


class TestAdmissibleAudit:
    def test_integers(self):
        result = invoke("admissible-audit", "Z", "--eps", "1/4")
        assert result.exit_code == 0
        (entry,) = output_json(result)["partitions"]
        assert entry["card"] == 4
        assert entry["b"] == "7"
        assert entry["verified"] is True
        assert len(entry["values"]) == 29

    def test_polynomials(self):
        result = invoke("admissible-audit", "F3[t]", "--eps", "1/9")
        assert result.exit_code == 0
        (entry,) = output_json(result)["partitions"]
        assert entry["card"] == 9
        assert len(entry["values"]) == 27
        assert entry["verified"] is True

    def test_default_eps_values(self):
        result = invoke("admissible-audit")
        assert result.exit_code == 0
        cards = [entry["card"] for entry in output_json(result)["partitions"]]
        assert cards == [1, 2, 3, 4]

    def test_zero_eps(self):
        result = invoke("admissible-audit", "Z", "--eps", "0")
        assert result.exit_code == 2
        assert output_json(result)["error"] == "validation"

    def test_unknown_domain(self):
        result = invoke("admissible-audit", "R")
        assert result.exit_code == 2


def test_version():
    result = invoke("--version")
    assert result.exit_code == 0
    assert get_version() in result.stdout
