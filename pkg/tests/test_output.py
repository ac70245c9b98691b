"""Tests for the JSON, Mermaid and rich renderers."""

import json

import pytest
from rich.console import Console

from dedekind_engine.class_group import class_group_compute
from dedekind_engine.graph import build_graph, get_graph_stats
from dedekind_engine.ideals import factor_ideal, ideal_from_generators
from dedekind_engine.order import quadratic_maximal_order
from dedekind_engine.output import (
    ErrorExport,
    class_group_export,
    export_json,
    export_mermaid,
    factorization_export,
    render_class_group,
    render_factorization,
    render_mermaid,
    to_json_text,
)


@pytest.fixture(scope="module")
def sqrt_minus_5():
    order = quadratic_maximal_order(-5)
    return order, class_group_compute(order)


class TestJson:
    def test_sorted_and_deterministic(self, sqrt_minus_5):
        order, table = sqrt_minus_5
        first = to_json_text(class_group_export(order, table))
        second = to_json_text(class_group_export(order, table))
        assert first == second
        assert first.endswith("\n")
        data = json.loads(first)
        assert list(data) == sorted(data)

    def test_exact_class_group(self, sqrt_minus_5):
        order, table = sqrt_minus_5
        graph = build_graph(table)
        export = class_group_export(order, table, get_graph_stats(graph))
        assert export.mode == "exact"
        assert export.class_number == 2
        assert export.invariant_factors == [2]
        assert export.approx.lcm == "2520"
        assert export.graph["classes"] == 2
        assert len(export.representatives) == 2

    def test_bound_only(self):
        order = quadratic_maximal_order(2)
        export = class_group_export(order, class_group_compute(order, search_bound=5))
        assert export.mode == "bound-only"
        assert export.class_number is None
        assert export.class_number_upper_bound == 1
        assert export.reason
        assert export.graph is None

    def test_factorization(self):
        order = quadratic_maximal_order(-5)
        export = factorization_export(factor_ideal(ideal_from_generators(order, [(6, 0)])))
        assert export.ideal.norm == "36"
        assert [f.exponent for f in export.factors] == [2, 1, 1]
        assert export.factors[0].ramification == 2

    def test_error_export(self):
        data = json.loads(to_json_text(ErrorExport(error="math", message="reducible")))
        assert data == {"error": "math", "message": "reducible", "witness": None}

    def test_export_json_creates_parents(self, tmp_path, sqrt_minus_5):
        order, table = sqrt_minus_5
        path = export_json(class_group_export(order, table), tmp_path / "out" / "cg.json")
        assert json.loads(path.read_text(encoding="utf-8"))["class_number"] == 2


class TestMermaid:
    def test_render(self, sqrt_minus_5):
        _, table = sqrt_minus_5
        text = render_mermaid(build_graph(table))
        lines = text.splitlines()
        assert lines[0] == "graph LR"
        assert lines[1].startswith("    C0((")
        assert any(line.startswith("    C1[") for line in lines)
        assert any("C0 -->|" in line and line.endswith("C1") for line in lines)

    def test_export(self, tmp_path, sqrt_minus_5):
        _, table = sqrt_minus_5
        path = export_mermaid(build_graph(table), tmp_path / "cg.mmd")
        assert path.read_text(encoding="utf-8").startswith("graph LR\n")


class TestPretty:
    def test_class_group(self, sqrt_minus_5):
        order, table = sqrt_minus_5
        console = Console(record=True, width=120)
        render_class_group(console, class_group_export(order, table))
        text = console.export_text()
        assert "h = 2" in text
        assert "Z/2" in text
        assert "Representatives" in text

    def test_factorization(self):
        order = quadratic_maximal_order(-1)
        export = factorization_export(factor_ideal(ideal_from_generators(order, [(5, 0)])))
        console = Console(record=True, width=120)
        render_factorization(console, export)
        assert "Norm: 25" in console.export_text()
