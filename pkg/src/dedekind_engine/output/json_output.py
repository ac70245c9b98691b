"""JSON export models and builders.

Every command result is a pydantic model rendered with sorted keys, so identical
inputs give byte-identical output.
"""

import json
from pathlib import Path
from typing import Any

from pydantic import BaseModel

from dedekind_engine.admissible import FinsetApprox
from dedekind_engine.class_group import BoundOnlyResult, ClassGroupTable
from dedekind_engine.exact_arith import format_rational
from dedekind_engine.function_field import FfIdeal, FfOrder
from dedekind_engine.ideals import IdealFactorization, IntegralIdeal


class IdealExport(BaseModel):
    generators: str
    norm: str
    hnf: list[list[str]]


class PrimeFactorExport(BaseModel):
    prime: str
    p: str
    residue_degree: int
    ramification: int
    exponent: int
    hnf: list[list[str]]


class FactorizationExport(BaseModel):
    order: str
    ideal: IdealExport
    factorization: str
    factors: list[PrimeFactorExport]


class ApproxExport(BaseModel):
    """The pigeonhole set: eps, card(eps), |S|, L = lcm(S) and M = prod(S)."""

    eps: str
    card: int
    set_size: int
    lcm: str
    product: str
    norm_bound: int


class GeneratorExport(BaseModel):
    prime: str
    class_index: int


class ClassGroupExport(BaseModel):
    order: str
    mode: str
    class_number: int | None
    class_number_upper_bound: int | None = None
    invariant_factors: list[int]
    representatives: list[IdealExport]
    generators: list[GeneratorExport]
    approx: ApproxExport
    reason: str | None = None
    graph: dict[str, Any] | None = None


class EquationOrderExport(BaseModel):
    integral: bool
    discriminant: str | None = None
    maximal: bool | None = None
    checks: list[dict[str, Any]] = []


class MaximalOrderExport(BaseModel):
    name: str
    radicand: int
    basis: list[str]
    discriminant: int


class FieldInfoExport(BaseModel):
    defining_poly: str
    degree: int
    irreducibility: dict[str, str]
    power_basis_discriminant: str
    generator_trace: str
    generator_norm: str
    trace_form_integral: bool
    rational_roots_integral: bool | None = None
    equation_order: EquationOrderExport
    supplied_order: EquationOrderExport | None = None
    maximal_order: MaximalOrderExport | None = None


class PartitionExport(BaseModel):
    eps: str
    card: int
    b: str
    values: list[str]
    assignment: list[int]
    verified: bool


class AdmissibleAuditExport(BaseModel):
    domain: str
    partitions: list[PartitionExport]


class FunctionFieldExport(BaseModel):
    q: int
    f: str
    order: str
    maximal: bool
    class_group: ClassGroupExport


class ErrorExport(BaseModel):
    error: str
    message: str
    witness: str | None = None


def ideal_export(ideal: IntegralIdeal | FfIdeal) -> IdealExport:
    return IdealExport(
        generators=str(ideal),
        norm=str(ideal.norm),
        hnf=[[str(x) for x in row] for row in ideal.hnf],
    )


def factorization_export(factorization: IdealFactorization) -> FactorizationExport:
    ideal = factorization.ideal
    return FactorizationExport(
        order=str(ideal.order),
        ideal=ideal_export(ideal),
        factorization=str(factorization),
        factors=[
            PrimeFactorExport(
                prime=str(prime),
                p=str(prime.p),
                residue_degree=prime.residue_degree,
                ramification=prime.ramification,
                exponent=e,
                hnf=[[str(x) for x in row] for row in prime.ideal.hnf],
            )
            for prime, e in factorization
        ],
    )


def approx_export(approx: FinsetApprox) -> ApproxExport:
    return ApproxExport(
        eps=format_rational(approx.eps),
        card=approx.card,
        set_size=len(approx.elements),
        lcm=str(approx.lcm),
        product=str(approx.product),
        norm_bound=approx.norm_bound,
    )


def class_group_export(
    order, result: ClassGroupTable | BoundOnlyResult, graph_stats: dict[str, Any] | None = None
) -> ClassGroupExport:
    if isinstance(result, BoundOnlyResult):
        return ClassGroupExport(
            order=str(order),
            mode=result.mode,
            class_number=None,
            class_number_upper_bound=result.class_number_upper_bound,
            invariant_factors=[],
            representatives=[ideal_export(d) for d in result.divisors],
            generators=[],
            approx=approx_export(result.approx),
            reason=result.reason,
        )
    return ClassGroupExport(
        order=str(order),
        mode=result.mode,
        class_number=result.class_number,
        invariant_factors=list(result.invariant_factors),
        representatives=[ideal_export(c.representative) for c in result.classes],
        generators=[
            GeneratorExport(prime=label, class_index=index) for label, index in result.generators
        ],
        approx=approx_export(result.approx),
        graph=graph_stats,
    )


def function_field_export(
    order: FfOrder, table: ClassGroupTable, graph_stats: dict[str, Any] | None = None
) -> FunctionFieldExport:
    return FunctionFieldExport(
        q=order.q,
        f=str(order.f),
        order=str(order),
        maximal=order.is_maximal,
        class_group=class_group_export(order, table, graph_stats),
    )


def to_json_text(model: BaseModel) -> str:
    """Deterministic JSON: sorted keys, two-space indent, trailing newline."""
    data = model.model_dump(mode="json")
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def export_json(model: BaseModel, output_path: Path) -> Path:
    """
    Write a result model as JSON.

    Returns the path to the created file.
    """
    output_path.parent.mkdir(parents=True, exist_ok=True)
    output_path.write_text(to_json_text(model), encoding="utf-8")
    return output_path
