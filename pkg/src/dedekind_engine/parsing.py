"""Text and JSON input grammar shared by the CLI.

Orders: "Q", "Q(i)", "Q(sqrt(d))", a defining polynomial in x (its equation
order), or JSON {"defining_poly": ..., "basis": [...]} with basis elements
written as polynomials in x. Function fields: JSON {"q": 5, "f": "t^3+t+1"}.
Any argument may be "@path" to read it from a file.
"""

from __future__ import annotations

import json
import logging
import re
from pathlib import Path
from typing import Any

from pydantic import BaseModel, Field, ValidationError

from dedekind_engine.errors import ParseError
from dedekind_engine.exact_arith import parse_integer, parse_rational
from dedekind_engine.function_field import FfOrder, ff_order
from dedekind_engine.number_field import nf_new
from dedekind_engine.order import (
    OrderBasis,
    equation_order,
    order_from_basis,
    quadratic_maximal_order,
    rational_integers,
)
from dedekind_engine.poly import GF, Polynomial, parse_polynomial

logger = logging.getLogger(__name__)

_QUADRATIC_RE = re.compile(r"^Q\(\s*sqrt\(\s*([+-]?\d+)\s*\)\s*\)$")


class OrderRequest(BaseModel):
    """JSON form of an order: a defining polynomial and an optional integral basis."""

    defining_poly: str
    basis: list[str] | None = None


class FunctionFieldRequest(BaseModel):
    q: int = Field(ge=2)
    f: str


def read_argument(text: str) -> str:
    """Expand "@file.json" into the file's contents."""
    if text.startswith("@"):
        path = Path(text[1:])
        try:
            return path.read_text(encoding="utf-8").strip()
        except OSError as e:
            raise ParseError(f"cannot read {path}: {e}") from e
    return text.strip()


def _load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"malformed JSON: {e}") from e


def _validate(model: type[BaseModel], data: Any) -> Any:
    try:
        return model.model_validate(data)
    except ValidationError as e:
        raise ParseError(f"invalid {model.__name__}: {e}") from e


def parse_order(text: str) -> OrderBasis:
    text = read_argument(text)
    if not text:
        raise ParseError("empty order description")
    if text in ("Q", "QQ", "Z"):
        return rational_integers()
    if text == "Q(i)":
        return quadratic_maximal_order(-1)
    match = _QUADRATIC_RE.match(text.replace(" ", ""))
    if match:
        return quadratic_maximal_order(int(match.group(1)))
    if text.startswith("{"):
        request = _validate(OrderRequest, _load_json(text))
        field = nf_new(request.defining_poly)
        if request.basis is None:
            return equation_order(field)
        return order_from_basis(field, [field.parse_element(b) for b in request.basis])
    return equation_order(nf_new(text))


def _split_generators(text: str) -> list[str]:
    inner = text.strip()
    if inner.startswith("(") and inner.endswith(")"):
        inner = inner[1:-1]
    parts = [part.strip() for part in inner.split(",")]
    if not parts or any(not part for part in parts):
        raise ParseError(f"malformed generator list {text!r}")
    return parts


def parse_generators(order: OrderBasis, text: str) -> list[tuple[int, ...]]:
    """Integer coordinates of generators given as "(2, 1+x)" or a JSON list.

    JSON lists may hold polynomial strings or power-basis coordinate arrays of
    rational strings.
    """
    text = read_argument(text)
    field = order.field
    if text.startswith("["):
        items = _load_json(text)
        if not isinstance(items, list) or not items:
            raise ParseError("generators must be a non-empty JSON list")
        elements = []
        for item in items:
            if isinstance(item, list):
                elements.append(field.element([parse_rational(c) for c in item]))
            else:
                elements.append(field.parse_element(str(item)))
    else:
        elements = [field.parse_element(part) for part in _split_generators(text)]
    return [order.integer_coords(x) for x in elements]


def parse_function_field(text: str) -> FfOrder:
    text = read_argument(text)
    request = _validate(FunctionFieldRequest, _load_json(text))
    return ff_order(request.q, request.f)


def parse_modulus(domain: str, text: str) -> int | Polynomial:
    """A nonzero modulus b: an integer for "Z", a polynomial in t for "F<q>[t]"."""
    q = parse_domain(domain)
    if q is None:
        return parse_integer(text)
    return parse_polynomial(text, GF(q), "t")


def parse_domain(domain: str) -> int | None:
    """None for ZZ, q for "F<q>[t]"."""
    compact = domain.replace(" ", "")
    if compact in ("Z", "ZZ"):
        return None
    match = re.fullmatch(r"F_?(\d+)\[t\]", compact)
    if not match:
        raise ParseError(f"unknown domain {domain!r}; expected Z or Fq[t]")
    return int(match.group(1))


def parse_basis_list(text: str) -> list[str]:
    """A JSON list of element strings, e.g. '["1", "(1+x)/2"]'."""
    items = _load_json(read_argument(text))
    if not isinstance(items, list) or not all(isinstance(b, str) for b in items):
        raise ParseError("basis must be a JSON list of strings")
    return items
