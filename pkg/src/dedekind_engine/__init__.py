"""Dedekind Engine - exact algebraic number theory from the command line."""

from dedekind_engine.admissible import (
    AbsoluteValueFq,
    AbsoluteValueZ,
    FinsetApprox,
    card_fq,
    card_z,
    finset_approx,
    partition,
    pigeonhole_pair,
)
from dedekind_engine.class_group import (
    BoundOnlyResult,
    ClassGroupTable,
    class_group_compute,
    class_number,
    class_number_is_one_iff_pid_check,
    is_principal,
)
from dedekind_engine.errors import (
    DedekindError,
    InvariantViolation,
    MathematicalError,
    ParseError,
    PreconditionError,
    ReducibleError,
    UnsupportedError,
)
from dedekind_engine.function_field import ff_class_group, ff_class_number, ff_order
from dedekind_engine.graph import build_graph, get_graph_stats, get_node_neighbors
from dedekind_engine.ideals import factor_ideal, ideal_from_generators, primes_above
from dedekind_engine.number_field import nf_new
from dedekind_engine.order import (
    certify_maximal,
    equation_order,
    quadratic_maximal_order,
    rational_integers,
)
from dedekind_engine.version import __version__

__all__ = [
    "__version__",
    "DedekindError",
    "ParseError",
    "PreconditionError",
    "MathematicalError",
    "ReducibleError",
    "UnsupportedError",
    "InvariantViolation",
    "nf_new",
    "equation_order",
    "quadratic_maximal_order",
    "rational_integers",
    "certify_maximal",
    "ideal_from_generators",
    "primes_above",
    "factor_ideal",
    "AbsoluteValueZ",
    "AbsoluteValueFq",
    "FinsetApprox",
    "card_z",
    "card_fq",
    "partition",
    "pigeonhole_pair",
    "finset_approx",
    "ClassGroupTable",
    "BoundOnlyResult",
    "class_group_compute",
    "class_number",
    "is_principal",
    "class_number_is_one_iff_pid_check",
    "ff_order",
    "ff_class_group",
    "ff_class_number",
    "build_graph",
    "get_graph_stats",
    "get_node_neighbors",
]
