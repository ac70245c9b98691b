"""Output modules for dedekind-engine."""

from dedekind_engine.output.json_output import (
    AdmissibleAuditExport,
    ClassGroupExport,
    ErrorExport,
    FactorizationExport,
    FieldInfoExport,
    FunctionFieldExport,
    class_group_export,
    export_json,
    factorization_export,
    function_field_export,
    to_json_text,
)
from dedekind_engine.output.mermaid import export_mermaid, render_mermaid
from dedekind_engine.output.pretty import (
    render_audit,
    render_class_group,
    render_factorization,
    render_field_info,
    render_function_field,
)

__all__ = [
    "AdmissibleAuditExport",
    "ClassGroupExport",
    "ErrorExport",
    "FactorizationExport",
    "FieldInfoExport",
    "FunctionFieldExport",
    "class_group_export",
    "export_json",
    "factorization_export",
    "function_field_export",
    "to_json_text",
    "export_mermaid",
    "render_mermaid",
    "render_audit",
    "render_class_group",
    "render_factorization",
    "render_field_info",
    "render_function_field",
]
