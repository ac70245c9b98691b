"""CLI interface for dedekind-engine."""

import logging
from collections.abc import Callable
from pathlib import Path
from typing import Optional

import typer
from dotenv import load_dotenv
from pydantic import BaseModel
from rich.console import Console
from rich.logging import RichHandler

from dedekind_engine.admissible import (
    AbsoluteValueFq,
    AbsoluteValueZ,
    partition,
    verify_partition,
)
from dedekind_engine.class_group import BoundOnlyResult, class_group_compute
from dedekind_engine.config import get_settings
from dedekind_engine.errors import DedekindError, ParseError, ReducibleError, UnsupportedError
from dedekind_engine.exact_arith import format_rational, parse_rational, squarefree_part
from dedekind_engine.function_field import FfOrder, ff_class_group, ff_order
from dedekind_engine.graph import build_graph, get_graph_stats
from dedekind_engine.ideals import factor_ideal, ideal_from_generators
from dedekind_engine.number_field import nf_new
from dedekind_engine.order import (
    OrderBasis,
    certify_maximal,
    equation_order,
    maximality_certificate,
    order_from_basis,
    quadratic_maximal_order,
)
from dedekind_engine.output import (
    AdmissibleAuditExport,
    ErrorExport,
    FieldInfoExport,
    class_group_export,
    export_json,
    export_mermaid,
    factorization_export,
    function_field_export,
    render_audit,
    render_class_group,
    render_factorization,
    render_field_info,
    render_function_field,
    to_json_text,
)
from dedekind_engine.output.json_output import (
    EquationOrderExport,
    MaximalOrderExport,
    PartitionExport,
)
from dedekind_engine.parsing import (
    parse_basis_list,
    parse_domain,
    parse_function_field,
    parse_generators,
    parse_modulus,
    parse_order,
    read_argument,
)
from dedekind_engine.poly import GF, ZZ, is_integrally_closed_check, polynomials_below_degree
from dedekind_engine.version import get_version

load_dotenv()

app = typer.Typer(
    name="dedekind",
    help="Exact ideal arithmetic, factorisation and class groups of number and function fields.",
    no_args_is_help=True,
)
console = Console()
err_console = Console(stderr=True)

logger = logging.getLogger(__name__)


def version_callback(value: bool) -> None:
    """Print version and exit."""
    if value:
        typer.echo(f"dedekind version {get_version()}")
        raise typer.Exit()


def configure_logging(debug: bool = False) -> None:
    """Configure logging level based on debug flag. Logs go to stderr."""
    level = logging.DEBUG if debug else logging.WARNING
    logging.basicConfig(
        level=level,
        format="%(message)s",
        handlers=[RichHandler(console=err_console)],
        force=True,  # Allow reconfiguration
    )


def fail(error: DedekindError) -> None:
    """Report an engine error as JSON on stdout and exit with its code."""
    witness = error.witness if isinstance(error, ReducibleError) else None
    export = ErrorExport(error=error.kind, message=str(error), witness=witness)
    typer.echo(to_json_text(export), nl=False)
    raise typer.Exit(error.exit_code)


def emit(
    model: BaseModel,
    pretty: bool,
    output: Optional[Path],
    renderer: Callable[[Console, BaseModel], None],
) -> None:
    if output is not None:
        path = export_json(model, output)
        err_console.print(f"[green]✓[/green] JSON: {path}")
    if pretty:
        renderer(console, model)
    elif output is None:
        typer.echo(to_json_text(model), nl=False)


def run(action: Callable[[], None]) -> None:
    """Run a command body, mapping engine errors to exit codes in one place."""
    try:
        action()
    except DedekindError as e:
        logger.debug(f"{type(e).__name__}: {e}")
        fail(e)


PRETTY_OPTION = typer.Option(False, "--pretty", "-p", help="Render tables instead of JSON")
OUTPUT_OPTION = typer.Option(None, "--output", "-o", help="Write the JSON result to a file")


@app.callback()
def main_callback(
    version: bool = typer.Option(
        False,
        "--version",
        "-v",
        callback=version_callback,
        is_eager=True,
        help="Show version and exit",
    ),
    debug: bool = typer.Option(
        False,
        "--debug",
        "-d",
        help="Enable debug logging (per-prime progress, search sizes)",
    ),
) -> None:
    """Exact algebraic number theory engine.

    Arguments accept "@file.json" to read their value from a file.
    """
    configure_logging(debug)


def _order_check(order: OrderBasis) -> EquationOrderExport:
    certificate = maximality_certificate(order)
    return EquationOrderExport(
        integral=True,
        discriminant=str(certificate.discriminant),
        maximal=certificate.maximal,
        checks=[
            {"p": c.p, "maximal": c.maximal, "generator": c.generator}
            for c in certificate.checks
        ],
    )


def _field_info(defining_poly: str, basis: Optional[str]) -> FieldInfoExport:
    field = nf_new(read_argument(defining_poly))
    f = field.defining_poly
    x = field.gen()
    integral = all(c.denominator == 1 for c in f.coeffs)
    eq_check = (
        _order_check(equation_order(field)) if integral else EquationOrderExport(integral=False)
    )

    supplied = None
    if basis is not None:
        elements = [field.parse_element(b) for b in parse_basis_list(basis)]
        supplied = _order_check(order_from_basis(field, elements))

    maximal = None
    if field.degree == 2 and integral:
        d = squarefree_part(int(f[1] * f[1] - 4 * f[0]))
        order = quadratic_maximal_order(d)
        maximal = MaximalOrderExport(
            name=str(order),
            radicand=d,
            basis=[str(b) for b in order.basis],
            discriminant=order.discriminant(),
        )

    return FieldInfoExport(
        defining_poly=str(f),
        degree=field.degree,
        irreducibility={"method": field.certificate.method, "detail": field.certificate.detail},
        power_basis_discriminant=format_rational(field.discriminant()),
        generator_trace=format_rational(field.trace(x)),
        generator_norm=format_rational(field.norm(x)),
        trace_form_integral=field.trace_form_is_integral(field.power_basis()),
        rational_roots_integral=(
            is_integrally_closed_check(f.map_domain(ZZ)) if integral else None
        ),
        equation_order=eq_check,
        supplied_order=supplied,
        maximal_order=maximal,
    )


@app.command("field-info")
def field_info(
    defining_poly: str = typer.Argument(..., help='Monic polynomial in x, e.g. "x^2+5"'),
    basis: Optional[str] = typer.Option(
        None, "--basis", "-b", help='JSON list of basis elements to verify, e.g. \'["1", "x"]\''
    ),
    pretty: bool = PRETTY_OPTION,
    output: Optional[Path] = OUTPUT_OPTION,
) -> None:
    """Degree, discriminant, irreducibility certificate and integrality checks of a field."""
    run(lambda: emit(_field_info(defining_poly, basis), pretty, output, render_field_info))


@app.command("factor-ideal")
def factor_ideal_command(
    order: str = typer.Argument(..., help='Order: "Q", "Q(sqrt(-5))", a polynomial, or JSON'),
    generators: str = typer.Argument(..., help='Ideal generators, e.g. "(2, 1+x)" or "(6)"'),
    pretty: bool = PRETTY_OPTION,
    output: Optional[Path] = OUTPUT_OPTION,
) -> None:
    """Factor an ideal of a maximal order into prime ideals."""

    def action() -> None:
        parsed = certify_maximal(parse_order(order))
        ideal = ideal_from_generators(parsed, parse_generators(parsed, generators))
        emit(factorization_export(factor_ideal(ideal)), pretty, output, render_factorization)

    run(action)


def _is_function_field_request(text: str) -> bool:
    return text.startswith("{") and '"q"' in text


@app.command("class-number")
def class_number_command(
    spec: str = typer.Argument(
        ..., help='"Q", "Q(sqrt(d))", an order JSON, or {"q": 5, "f": "t^3+t+1"}'
    ),
    exact: bool = typer.Option(
        False, "--exact", help="Fail with exit code 4 instead of reporting a bound"
    ),
    threads: Optional[int] = typer.Option(
        None, "--threads", "-t", min=1, help="Worker threads (default DEDEKIND_THREADS)"
    ),
    search_bound: Optional[int] = typer.Option(
        None,
        "--search-bound",
        min=1,
        help="Principality search box (default DEDEKIND_SEARCH_BOUND)",
    ),
    mermaid: Optional[Path] = typer.Option(
        None, "--mermaid", "-m", help="Export the Cayley graph of the class group as Mermaid"
    ),
    pretty: bool = PRETTY_OPTION,
    output: Optional[Path] = OUTPUT_OPTION,
) -> None:
    """Class group and class number (exact in the definite case, bound-only otherwise)."""

    def action() -> None:
        text = read_argument(spec)
        settings = get_settings()
        if _is_function_field_request(text):
            _function_field(
                parse_function_field(text), threads or settings.threads, mermaid, pretty, output
            )
            return
        parsed = certify_maximal(parse_order(text))
        result = class_group_compute(
            parsed, threads or settings.threads, search_bound or settings.search_bound
        )
        if isinstance(result, BoundOnlyResult):
            if exact:
                raise UnsupportedError(
                    f"exact class number of {parsed} is out of scope: {result.reason}"
                )
            emit(class_group_export(parsed, result), pretty, output, render_class_group)
            return
        graph = build_graph(result)
        if mermaid is not None:
            err_console.print(f"[green]✓[/green] Mermaid: {export_mermaid(graph, mermaid)}")
        export = class_group_export(parsed, result, get_graph_stats(graph))
        emit(export, pretty, output, render_class_group)

    run(action)


def _function_field(
    order: FfOrder, threads: int, mermaid: Optional[Path], pretty: bool, output: Optional[Path]
) -> None:
    table = ff_class_group(order, threads)
    graph = build_graph(table)
    if mermaid is not None:
        err_console.print(f"[green]✓[/green] Mermaid: {export_mermaid(graph, mermaid)}")
    export = function_field_export(order, table, get_graph_stats(graph))
    emit(export, pretty, output, render_function_field)


@app.command("function-field")
def function_field_command(
    spec: Optional[str] = typer.Argument(None, help='{"q": 5, "f": "t^3+t+1"} or @file.json'),
    q: Optional[int] = typer.Option(None, "--q", help="Odd prime field size"),
    f: Optional[str] = typer.Option(None, "--f", help="Monic squarefree cubic in t"),
    threads: Optional[int] = typer.Option(None, "--threads", "-t", min=1),
    mermaid: Optional[Path] = typer.Option(None, "--mermaid", "-m"),
    pretty: bool = PRETTY_OPTION,
    output: Optional[Path] = OUTPUT_OPTION,
) -> None:
    """Class group of the imaginary quadratic function field y^2 = f(t) over F_q."""

    def action() -> None:
        workers = threads or get_settings().threads
        if spec is not None:
            order = parse_function_field(spec)
        elif q is not None and f is not None:
            order = ff_order(q, f)
        else:
            raise ParseError("give a JSON spec or both --q and --f")
        _function_field(order, workers, mermaid, pretty, output)

    run(action)


def _audit_values(q: Optional[int], b) -> list:
    if q is None:
        return list(range(-2 * abs(b), 2 * abs(b) + 1))
    return list(polynomials_below_degree(GF(q), b.degree + 1, "t"))


@app.command("admissible-audit")
def admissible_audit(
    domain: str = typer.Argument("Z", help='"Z" or "F<q>[t]", e.g. "F3[t]"'),
    eps: list[str] = typer.Option(
        ["1", "1/2", "1/3", "1/4"], "--eps", "-e", help="Rational eps > 0 (repeatable)"
    ),
    modulus: Optional[list[str]] = typer.Option(
        None, "--b", help="Nonzero modulus b (repeatable); default 7 or t^2 + 1"
    ),
    pretty: bool = PRETTY_OPTION,
    output: Optional[Path] = OUTPUT_OPTION,
) -> None:
    """card(eps) values and verified partition certificates for an absolute value."""

    def action() -> None:
        q = parse_domain(domain)
        abv = AbsoluteValueZ() if q is None else AbsoluteValueFq(q)
        moduli = modulus or (["7"] if q is None else ["t^2 + 1"])
        entries = []
        for eps_text in eps:
            value = parse_rational(eps_text)
            for b_text in moduli:
                b = parse_modulus(domain, b_text)
                values = _audit_values(q, b)
                assignment = partition(abv, value, b, values)
                entries.append(
                    PartitionExport(
                        eps=format_rational(value),
                        card=abv.card(value),
                        b=str(b),
                        values=[str(v) for v in values],
                        assignment=list(assignment),
                        verified=verify_partition(abv, value, b, values, assignment),
                    )
                )
        export = AdmissibleAuditExport(domain=abv.name, partitions=entries)
        emit(export, pretty, output, render_audit)

    run(action)


def main() -> None:
    """Entry point for the CLI application."""
    app()


if __name__ == "__main__":
    main()
