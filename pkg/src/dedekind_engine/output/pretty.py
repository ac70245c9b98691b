"""Human-readable rendering of command results with rich (the --pretty flag)."""

from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from dedekind_engine.output.json_output import (
    AdmissibleAuditExport,
    ClassGroupExport,
    FactorizationExport,
    FieldInfoExport,
    FunctionFieldExport,
)


def render_field_info(console: Console, info: FieldInfoExport) -> None:
    console.print(Panel(f"Number field [bold]QQ[x]/({info.defining_poly})[/bold]"))
    table = Table(show_header=False)
    table.add_column("property", style="dim")
    table.add_column("value")
    table.add_row("degree", str(info.degree))
    table.add_row(
        "irreducible",
        f"{info.irreducibility['method']} {info.irreducibility.get('detail', '')}".strip(),
    )
    table.add_row("disc(power basis)", info.power_basis_discriminant)
    table.add_row("Tr(x)", info.generator_trace)
    table.add_row("N(x)", info.generator_norm)
    table.add_row("trace form integral", str(info.trace_form_integral))
    eq = info.equation_order
    table.add_row("Z[x] maximal", "n/a" if eq.maximal is None else str(eq.maximal))
    if info.maximal_order:
        table.add_row("maximal order", info.maximal_order.name)
        table.add_row("integral basis", ", ".join(info.maximal_order.basis))
        table.add_row("disc(O_K)", str(info.maximal_order.discriminant))
    console.print(table)


def render_factorization(console: Console, result: FactorizationExport) -> None:
    console.print(Panel(f"{result.ideal.generators} in [bold]{result.order}[/bold]"))
    console.print(f"  Norm: {result.ideal.norm}")
    console.print(f"  Factorization: [green]{result.factorization}[/green]")
    if not result.factors:
        return
    table = Table()
    table.add_column("prime")
    table.add_column("p", justify="right")
    table.add_column("e", justify="right")
    table.add_column("f", justify="right")
    table.add_column("exponent", justify="right")
    for factor in result.factors:
        table.add_row(
            factor.prime,
            factor.p,
            str(factor.ramification),
            str(factor.residue_degree),
            str(factor.exponent),
        )
    console.print(table)


def render_class_group(console: Console, result: ClassGroupExport) -> None:
    console.print(Panel(f"Class group of [bold]{result.order}[/bold] ({result.mode})"))
    if result.class_number is None:
        console.print(f"  h <= {result.class_number_upper_bound}")
        if result.reason:
            console.print(f"  [yellow]{result.reason}[/yellow]")
    else:
        structure = " x ".join(f"Z/{d}" for d in result.invariant_factors) or "trivial"
        console.print(f"  h = [bold green]{result.class_number}[/bold green]  ({structure})")
    console.print(
        f"  [dim]eps = {result.approx.eps}, card = {result.approx.card}, "
        f"|S| = {result.approx.set_size}, L = {result.approx.lcm}[/dim]"
    )
    table = Table(title="Representatives")
    table.add_column("#", justify="right")
    table.add_column("ideal")
    table.add_column("norm", justify="right")
    for index, ideal in enumerate(result.representatives):
        table.add_row(str(index), ideal.generators, ideal.norm)
    console.print(table)
    if result.graph:
        console.print(
            f"  Cayley graph: {result.graph['classes']} classes, {result.graph['edges']} edges"
        )


def render_audit(console: Console, result: AdmissibleAuditExport) -> None:
    console.print(Panel(f"Admissibility audit over [bold]{result.domain}[/bold]"))
    table = Table()
    table.add_column("eps")
    table.add_column("card", justify="right")
    table.add_column("b")
    table.add_column("parts used", justify="right")
    table.add_column("verified")
    for entry in result.partitions:
        table.add_row(
            entry.eps,
            str(entry.card),
            entry.b,
            str(len(set(entry.assignment))),
            "[green]yes[/green]" if entry.verified else "[red]no[/red]",
        )
    console.print(table)


def render_function_field(console: Console, result: FunctionFieldExport) -> None:
    console.print(Panel(f"Function field y^2 = {result.f} over [bold]F{result.q}[/bold]"))
    render_class_group(console, result.class_group)
