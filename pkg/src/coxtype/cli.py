"""CLI interface for coxtype."""

import functools
import json
from collections.abc import Callable
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

import click
from pydantic import BaseModel
from rich.console import Console
from rich.markup import escape
from rich.table import Table

from coxtype.config import DEFAULT_CONFIG, Config, load_config
from coxtype.core.parser import parse_orientation
from coxtype.core.session import Session, poset_to_dot
from coxtype.core.tables import table1_rows, write_tables
from coxtype.exceptions import (
    BudgetExceededError,
    ConfigError,
    DatumError,
    DiscrepancyError,
    InternalError,
    PreconditionError,
    UnsupportedCellError,
)
from coxtype.models import (
    AdmReport,
    CheckReport,
    DimensionReport,
    PosetReport,
    SmoothnessReport,
)
from coxtype.sources import load_data
from coxtype.utils.log import setup_logging, stderr_console

console = Console(emoji=False)

EXIT_REJECTED = 1
EXIT_DISCREPANCY = 2

_REJECTED = (DatumError, PreconditionError, UnsupportedCellError, BudgetExceededError, ConfigError)
_DISCREPANCY = (DiscrepancyError, InternalError)


@dataclass
class CliState:
    config: Config = DEFAULT_CONFIG
    json: bool = False


def reports_errors(func: Callable[..., Any]) -> Callable[..., Any]:
    """Turn library exceptions into exit codes 1 (rejected) and 2 (discrepancy)."""

    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        ctx = click.get_current_context()
        try:
            return func(*args, **kwargs)
        except _REJECTED as e:
            stderr_console.print(f"[bold red]Error:[/] {escape(str(e))}")
            ctx.exit(EXIT_REJECTED)
        except _DISCREPANCY as e:
            stderr_console.print(f"[bold red]Discrepancy:[/] {escape(str(e))}")
            ctx.exit(EXIT_DISCREPANCY)

    return wrapper


def json_option(func: Callable[..., Any]) -> Callable[..., Any]:
    return click.option("--json", "as_json", is_flag=True, help="Emit canonical JSON.")(func)


def datum_option(func: Callable[..., Any]) -> Callable[..., Any]:
    return click.option(
        "--datum",
        "-d",
        "target",
        required=True,
        help="Datum grammar text, or @FILE with one datum per line.",
    )(func)


def _state(as_json: bool) -> tuple[Config, bool]:
    state: CliState = click.get_current_context().find_object(CliState) or CliState()
    return state.config, state.json or as_json


def _emit_json(payload: Any) -> None:
    def dump(item: Any) -> Any:
        return item.model_dump(mode="json") if isinstance(item, BaseModel) else item

    data = [dump(p) for p in payload] if isinstance(payload, list) else dump(payload)
    click.echo(json.dumps(data, indent=2, sort_keys=True))


def _emit(reports: list[Any], as_json: bool, render: Callable[[Any], None]) -> None:
    if as_json:
        _emit_json(reports[0] if len(reports) == 1 else reports)
        return
    for report in reports:
        render(report)


def _words(texts: list[str]) -> str:
    return "{" + ", ".join(texts) + "}"


@click.group()
@click.version_option(package_name="coxtype")
@click.option(
    "--config",
    "config_path",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="TOML configuration file.",
)
@click.option("--budget", type=click.IntRange(min=1), default=None, help="Largest <mu, 2rho> to enumerate.")
@click.option("--max-rank", type=click.IntRange(1, 8), default=None, help="Upper bound on sweep ranks.")
@click.option("--workers", type=click.IntRange(min=1), default=None, help="Processes for the sweep.")
@click.option("--json", "as_json", is_flag=True, help="Emit canonical JSON.")
@click.option("--verbose", "-v", is_flag=True, help="Debug logging.")
@click.pass_context
def main(
    ctx: click.Context,
    config_path: Optional[Path],
    budget: Optional[int],
    max_rank: Optional[int],
    workers: Optional[int],
    as_json: bool,
    verbose: bool,
) -> None:
    """Exact combinatorics of affine Weyl groups and Coxeter-type classification."""
    setup_logging(verbose)
    try:
        config = load_config(config_path)
    except ConfigError as e:
        stderr_console.print(f"[bold red]Error:[/] {escape(str(e))}")
        ctx.exit(EXIT_REJECTED)

    overrides = {"adm_budget": budget, "max_rank": max_rank, "workers": workers}
    config = config.model_copy(update={k: v for k, v in overrides.items() if v is not None})
    ctx.obj = CliState(config=config, json=as_json)


@main.command()
@click.option("--max-rank", type=click.IntRange(min=1), default=None, help="Largest rank to sweep.")
@json_option
@reports_errors
def classify(max_rank: Optional[int], as_json: bool) -> None:
    """Sweep all irreducible data and list the minimal ones of Coxeter type."""
    config, as_json = _state(as_json)
    rows = table1_rows(max_rank or config.max_rank, config)
    if as_json:
        _emit_json(rows)
        return

    table = Table(title=f"Minimal data of Coxeter type ({len(rows)} rows)")
    table.add_column("Datum", style="cyan")
    table.add_column("rank", justify="right")
    table.add_column("^K Adm(mu)_0")
    for row in rows:
        table.add_row(row.datum, str(row.rank_ss_J), _words(row.k_adm_0))
    console.print(table)


def _render_adm(report: AdmReport) -> None:
    console.print(f"[bold]{report.datum}[/] level {report.level}: {len(report.elements)} elements")
    for element in report.elements:
        console.print(f"  {element.text}")


@main.command("adm")
@datum_option
@click.option("--k", "k_level", is_flag=True, help="Restrict to ^K Adm(mu).")
@click.option("--level0", is_flag=True, help="Restrict to ^K Adm(mu)_0.")
@click.option("--cox", is_flag=True, help="Restrict to ^K Cox(mu).")
@json_option
@reports_errors
def adm_command(target: str, k_level: bool, level0: bool, cox: bool, as_json: bool) -> None:
    """List the admissible set of a datum."""
    config, as_json = _state(as_json)
    level = "cox" if cox else "0" if level0 else "k" if k_level else "adm"
    reports = [Session(datum, config).adm(level) for datum in load_data(target)]
    _emit(reports, as_json, _render_adm)


def _render_dimension(report: DimensionReport) -> None:
    bound = "" if report.exact else " (lower bound)"
    verdict = "[green]equal[/]" if report.equals_rank else "[yellow]differs[/]"
    console.print(
        f"[bold]{report.datum}[/]: dim = {report.dimension}{bound}, "
        f"rank_ss(J_tau) = {report.rank_ss_J} ({verdict})"
    )
    if report.lower_bound_witness is not None:
        console.print(f"  witness of the lower bound: {report.lower_bound_witness.text}")
    if report.elements:
        table = Table()
        table.add_column("w")
        table.add_column("dim X_w", justify="right")
        table.add_column("moves")
        for item in report.elements:
            dim = "empty" if item.dim is None else str(item.dim)
            moves = " ".join(f"{m.kind}:{m.s}" for m in item.witness)
            table.add_row(item.element.text, dim, moves)
        console.print(table)


@main.command()
@datum_option
@click.option("--per-element", is_flag=True, help="Show dim X_w(tau) for each element.")
@click.option("--witness", is_flag=True, help="Include the reduction move chains.")
@json_option
@reports_errors
def dim(target: str, per_element: bool, witness: bool, as_json: bool) -> None:
    """Dimension of the union of affine Deligne-Lusztig varieties."""
    config, as_json = _state(as_json)
    reports = [
        Session(datum, config).dimension(per_element=per_element or witness, witness=witness)
        for datum in load_data(target)
    ]
    _emit(reports, as_json, _render_dimension)


def _render_poset(report: PosetReport) -> None:
    kind = "Coxeter type" if report.coxeter_type else "not of Coxeter type"
    console.print(f"[bold]{report.datum}[/] ({kind})")
    table = Table()
    for column in ("#", "w", "supp", "I(w)", "type", "residual", "dim"):
        table.add_column(column)
    for i, s in enumerate(report.strata):
        table.add_row(
            str(i),
            s.w.text,
            str(s.support),
            str(s.i_set),
            str(s.parahoric_type),
            s.residual_diagram,
            str(s.dimension),
        )
    console.print(table)
    console.print("covers: " + ", ".join(f"{a} < {b}" for a, b in report.covers))
    if report.order_disagreements:
        console.print(f"[yellow]{report.order_disagreements} pairs where the orders disagree[/]")


@main.command()
@datum_option
@click.option("--dot", is_flag=True, help="Print the Hasse diagram in Graphviz DOT.")
@click.option("--audit", is_flag=True, help="Compare the four candidate orders.")
@json_option
@reports_errors
def strata(target: str, dot: bool, audit: bool, as_json: bool) -> None:
    """Describe the Bruhat-Tits strata and their closure order."""
    config, as_json = _state(as_json)
    reports = [Session(datum, config).poset(audit=audit) for datum in load_data(target)]
    if dot:
        for report in reports:
            click.echo(poset_to_dot(report))
        return
    _emit(reports, as_json, _render_poset)


def _render_smoothness(report: SmoothnessReport) -> None:
    orientation = ", ".join(f"{k}={v}" for k, v in report.orientation.items()) or "none"
    verdict = "[green]all smooth[/]" if report.all_smooth else "[red]singular strata[/]"
    console.print(f"[bold]{report.datum}[/] orientation {orientation}: {verdict}")
    for stratum in report.strata:
        rules = ", ".join(f"{r.rule}{r.factor}" for r in stratum.trace)
        state = "smooth" if stratum.smooth else "singular"
        console.print(f"  {stratum.element.text}: {state} ({rules})")


@main.command()
@datum_option
@click.option("--orientation", default=None, help="NODE=long|short,... for the double bonds.")
@click.option("--per-stratum", is_flag=True, help="Show every stratum with its rule trace.")
@json_option
@reports_errors
def smooth(target: str, orientation: Optional[str], per_stratum: bool, as_json: bool) -> None:
    """Decide smoothness of the closed Bruhat-Tits strata."""
    config, as_json = _state(as_json)
    reports: list[SmoothnessReport] = []
    for datum in load_data(target):
        orient = parse_orientation(orientation, datum) if orientation else None
        reports.extend(Session(datum, config).smoothness(orient, per_stratum=per_stratum))
    _emit(reports, as_json, _render_smoothness)


@main.command()
@click.option("--max-rank", type=click.IntRange(min=1), default=4, show_default=True)
@click.option(
    "--out",
    "-o",
    "out_dir",
    type=click.Path(file_okay=False, dir_okay=True, path_type=Path),
    default=Path("tables"),
    show_default=True,
    help="Output directory for table1.json and table2.json.",
)
@reports_errors
def tables(max_rank: int, out_dir: Path) -> None:
    """Regenerate both tables and diff the first against the golden copy."""
    config, _ = _state(False)
    try:
        diff, listing = write_tables(out_dir, max_rank, config)
    except OSError as e:
        stderr_console.print(f"[bold red]Error:[/] {escape(str(e))}")
        click.get_current_context().exit(EXIT_REJECTED)

    console.print(f"[bold green]Wrote[/] {out_dir / 'table1.json'} and {out_dir / 'table2.json'}")
    mismatches = [row for row in listing if not row.matches]
    for datum in diff.missing:
        console.print(f"[red]- {datum}[/]")
    for datum in diff.extra:
        console.print(f"[red]+ {datum}[/]")
    for datum in diff.duplicates:
        console.print(f"[red]= {datum}[/] (isomorphic to another row)")
    for row in mismatches:
        console.print(
            f"[red]orbits of {row.datum}:[/] {row.sigma_orbits} / {row.twisted_orbits}, "
            f"expected {row.expected_sigma_orbits} / {row.expected_twisted_orbits}"
        )
    if diff.is_empty and not mismatches:
        console.print("[green]No differences from the golden tables.[/]")
        return
    click.get_current_context().exit(EXIT_DISCREPANCY)


def _mark(value: Optional[bool]) -> str:
    if value is None:
        return "[yellow]unknown[/]"
    return "[green]true[/]" if value else "[red]false[/]"


def _render_check(report: CheckReport) -> None:
    c3 = report.condition_3
    console.print(f"[bold]{report.datum}[/]")
    console.print(f"  ^K Cox(mu) = ^K Adm(mu)_0: {_mark(report.direct_equality)}")
    console.print(f"  (1) Coxeter type: {_mark(report.condition_1)}")
    dimension = "unknown" if report.dimension is None else report.dimension
    console.print(f"  (2) dim = rank_ss(J_tau): {_mark(report.condition_2)} (dim {dimension})")
    console.print(
        f"  (3) inequalities: {_mark(c3.passed)} "
        f"(<mu,2rho> = {c3.lhs}, rank_ss(G) = {c3.rank_ss_G}, rank_ss(J_tau) = {c3.rank_ss_J})"
    )
    if c3.failed:
        console.print(f"      failed inequality ({c3.failed})")
    if c3.witness is not None:
        w = c3.witness
        console.print(f"      witness xi={w.xi} J={w.J} K={w.K} K_xi={w.K_xi}")
    console.print("  ^K Adm(mu)_0 = " + _words([e.text for e in report.k_adm_0]))
    for defect in report.defects:
        console.print(f"  [bold red]defect:[/] {escape(defect)}")


@main.command()
@datum_option
@json_option
@reports_errors
def check(target: str, as_json: bool) -> None:
    """Evaluate the equivalent characterizations of Coxeter type side by side."""
    config, as_json = _state(as_json)
    reports = [Session(datum, config).check() for datum in load_data(target)]
    _emit(reports, as_json, _render_check)
    if any(r.has_defects for r in reports):
        click.get_current_context().exit(EXIT_DISCREPANCY)


if __name__ == "__main__":
    main()
