"""
Command-line surface.

Every subcommand loads operator files, calls the library and emits one
report (text or JSON) on stdout or into ``--output``.
"""
import logging
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import click

from descent.descend import descend
from descent.jets import generic_family
from descent.oracle import GROUPS, oracle_1d
from descent.pairs import pair_invariant
from diffop.io import load_operator
from diffop.operator import LinDiffOp, OperatorFamily
from equivalence.chart import Domain
from equivalence.verdict import atlas_test, equivalence_test
from quantize.battery import evaluate_battery, parse_battery
from quantize.quantization import total_symbol
from reports.builders import (
    create_classify_report,
    create_connection_report,
    create_descent_report,
    create_equivalence_report,
    create_invariants_report,
    create_oracle_report,
    create_symbols_report,
)
from reports.render import FORMATS, render
from utils.config import Config, RunConfig
from utils.constants import DEFAULT_BATTERY, DEFAULT_CHART

logger = logging.getLogger(__name__)


def _emit(ctx: click.Context, report: Dict) -> None:
    run: RunConfig = ctx.obj
    text = render(report, run.format)
    if run.output:
        Path(run.output).write_text(text)
        logger.info("report written to %s", run.output)
    else:
        click.echo(text, nl=False)


def _parse_point(ctx, param, value: Optional[str]) -> Optional[Dict[str, Fraction]]:
    """"x1=1,x2=1/2" -> {"x1": 1, "x2": 1/2}."""
    if value is None:
        return None
    point = {}
    try:
        for part in value.split(","):
            name, number = part.split("=")
            point[name.strip()] = Fraction(number.strip())
    except ValueError:
        raise click.BadParameter(f"expected name=value pairs separated by commas, got {value!r}")
    return point


def _parse_domain(ctx, param, value: Optional[str]) -> Optional[Domain]:
    if value is None:
        return None
    try:
        return Domain.parse(value)
    except ValueError as exc:
        raise click.BadParameter(str(exc))


def _parse_fraction(ctx, param, value: Optional[str]) -> Optional[Fraction]:
    if value is None:
        return None
    try:
        return Fraction(value)
    except ValueError:
        raise click.BadParameter(f"not a rational number: {value!r}")


def _names(values: Sequence[str]) -> List[str]:
    """Battery names from repeated options, keeping the order given."""
    return [spec.name for spec in parse_battery(list(values))] if values else []


def _as_family(A: LinDiffOp) -> OperatorFamily:
    return A if isinstance(A, OperatorFamily) else OperatorFamily(A.coords, A.coeffs)


def _operator_path(positional: Optional[str], option: Optional[str], hint: str) -> str:
    if positional and option and positional != option:
        raise click.BadParameter(f"given both as argument ({positional}) and option ({option})", param_hint=hint)
    path = option or positional
    if not path:
        raise click.UsageError(f"missing operator file ({hint} or positional argument)")
    return path


def _record(ctx: click.Context, inputs: Sequence[str], invariants: Sequence[str] = (), **settings) -> None:
    run: RunConfig = ctx.obj
    run.subcommand = ctx.info_name
    run.inputs = list(inputs)
    run.invariants = list(invariants)
    for key, value in settings.items():
        setattr(run, key, value)
    logger.debug("run: %s", run)


@click.group()
@click.option("--format", "fmt", type=click.Choice(FORMATS), default=Config.OUTPUT_FORMAT, show_default=True,
              help="Report format.")
@click.option("--output", "-o", type=click.Path(dir_okay=False), default=None,
              help="Write the report to this file instead of stdout.")
@click.pass_context
def cli(ctx: click.Context, fmt: str, output: Optional[str]):
    """Invariants of third-order linear differential operators."""
    ctx.obj = RunConfig(subcommand="", output=output, format=fmt)


@cli.command()
@click.argument("operator", type=click.Path(dir_okay=False))
@click.option("--at", "point", callback=_parse_point, default=None,
              help="Classify at a point, e.g. x1=1,x2=2.")
@click.pass_context
def classify(ctx, operator: str, point):
    """Discriminant and type of the cubic symbol."""
    _record(ctx, [operator])
    A = load_operator(operator)
    _emit(ctx, create_classify_report(A, operator, point))


@cli.command()
@click.argument("operator", type=click.Path(dir_okay=False))
@click.option("--canonical", is_flag=True, help="Compare with the closed forms for canonical symbols.")
@click.pass_context
def connection(ctx, operator: str, canonical: bool):
    """Wagner connection, curvature and torsion form."""
    _record(ctx, [operator])
    A = load_operator(operator)
    _emit(ctx, create_connection_report(A, operator, canonical))


@cli.command()
@click.argument("operator", type=click.Path(dir_okay=False))
@click.pass_context
def symbols(ctx, operator: str):
    """Total symbol: sigma3, sigma2, sigma1, sigma0."""
    _record(ctx, [operator])
    A = load_operator(operator)
    _emit(ctx, create_symbols_report(total_symbol(A), A, operator))


@cli.command()
@click.argument("operator", type=click.Path(dir_okay=False))
@click.option("--invariants", "-i", "names", multiple=True,
              help="Battery names (repeatable or comma separated); default battery when omitted.")
@click.option("--jets", type=click.IntRange(min=1), default=None,
              help="Evaluate on related pairs with jets of f up to this order (families only).")
@click.pass_context
def invariants(ctx, operator: str, names, jets: Optional[int]):
    """Evaluate named invariants."""
    specs = parse_battery(list(names) if names else list(DEFAULT_BATTERY))
    _record(ctx, [operator], [s.name for s in specs])
    A = load_operator(operator)
    if jets is not None:
        if not isinstance(A, OperatorFamily):
            raise click.UsageError("--jets needs an operator family (\"family\": true)")
        values = {s.name: pair_invariant(s, A, jets).expr for s in specs}
        _emit(ctx, create_invariants_report(values, operator, "pair", jets))
        return
    mode = "family" if isinstance(A, OperatorFamily) else "operator"
    _emit(ctx, create_invariants_report(evaluate_battery(A, specs), operator, mode))


@cli.command("descend")
@click.argument("operator", type=click.Path(dir_okay=False), required=False)
@click.option("--generic", type=click.Choice(["1", "2"]), default=None,
              help="Use the generic family of this dimension instead of a file.")
@click.option("--seed", "-s", "seeds", multiple=True, required=True,
              help="Seed invariants; a single seed is extended by its nabla chain.")
@click.option("--n", "n", type=click.IntRange(min=0), default=None, help="Length of the nabla chain.")
@click.option("--jets", type=click.IntRange(min=1), default=1, show_default=True,
              help="Jet order of f in the pair invariants.")
@click.option("--eliminate", "-e", multiple=True, help="Jet variables to eliminate (default: all occurring).")
@click.pass_context
def descend_command(ctx, operator: Optional[str], generic: Optional[str], seeds, n, jets: int, eliminate):
    """Invariants of the weakly nonlinear operator by descent."""
    if (operator is None) == (generic is None):
        raise click.UsageError("give either an operator file or --generic DIM")
    names = _names(seeds)
    source = operator if operator is not None else f"generic:{generic}"
    _record(ctx, [source], names)
    family = generic_family(int(generic)) if generic else _as_family(load_operator(operator))
    chain = [pair_invariant(name, family, jets) for name in names]
    result = descend(chain[0] if len(chain) == 1 else chain, n, list(eliminate) or None)
    _emit(ctx, create_descent_report(result, source))


@cli.command()
@click.argument("operator_a", type=click.Path(dir_okay=False), required=False)
@click.argument("operator_b", type=click.Path(dir_okay=False), required=False)
@click.option("--op-a", "op_a", type=click.Path(dir_okay=False), default=None, help="Operator file A.")
@click.option("--op-b", "op_b", type=click.Path(dir_okay=False), default=None, help="Operator file B.")
@click.option("--y0", callback=_parse_fraction, default="0", show_default=True, help="Fiber value for A.")
@click.option("--y0b", callback=_parse_fraction, default=None, help="Fiber value for B (default: --y0).")
@click.option("--invariants", "-i", "names", multiple=True, help="Signature battery (default battery when omitted).")
@click.option("--chart", "charts", multiple=True,
              help="Two chart invariants, e.g. I0,BOX:I0; repeat for an atlas.")
@click.option("--domain", callback=_parse_domain, default=None, help="x1lo,x2lo,x1hi,x2hi for A.")
@click.option("--domain-b", callback=_parse_domain, default=None, help="Domain for B (default: --domain).")
@click.option("--grid", type=click.IntRange(min=1), default=Config.GRID_SIZE, show_default=True)
@click.option("--tol", type=click.FloatRange(min=0, min_open=True), default=Config.TOLERANCE, show_default=True)
@click.option("--y-shift", callback=_parse_fraction, default=None, help="Offset of the second fiber values.")
@click.option("--workers", type=click.IntRange(min=1), default=Config.WORKERS, show_default=True)
@click.option("--report", type=click.Path(dir_okay=False), default=None,
              help="Write the report to this file (as JSON when it ends in .json).")
@click.pass_context
def equiv(ctx, operator_a, operator_b, op_a, op_b, y0, y0b, names, charts, domain, domain_b, grid, tol, y_shift,
          workers, report):
    """Equivalence test for two operator families.

    The operators are given either positionally or with --op-a/--op-b.
    """
    operator_a = _operator_path(operator_a, op_a, "--op-a")
    operator_b = _operator_path(operator_b, op_b, "--op-b")
    specs = _names(names) if names else list(DEFAULT_BATTERY)
    chart_specs = [_names([c]) for c in charts] or [list(DEFAULT_CHART)]
    for c in chart_specs:
        if len(c) != 2:
            raise click.BadParameter(f"a chart needs two invariants, got {', '.join(c)}", param_hint="--chart")
    y0b = y0b if y0b is not None else y0
    _record(ctx, [operator_a, operator_b], specs, grid=grid, tol=tol)
    if report:
        ctx.obj.output = report
        if Path(report).suffix == ".json":
            ctx.obj.format = "json"
    A = _as_family(load_operator(operator_a))
    B = _as_family(load_operator(operator_b))
    options = dict(specs=specs, domain=domain, domain_b=domain_b, grid=grid, y_shift=y_shift, workers=workers)
    if len(chart_specs) == 1:
        verdict = equivalence_test(A, B, y0, y0b, chart=tuple(chart_specs[0]), tol=tol, **options)
    else:
        verdict = atlas_test(A, B, chart_specs, y0, y0b, tol, **options)
    _emit(ctx, create_equivalence_report(verdict, [operator_a, operator_b], y0, y0b))


@cli.command()
@click.argument("operator", type=click.Path(dir_okay=False))
@click.option("--groups", "-g", multiple=True, type=click.Choice(GROUPS),
              help="Restrict the comparison to these groups (repeatable).")
@click.pass_context
def oracle1d(ctx, operator: str, groups):
    """Printed closed forms of the one-dimensional case against computed values."""
    _record(ctx, [operator])
    A = load_operator(operator)
    if A.dim != 1:
        raise click.UsageError(f"{operator}: oracle1d needs a one-dimensional operator")
    _emit(ctx, create_oracle_report(oracle_1d(A, list(groups) or None), operator))
