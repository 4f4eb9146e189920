"""Invariant signatures: tables of invariant values over the points of a chart."""
import logging
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import pandas as pd

from equivalence.chart import Chart, point_dict
from quantize.battery import InvariantEvaluator, InvariantSpec, parse_invariant
from symexpr import Rat
from utils.config import Config
from utils.errors import PoleError

logger = logging.getLogger(__name__)


def within_tolerance(u: float, v: float, tol: float) -> bool:
    """|u - v| <= tol * max(1, |u|, |v|)."""
    return abs(u - v) <= tol * max(1.0, abs(u), abs(v))


def signature_columns(chart: Chart, extra: Sequence) -> Dict[str, Rat]:
    """Column name -> invariant of the chart's family at y = y0, in base variables."""
    family = chart.family
    evaluator = InvariantEvaluator(family)
    fix = {family.fiber: chart.y0}
    columns: Dict[str, Rat] = {"z1": chart.z[0], "z2": chart.z[1]}
    for spec in extra:
        spec = parse_invariant(spec) if isinstance(spec, str) else spec
        value = evaluator.evaluate(spec)
        parts = value if isinstance(value, tuple) else (value,)
        for name, part in zip(spec.column_names(), parts):
            columns[name] = part.subs(fix)
    return columns


def _evaluate_row(columns: Dict[str, Rat], names: Sequence[str], point) -> Optional[Dict[str, float]]:
    bound = point_dict(names, point)
    exact = all(isinstance(v, (int, Fraction)) for v in point)
    row: Dict[str, float] = {n: float(v) for n, v in bound.items()}
    try:
        for name, expr in columns.items():
            row[name] = float(expr.eval_at(bound)) if exact else expr.eval_float(bound)
    except PoleError:
        return None
    return row


def invariant_signature(
    chart: Chart,
    extra: Sequence = (),
    points: Optional[Sequence[Tuple]] = None,
    workers: int = Config.WORKERS,
) -> pd.DataFrame:
    """One row per point: coordinates, z1, z2 and every extra invariant column.

    Points default to the chart's grid (evaluated exactly, then converted to
    float). Points where some column has a pole are left out and listed in
    ``attrs["skipped"]``.
    """
    columns = signature_columns(chart, extra)
    points = list(points) if points is not None else list(chart.points)
    names = chart.names
    with ThreadPoolExecutor(max_workers=max(1, workers)) as executor:
        rows = list(executor.map(lambda p: _evaluate_row(columns, names, p), points))
    kept = [r for r in rows if r is not None]
    skipped = [p for p, r in zip(points, rows) if r is None]
    if skipped:
        logger.debug("signature: %d of %d points skipped at poles", len(skipped), len(points))
    frame = pd.DataFrame(kept, columns=list(names) + list(columns))
    frame.index = [i for i, r in enumerate(rows) if r is not None]
    frame.attrs["skipped"] = skipped
    return frame


def compare_signatures(
    left: pd.DataFrame,
    right: pd.DataFrame,
    columns: Sequence[str],
    tol: float,
) -> Optional[Dict[str, object]]:
    """First (row, column) where the two tables disagree beyond the mixed tolerance.

    Rows are matched by index; rows present in only one table are ignored.
    """
    common = left.index.intersection(right.index)
    for idx in common:
        for col in columns:
            u, v = float(left.at[idx, col]), float(right.at[idx, col])
            if not within_tolerance(u, v, tol):
                return {"row": int(idx), "invariant": col, "value_a": u, "value_b": v, "residual": abs(u - v)}
    return None


def signature_column_names(extra: Sequence) -> List[str]:
    names: List[str] = []
    for spec in extra:
        spec = parse_invariant(spec) if isinstance(spec, str) else spec
        names.extend(spec.column_names())
    return names
