"""
The equivalence decision for operator families.

Steps:

(a) natural charts of A at y0 and of B at y0b from the same invariant pair;
(b) Newton matching of chart points, giving the correspondence psi;
(c) y0-independence: psi recomputed at y0 + shift and y0b + shift must agree;
(d) invariant signatures agree at matched points.

A witness from (c) or (d) gives ``not_equivalent``. Otherwise unmatched
points or chart failures give ``inconclusive``. Two fiber values are a
necessary condition for coordinated charts, not a proof.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from equivalence.chart import Domain, natural_chart
from equivalence.matching import Match, match_charts, match_points
from equivalence.signature import (
    compare_signatures,
    invariant_signature,
    signature_column_names,
    within_tolerance,
)
from diffop.operator import OperatorFamily
from utils.config import Config
from utils.constants import DEFAULT_BATTERY, DEFAULT_CHART
from utils.errors import InputError, MathError, PoleError
from utils.formatters import format_number

logger = logging.getLogger(__name__)

EQUIVALENT = "equivalent"
NOT_EQUIVALENT = "not_equivalent"
INCONCLUSIVE = "inconclusive"


@dataclass
class EquivVerdict:
    verdict: str
    reason: str = ""
    witness: Optional[Dict[str, object]] = None
    correspondence: List[Match] = field(default_factory=list)
    chart: Sequence[str] = DEFAULT_CHART
    names: Sequence[str] = ("x1", "x2")

    @property
    def max_residual(self) -> float:
        residuals = [m.residual for m in self.correspondence if m.converged]
        return max(residuals, default=0.0)

    def as_dict(self) -> Dict[str, object]:
        return {
            "verdict": self.verdict,
            "reason": self.reason,
            "chart": list(self.chart),
            "witness": self.witness,
            "max_residual": self.max_residual,
            "correspondence": [m.as_dict(self.names) for m in self.correspondence],
        }


def _inconclusive(reason: str, chart, matches=()) -> EquivVerdict:
    logger.info("equivalence inconclusive: %s", reason)
    return EquivVerdict(INCONCLUSIVE, reason, None, list(matches), tuple(chart))


def _safe_value(chart, point):
    try:
        return chart.evaluate(point)
    except PoleError:
        return None


def _check_y0_independence(matches: List[Match], shifted: List[Match], tol: float) -> Optional[Dict[str, object]]:
    for m, s in zip(matches, shifted):
        if not (m.converged and s.converged):
            continue
        for a, b in zip(m.target, s.target):
            if not within_tolerance(a, b, tol):
                return {
                    "step": "y0-independence",
                    "point": list(m.source),
                    "psi": list(m.target),
                    "psi_shifted": list(s.target),
                    "residual": max(abs(p - q) for p, q in zip(m.target, s.target)),
                }
    return None


def equivalence_test(
    A: OperatorFamily,
    B: OperatorFamily,
    y0=0,
    y0b=0,
    specs: Optional[Sequence[str]] = None,
    chart: Sequence[str] = DEFAULT_CHART,
    domain: Optional[Domain] = None,
    domain_b: Optional[Domain] = None,
    grid: int = Config.GRID_SIZE,
    tol: float = Config.TOLERANCE,
    y_shift=None,
    workers: int = Config.WORKERS,
) -> EquivVerdict:
    """Decide whether the families A and B are equivalent under changes of base coordinates.

    Args:
        A, B: Two-dimensional operator families
        y0, y0b: Fiber values at which the charts of A and B are taken
        specs: Invariant battery compared at matched points (default battery when None)
        chart: The two invariants used as natural coordinates
        domain, domain_b: Sampled rectangles (B's defaults to A's)
        grid: Grid size per axis
        tol: Mixed tolerance for matching and comparisons
        y_shift: Offset giving the second fiber values of the y0-independence check
        workers: Thread pool size for the per-point phases

    Returns:
        The verdict with its witness and correspondence table
    """
    specs = list(specs) if specs is not None else list(DEFAULT_BATTERY)
    shift = Fraction(y_shift if y_shift is not None else Config.Y_SHIFT)
    y0, y0b = Fraction(y0), Fraction(y0b)
    domain_b = domain_b if domain_b is not None else domain

    # (a) charts
    try:
        chart_a = natural_chart(A, y0, chart, domain, grid)
        chart_b = natural_chart(B, y0b, chart, domain_b, grid)
    except MathError as exc:
        return _inconclusive(f"chart construction failed: {exc}", chart)

    # (b) matching
    matches = match_charts(chart_a, chart_b, tol, workers)
    matched = [m for m in matches if m.converged]
    if not matched:
        return _inconclusive("no chart point could be matched (disjoint chart images?)", chart, matches)
    names = chart_a.names

    # (c) y0-independence
    try:
        shifted_a = natural_chart(A, y0 + shift, chart, domain, grid)
        shifted_b = natural_chart(B, y0b + shift, chart, domain_b, grid)
    except MathError as exc:
        return _inconclusive(
            f"charts at shifted fiber values {format_number(y0 + shift)}, {format_number(y0b + shift)} failed: {exc}",
            chart,
            matches,
        )
    goals = [_safe_value(shifted_a, p) for p in chart_a.points]
    shifted = match_points(chart_a.points, goals, shifted_b, tol, workers)
    witness = _check_y0_independence(matches, shifted, tol)
    if witness is not None:
        logger.info("y0-independence fails at %s", witness["point"])
        return EquivVerdict(NOT_EQUIVALENT, "correspondence depends on the fiber value", witness, matches,
                            tuple(chart), names)

    # (d) signatures at matched points
    try:
        columns = ["z1", "z2"] + signature_column_names(specs)
        sig_a = invariant_signature(chart_a, specs, [chart_a.points[i] for i, m in enumerate(matches) if m.converged],
                                    workers)
        sig_b = invariant_signature(chart_b, specs, [m.target for m in matched], workers)
    except (MathError, InputError) as exc:
        return _inconclusive(f"signature evaluation failed: {exc}", chart, matches)
    if sig_a.empty or sig_b.empty:
        return _inconclusive("every matched point is a pole of some invariant", chart, matches)
    mismatch = compare_signatures(sig_a, sig_b, columns, tol)
    if mismatch is not None:
        row = mismatch.pop("row")
        witness = {"step": "signature", "point": list(matched[row].source), "matched": list(matched[row].target)}
        witness.update(mismatch)
        logger.info("signature mismatch in %s at %s", witness["invariant"], witness["point"])
        return EquivVerdict(NOT_EQUIVALENT, f"invariant {witness['invariant']} differs", witness, matches,
                            tuple(chart), names)

    unmatched = len(matches) - len(matched)
    if unmatched:
        return _inconclusive(f"{unmatched} of {len(matches)} chart points could not be matched", chart, matches)
    return EquivVerdict(EQUIVALENT, "charts coordinated and signatures agree", None, matches, tuple(chart), names)


@dataclass
class AtlasVerdict:
    verdict: str
    reason: str
    charts: List[EquivVerdict]
    witness: Optional[Dict[str, object]] = None

    def as_dict(self) -> Dict[str, object]:
        return {
            "verdict": self.verdict,
            "reason": self.reason,
            "witness": self.witness,
            "charts": [v.as_dict() for v in self.charts],
        }


def _overlap_disagreement(first: EquivVerdict, second: EquivVerdict, tol: float) -> Optional[Dict[str, object]]:
    targets = {m.source: m.target for m in first.correspondence if m.converged}
    for m in second.correspondence:
        other = targets.get(m.source)
        if not m.converged or other is None:
            continue
        if any(not within_tolerance(a, b, tol) for a, b in zip(m.target, other)):
            return {
                "step": "atlas-overlap",
                "point": list(m.source),
                "charts": [list(first.chart), list(second.chart)],
                "psi": [list(other), list(m.target)],
            }
    return None


def atlas_test(
    A: OperatorFamily,
    B: OperatorFamily,
    charts: Sequence[Sequence[str]],
    y0=0,
    y0b=0,
    tol: float = Config.TOLERANCE,
    **kwargs,
) -> AtlasVerdict:
    """Run the test once per chart; verdicts must agree and correspondences coincide on shared points."""
    if not charts:
        raise ValueError("atlas_test needs at least one chart")
    results = [equivalence_test(A, B, y0, y0b, chart=tuple(c), tol=tol, **kwargs) for c in charts]
    for r in results:
        if r.verdict == NOT_EQUIVALENT:
            return AtlasVerdict(NOT_EQUIVALENT, f"chart {', '.join(r.chart)}: {r.reason}", results, r.witness)
    for i, first in enumerate(results):
        for second in results[i + 1:]:
            if first.verdict == EQUIVALENT and second.verdict == EQUIVALENT:
                witness = _overlap_disagreement(first, second, tol)
                if witness is not None:
                    return AtlasVerdict(NOT_EQUIVALENT, "charts are not coordinated on their overlap", results,
                                        witness)
    if any(r.verdict == INCONCLUSIVE for r in results):
        return AtlasVerdict(INCONCLUSIVE, "some chart was inconclusive", results)
    return AtlasVerdict(EQUIVALENT, "every chart agrees", results)
