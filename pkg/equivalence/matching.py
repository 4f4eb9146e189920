"""Matching chart points: solve Z_B(x') = Z_A(x) by damped Newton iteration."""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from equivalence.chart import Chart, NumericChart
from utils.config import Config

logger = logging.getLogger(__name__)


@dataclass
class Match:
    """Result of matching one source point."""

    source: Tuple[float, ...]
    target: Optional[Tuple[float, ...]]
    converged: bool
    iterations: int
    residual: float

    def as_dict(self, names: Sequence[str]) -> dict:
        row = {n: float(v) for n, v in zip(names, self.source)}
        target = self.target if self.target is not None else (None,) * len(names)
        for n, v in zip(names, target):
            row[f"{n}'"] = None if v is None else float(v)
        residual = self.residual if np.isfinite(self.residual) else None
        row.update(converged=self.converged, iterations=self.iterations, residual=residual)
        return row


def _scaled_residual(value: np.ndarray, goal: np.ndarray) -> float:
    """max_i |value_i - goal_i| / max(1, |goal_i|)."""
    if not np.all(np.isfinite(value)):
        return float("inf")
    return float(np.max(np.abs(value - goal) / np.maximum(1.0, np.abs(goal))))


def _polish(chart: NumericChart, goal: np.ndarray, x: np.ndarray, residual: float) -> Tuple[np.ndarray, float]:
    """One extra full Newton step, kept only when it lowers the residual."""
    jac = chart.jacobian(x)
    if not np.all(np.isfinite(jac)):
        return x, residual
    try:
        candidate = x - np.linalg.solve(jac, chart.z(x) - goal)
    except np.linalg.LinAlgError:
        return x, residual
    trial = _scaled_residual(chart.z(candidate), goal)
    return (candidate, trial) if trial < residual else (x, residual)


def damped_newton(
    chart: NumericChart,
    goal: np.ndarray,
    x0: np.ndarray,
    tol: float = Config.TOLERANCE,
    max_iter: int = Config.NEWTON_MAX_ITER,
    damping_steps: int = Config.NEWTON_DAMPING_STEPS,
) -> Tuple[np.ndarray, bool, int, float]:
    """Newton iteration for chart.z(x) = goal with step halving.

    A step is accepted once it lowers the scaled residual; after
    ``damping_steps`` halvings without improvement the iteration stops.

    Returns:
        (x, converged, iterations, residual)
    """
    x = np.array(x0, dtype=float)
    residual = _scaled_residual(chart.z(x), goal)
    for iteration in range(max_iter + 1):
        if residual <= tol:
            x, residual = _polish(chart, goal, x, residual)
            return x, True, iteration, residual
        if iteration == max_iter:
            break
        jac = chart.jacobian(x)
        if not np.all(np.isfinite(jac)):
            break
        try:
            step = np.linalg.solve(jac, chart.z(x) - goal)
        except np.linalg.LinAlgError:
            break
        lam = 1.0
        for _ in range(damping_steps + 1):
            candidate = x - lam * step
            trial = _scaled_residual(chart.z(candidate), goal)
            if trial < residual:
                x, residual = candidate, trial
                break
            lam /= 2
        else:
            break
    return x, False, iteration, residual


def _seeds(source: Sequence[float], goal: np.ndarray, target: Chart) -> List[np.ndarray]:
    """The target grid point whose chart value is nearest the goal, then the source point itself."""
    seeds = []
    if target.points:
        values = np.array([[float(v) for v in pair] for pair in target.values])
        nearest = int(np.argmin(np.max(np.abs(values - goal), axis=1)))
        seeds.append(np.array([float(v) for v in target.points[nearest]]))
    seeds.append(np.array([float(v) for v in source]))
    return seeds


def match_point(
    source: Sequence,
    goal: Sequence,
    target: Chart,
    numeric: NumericChart,
    tol: float,
    max_iter: int = Config.NEWTON_MAX_ITER,
    damping_steps: int = Config.NEWTON_DAMPING_STEPS,
) -> Match:
    goal = np.array([float(v) for v in goal])
    best = None
    for seed in _seeds(source, goal, target):
        x, ok, iterations, residual = damped_newton(numeric, goal, seed, tol, max_iter, damping_steps)
        if ok:
            return Match(tuple(float(v) for v in source), tuple(float(v) for v in x), True, iterations, residual)
        if best is None or residual < best[2]:
            best = (x, iterations, residual)
    logger.debug("no Newton convergence from %s (residual %.3g)", tuple(map(float, source)), best[2])
    return Match(tuple(float(v) for v in source), None, False, best[1], best[2])


def match_points(
    points: Sequence[Sequence],
    goals: Sequence[Optional[Sequence]],
    target: Chart,
    tol: float = Config.TOLERANCE,
    workers: int = Config.WORKERS,
    max_iter: int = Config.NEWTON_MAX_ITER,
    damping_steps: int = Config.NEWTON_DAMPING_STEPS,
) -> List[Match]:
    """Match each point to the x' with Z_target(x') = goal; a missing goal gives an unmatched entry."""
    numeric = target.numeric()

    def solve(job):
        point, goal = job
        if goal is None:
            return Match(tuple(float(v) for v in point), None, False, 0, float("inf"))
        return match_point(point, goal, target, numeric, tol, max_iter, damping_steps)

    with ThreadPoolExecutor(max_workers=max(1, workers)) as executor:
        matches = list(executor.map(solve, zip(points, goals)))
    converged = sum(m.converged for m in matches)
    logger.debug("matching: %d of %d points converged", converged, len(matches))
    return matches


def match_charts(source: Chart, target: Chart, tol: float = Config.TOLERANCE, workers: int = Config.WORKERS) -> List[Match]:
    """For every grid point x of ``source``, the x' with Z_target(x') = Z_source(x)."""
    return match_points(source.points, source.values, target, tol, workers)
