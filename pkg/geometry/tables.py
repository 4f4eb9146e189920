"""
Closed forms for the canonical cubic symbols.

Hyperbolic:      sigma = (a d1 + b d2) d1 d2
Ultrahyperbolic: sigma = (a d1 + b d2) (d1^2 + d2^2)

Logarithmic derivatives are expanded rationally, (ln u)_x = u_x / u.
``printed_*`` reproduce the tables as they are usually quoted; the
ultrahyperbolic one disagrees with the solution of nabla sigma = 0 and is only
used for comparison reports.
"""
import logging
from typing import Dict, Optional, Tuple

from diffop.operator import Coords
from geometry.connection import Connection, torsion_form
from geometry.symbol import HYPERBOLIC, ULTRAHYPERBOLIC
from geometry.tensors import Covector, SymTensor, VECTOR
from symexpr import Rat

logger = logging.getLogger(__name__)


def _lnd(coords: Coords, u: Rat, l: int) -> Rat:
    return coords.d(u, l) / u


def hyperbolic_symbol(coords: Coords, a: Rat, b: Rat) -> SymTensor:
    return SymTensor(coords, 3, {(2, 1): a, (1, 2): b}, VECTOR)


def ultrahyperbolic_symbol(coords: Coords, a: Rat, b: Rat) -> SymTensor:
    return SymTensor(coords, 3, {(3, 0): a, (2, 1): b, (1, 2): a, (0, 3): b}, VECTOR)


def hyperbolic_table(coords: Coords, a: Rat, b: Rat) -> Connection:
    """Gamma^1_{1l} = 1/3 (ln b/a^2)_l,  Gamma^2_{2l} = 1/3 (ln a/b^2)_l."""
    entries = {}
    for l in range(2):
        entries[(0, 0, l)] = (_lnd(coords, b, l) - 2 * _lnd(coords, a, l)) / 3
        entries[(1, 1, l)] = (_lnd(coords, a, l) - 2 * _lnd(coords, b, l)) / 3
    return Connection.from_entries(coords, entries)


def _ultra_parts(coords: Coords, a: Rat, b: Rat, l: int) -> Tuple[Rat, Rat]:
    r2 = a * a + b * b
    lam = -_lnd(coords, r2, l) / 6
    mu = (coords.d(a, l) * b - a * coords.d(b, l)) / r2
    return lam, mu


def ultrahyperbolic_table(coords: Coords, a: Rat, b: Rat) -> Connection:
    """Solved form: Gamma^1_{1l} = Gamma^2_{2l} = -1/6 (ln(a^2+b^2))_l,
    Gamma^2_{1l} = -Gamma^1_{2l} = (a_l b - a b_l) / (a^2 + b^2)."""
    entries = {}
    for l in range(2):
        lam, mu = _ultra_parts(coords, a, b, l)
        entries[(0, 0, l)] = lam
        entries[(1, 1, l)] = lam
        entries[(1, 0, l)] = mu
        entries[(0, 1, l)] = -mu
    return Connection.from_entries(coords, entries)


def printed_hyperbolic_table(coords: Coords, a: Rat, b: Rat) -> Connection:
    return hyperbolic_table(coords, a, b)


def printed_ultrahyperbolic_table(coords: Coords, a: Rat, b: Rat) -> Connection:
    lam2, _ = _ultra_parts(coords, a, b, 1)
    r2 = a * a + b * b
    d = coords.d
    entries = {
        (0, 0, 1): lam2,
        (1, 1, 1): lam2,
        (0, 1, 0): (d(a, 0) * b - a * d(b, 0)) / r2,
        (1, 0, 0): -(d(a, 0) * b - a * d(b, 0)) / r2,
        (0, 1, 1): (a * d(b, 1) - d(a, 1) * b) / r2,
        (1, 0, 1): -(a * d(b, 1) - d(a, 1) * b) / r2,
    }
    return Connection.from_entries(coords, entries)


def hyperbolic_torsion(coords: Coords, a: Rat, b: Rat) -> Covector:
    """theta = 1/3 (ln b^2/a)_1 dx1 + 1/3 (ln a^2/b)_2 dx2."""
    return Covector(
        coords,
        [
            (2 * _lnd(coords, b, 0) - _lnd(coords, a, 0)) / 3,
            (2 * _lnd(coords, a, 1) - _lnd(coords, b, 1)) / 3,
        ],
    )


def ultrahyperbolic_torsion(coords: Coords, a: Rat, b: Rat) -> Covector:
    """Torsion form of the solved ultrahyperbolic table: (mu_2 - lambda_1, -mu_1 - lambda_2)."""
    return torsion_form(ultrahyperbolic_table(coords, a, b))


def printed_ultrahyperbolic_torsion(coords: Coords, a: Rat, b: Rat) -> Covector:
    r2 = a * a + b * b
    d = coords.d
    return Covector(
        coords,
        [
            (a * d(b, 1) - d(a, 1) * b) / r2 - _lnd(coords, r2, 0) / 6,
            (a * d(b, 0) - d(a, 0) * b) / r2 - _lnd(coords, r2, 1) / 6,
        ],
    )


def compare_connection(computed: Connection, reference: Connection) -> Dict[str, Dict[str, str]]:
    """Report of differing entries (empty when the tables agree)."""
    report = {
        label: {"computed": mine.to_text(), "reference": theirs.to_text()}
        for label, (mine, theirs) in computed.differences(reference).items()
    }
    if report:
        logger.warning("connection differs from reference table in %d entries", len(report))
    return report


def compare_covector(computed: Covector, reference: Covector) -> Dict[str, Dict[str, str]]:
    report = {}
    for i, (mine, theirs) in enumerate(zip(computed.components, reference.components)):
        if mine != theirs:
            report[f"theta_{i + 1}"] = {"computed": mine.to_text(), "reference": theirs.to_text()}
    if report:
        logger.warning("torsion form differs from reference in %d components", len(report))
    return report


def detect_canonical(sigma: SymTensor) -> Optional[Tuple[str, Rat, Rat]]:
    """("hyperbolic" | "ultrahyperbolic", a, b) when sigma has one of the canonical shapes."""
    if sigma.dim != 2 or sigma.degree != 3:
        return None
    c = sigma.component
    s30, s21, s12, s03 = c((3, 0)), c((2, 1)), c((1, 2)), c((0, 3))
    if s30.is_zero() and s03.is_zero() and not s21.is_zero() and not s12.is_zero():
        return HYPERBOLIC, s21, s12
    if s30 == s12 and s21 == s03 and not (s30.is_zero() and s21.is_zero()):
        return ULTRAHYPERBOLIC, s30, s21
    return None


def canonical_comparison(sigma: SymTensor, conn: Connection) -> Optional[Dict[str, object]]:
    """Solved-form check and printed-table comparison for a canonical symbol."""
    found = detect_canonical(sigma)
    if found is None:
        return None
    kind, a, b = found
    coords = sigma.coords
    if kind == HYPERBOLIC:
        solved, printed = hyperbolic_table(coords, a, b), printed_hyperbolic_table(coords, a, b)
        theta_solved = theta_printed = hyperbolic_torsion(coords, a, b)
    else:
        solved, printed = ultrahyperbolic_table(coords, a, b), printed_ultrahyperbolic_table(coords, a, b)
        theta_solved = ultrahyperbolic_torsion(coords, a, b)
        theta_printed = printed_ultrahyperbolic_torsion(coords, a, b)
    theta = torsion_form(conn)
    return {
        "form": kind,
        "a": a.to_text(),
        "b": b.to_text(),
        "matches_closed_form": conn == solved and theta == theta_solved,
        "printed_table_differences": compare_connection(conn, printed),
        "printed_torsion_differences": compare_covector(theta, theta_printed),
    }
