"""Report builders: plain dicts with a schema version, one per command."""
import logging
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Sequence

from descent.descend import DescentResult
from descent.oracle import OracleReport
from diffop import multiindex as mi
from diffop.operator import LinDiffOp
from geometry.connection import curvature, is_flat, torsion_form, wagner_connection
from geometry.symbol import DEGENERATE, REGULAR, classify, discriminant, is_regular, symbol3
from geometry.tables import canonical_comparison
from geometry.tensors import SymTensor
from quantize.quantization import TotalSymbol
from utils.constants import SCHEMA_VERSION
from utils.formatters import format_index, format_multi_index, format_number

logger = logging.getLogger(__name__)


def _report(command: str, source: Optional[str], body: Mapping[str, Any]) -> Dict[str, Any]:
    report: Dict[str, Any] = {"schema": SCHEMA_VERSION, "command": command}
    if source is not None:
        report["source"] = source
    report.update(body)
    return report


def _tensor(sigma: SymTensor) -> Dict[str, str]:
    return {
        format_multi_index(alpha): sigma.components[alpha].to_text()
        for alpha in mi.of_order(sigma.dim, sigma.degree)
        if alpha in sigma.components
    }


def _exponent_text(exps: Sequence[int], names: Sequence[str]) -> str:
    factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, exps) if e]
    return "*".join(factors) or "1"


def create_classify_report(A: LinDiffOp, source: str = None, point: Mapping[str, Fraction] = None) -> Dict[str, Any]:
    """Discriminant and type of the cubic symbol (dimension 1: regular iff a3 != 0)."""
    sigma = symbol3(A)
    if A.dim == 1:
        kind = REGULAR if is_regular(sigma) else DEGENERATE
        return _report("classify", source, {"dim": 1, "class": kind, "discriminant": None})
    delta = discriminant(sigma)
    body: Dict[str, Any] = {"dim": 2, "class": classify(sigma, point), "discriminant": delta.to_text()}
    if point is not None:
        body["point"] = {k: format_number(v) for k, v in point.items()}
        body["discriminant_at_point"] = format_number(delta.eval_at(point))
    return _report("classify", source, body)


def create_connection_report(A: LinDiffOp, source: str = None, canonical: bool = False) -> Dict[str, Any]:
    """Wagner connection, flatness and torsion form of the operator's symbol."""
    sigma = symbol3(A)
    conn = wagner_connection(sigma)
    R = curvature(conn)
    n = A.dim
    nonzero = {
        f"R^{k + 1}_{m + 1},{format_index((i, j))}": R[k][m][i][j].to_text()
        for k in range(n) for m in range(n) for i in range(n) for j in range(n)
        if R[k][m][i][j]
    }
    body: Dict[str, Any] = {
        "gamma": {label: value.to_text() for label, value in conn.entries().items()},
        "flat": is_flat(conn),
        "curvature": nonzero,
        "torsion": [c.to_text() for c in torsion_form(conn).components],
    }
    if canonical:
        body["canonical"] = canonical_comparison(sigma, conn)
    return _report("connection", source, body)


def create_symbols_report(ts: TotalSymbol, A: LinDiffOp, source: str = None) -> Dict[str, Any]:
    return _report("symbols", source, {
        "sigma3": _tensor(ts.sigma3),
        "sigma2": _tensor(ts.sigma2),
        "sigma1": _tensor(ts.sigma1),
        "sigma0": ts.sigma0.to_text(),
        "gamma": {label: value.to_text() for label, value in ts.connection.entries().items()},
        "reconstructs": ts.reconstruct() == A,
    })


def create_invariants_report(values: Mapping[str, Any], source: str = None, mode: str = "operator",
                             order: int = None) -> Dict[str, Any]:
    """``mode`` is "operator", "family" (y as a parameter) or "pair" (jets of f up to ``order``)."""
    rendered: Dict[str, Any] = {}
    for name, value in values.items():
        rendered[name] = [v.to_text() for v in value] if isinstance(value, tuple) else value.to_text()
    body: Dict[str, Any] = {"mode": mode, "invariants": rendered}
    if order is not None:
        body["jet_order"] = order
    return _report("invariants", source, body)


def create_descent_report(result: DescentResult, source: str = None) -> Dict[str, Any]:
    relations: List[Dict[str, Any]] = []
    for generator, row in zip(result.relations, result.coefficients()):
        relations.append({
            "relation": generator.to_text(),
            "coefficients": [
                {"monomial": _exponent_text(exps, result.x_names), "value": c.to_text()} for exps, c in row
            ],
        })
    return _report("descend", source, {
        "status": result.status,
        "seeds": {name: p.expr.to_text() for name, p in zip(result.x_names, result.seeds)},
        "seed_names": [p.name for p in result.seeds],
        "eliminated": list(result.work),
        "relations": relations,
        "invariants": [c.to_text() for c in result.invariants],
    })


def create_equivalence_report(verdict, sources: Sequence[str] = (), y0=None, y0b=None) -> Dict[str, Any]:
    body: Dict[str, Any] = {"inputs": list(sources)}
    if y0 is not None:
        body["y0"] = format_number(Fraction(y0))
        body["y0b"] = format_number(Fraction(y0b))
    body.update(verdict.as_dict())
    return _report("equiv", None, body)


def create_oracle_report(report: OracleReport, source: str = None) -> Dict[str, Any]:
    return _report("oracle1d", source, report.as_dict())
