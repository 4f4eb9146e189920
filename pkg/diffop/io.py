"""
Operator files.

A document looks like::

    {"dim": 2, "vars": ["x1", "x2"], "family": false,
     "coeffs": {"2,1": "x1", "0,0": "x1 + x2"}, "params": ["c"]}

``vars`` defaults to ``["x"]`` (dim 1) or ``["x1", "x2"]`` (dim 2); family
operators may also use ``y``; ``params`` declares symbolic constants.
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, Union

from diffop import multiindex as mi
from diffop.operator import Coords, LinDiffOp, OperatorFamily, plain_coords
from symexpr import parse_expr, varset
from utils.constants import FIBER_VAR
from utils.errors import OperatorFileError, ParseError
from utils.formatters import format_multi_index

logger = logging.getLogger(__name__)


def parse_operator(doc: Dict[str, Any], source: str = "<operator>") -> LinDiffOp:
    """Build an operator (or family) from a decoded JSON document."""
    if not isinstance(doc, dict):
        raise OperatorFileError("operator document must be a JSON object", source)
    dim = doc.get("dim")
    if dim not in (1, 2):
        raise OperatorFileError(f"dim must be 1 or 2, got {dim!r}", f"{source}:dim")
    names = doc.get("vars") or list(plain_coords(dim).names)
    if not isinstance(names, list) or len(names) != dim or not all(isinstance(n, str) for n in names):
        raise OperatorFileError(f"vars must list {dim} variable names", f"{source}:vars")
    family = bool(doc.get("family", False))
    params = doc.get("params", [])
    if not isinstance(params, list) or not all(isinstance(p, str) for p in params):
        raise OperatorFileError("params must be a list of names", f"{source}:params")
    declared = list(names) + ([FIBER_VAR] if family else []) + list(params)
    if len(set(declared)) != len(declared):
        raise OperatorFileError(f"repeated variable names in {declared}", source)
    scope = varset(declared)
    coords = Coords(names)

    raw = doc.get("coeffs")
    if not isinstance(raw, dict):
        raise OperatorFileError("coeffs must be an object mapping multi-indices to expressions", f"{source}:coeffs")
    coeffs = {}
    for key, text in raw.items():
        location = f"{source}:coeffs.{key}"
        alpha = mi.parse_key(key, dim, location)
        if alpha in coeffs:
            raise OperatorFileError(f"multi-index {key!r} given twice", location)
        if isinstance(text, int):
            text = str(text)
        if not isinstance(text, str):
            raise OperatorFileError("coefficient must be an expression string", location)
        try:
            coeffs[alpha] = parse_expr(text, scope)
        except ParseError as exc:
            raise OperatorFileError(str(exc), location) from exc
    logger.debug("loaded %s: dim %d, %d coefficients, family=%s", source, dim, len(coeffs), family)
    if family:
        return OperatorFamily(coords, coeffs, FIBER_VAR)
    return LinDiffOp(coords, coeffs)


def load_operator(path: Union[str, Path]) -> LinDiffOp:
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except FileNotFoundError:
        raise OperatorFileError("file not found", str(path))
    except json.JSONDecodeError as exc:
        raise OperatorFileError(f"invalid JSON: {exc.msg} (line {exc.lineno})", str(path))
    return parse_operator(doc, str(path))


def dump_operator(A: LinDiffOp) -> Dict[str, Any]:
    family = isinstance(A, OperatorFamily)
    known = set(A.coords.names) | ({A.fiber} if family else set())
    params = sorted({n for c in A.coeffs.values() for n in c.variables()} - known)
    doc: Dict[str, Any] = {
        "dim": A.dim,
        "vars": list(A.coords.names),
        "family": family,
        "coeffs": {format_multi_index(alpha): A.coeffs[alpha].to_text() for alpha in mi.up_to(A.dim, 3) if alpha in A.coeffs},
    }
    if params:
        doc["params"] = params
    return doc


def save_operator(A: LinDiffOp, path: Union[str, Path]) -> None:
    Path(path).write_text(json.dumps(dump_operator(A), indent=2, sort_keys=True) + "\n")
