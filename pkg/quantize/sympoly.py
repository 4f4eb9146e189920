"""Polynomials in fiber variables w_1..w_n and the derivation d^s_nabla.

Coefficients are either ``Rat`` values or operators (``LinDiffOp``) standing
for formal jet expressions sum e_beta d^beta h of a placeholder h.
"""
from typing import Dict, Mapping, Sequence, Union

from diffop import multiindex as mi
from diffop.multiindex import MultiIndex
from diffop.operator import Coords, LinDiffOp
from geometry.connection import Connection
from symexpr import Rat

Coefficient = Union[Rat, LinDiffOp]


def _d(coords: Coords, c: Coefficient, i: int) -> Coefficient:
    if isinstance(c, LinDiffOp):
        return c.compose_derivative(i)
    return coords.d(c, i)


def _scale(c: Coefficient, factor: Rat) -> Coefficient:
    if isinstance(c, LinDiffOp):
        return c.scale(factor)
    return c * factor


def _is_zero(c: Coefficient) -> bool:
    return c.is_zero()


class SymPoly:
    """sum_gamma c_gamma w^gamma."""

    def __init__(self, coords: Coords, terms: Mapping[Sequence[int], Coefficient]):
        self.coords = coords
        self.terms: Dict[MultiIndex, Coefficient] = {
            tuple(g): c for g, c in terms.items() if not _is_zero(c)
        }

    @classmethod
    def constant(cls, coords: Coords, c: Coefficient) -> "SymPoly":
        return cls(coords, {mi.zero(coords.dim): c})

    def degrees(self):
        return sorted({sum(g) for g in self.terms})

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def coefficient(self, gamma: Sequence[int]):
        return self.terms.get(tuple(gamma))

    def _accumulate(self, target: Dict[MultiIndex, Coefficient], gamma: MultiIndex, c: Coefficient):
        if gamma in target:
            target[gamma] = target[gamma] + c
        else:
            target[gamma] = c

    def __add__(self, other: "SymPoly") -> "SymPoly":
        result = dict(self.terms)
        for g, c in other.terms.items():
            self._accumulate(result, g, c)
        return SymPoly(self.coords, result)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymPoly):
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        for g in keys:
            a, b = self.terms.get(g), other.terms.get(g)
            if a is None or b is None:
                return False
            if a != b:
                return False
        return True

    def __repr__(self) -> str:
        body = " + ".join(f"({c})*w^{g}" for g, c in self.terms.items())
        return f"SymPoly({body or '0'})"


def sym_derivation(conn: Connection, p: SymPoly) -> SymPoly:
    """d^s = sum_i w_i d/dx_i - sum_{ijk} Gamma^k_{ij} w_i w_j d/dw_k."""
    coords = p.coords
    n = coords.dim
    result: Dict[MultiIndex, Coefficient] = {}
    for gamma, c in p.terms.items():
        for i in range(n):
            dc = _d(coords, c, i)
            if not _is_zero(dc):
                p._accumulate(result, mi.add(gamma, mi.unit(n, i)), dc)
        for k in range(n):
            if not gamma[k]:
                continue
            lowered = mi.sub(gamma, mi.unit(n, k))
            for i in range(n):
                for j in range(n):
                    g = conn[k, i, j]
                    if g.is_zero():
                        continue
                    target = mi.add(lowered, mi.add(mi.unit(n, i), mi.unit(n, j)))
                    p._accumulate(result, target, _scale(c, -g * gamma[k]))
    return SymPoly(coords, result)
