"""Converters between the plain coefficient form and the two normalized forms.

(A1)-form (dim 2)::

    A = a1 d1^3 + 3 a2 d1^2 d2 + 3 a3 d1 d2^2 + a4 d2^3
        + b1 d1^2 + 2 b2 d1 d2 + b3 d2^2 + c1 d1 + c2 d2 + a0

u-form: A = 6 * sum_alpha u^alpha / alpha! * d^alpha, i.e. u^alpha = alpha! c_alpha / 6.
"""
from typing import Dict, Mapping

from diffop import multiindex as mi
from diffop.multiindex import MultiIndex
from diffop.operator import Coords, LinDiffOp, plain_coords
from symexpr import Rat

# name -> (multi-index, multiplicity)
A1_FORM = {
    "a1": ((3, 0), 1),
    "a2": ((2, 1), 3),
    "a3": ((1, 2), 3),
    "a4": ((0, 3), 1),
    "b1": ((2, 0), 1),
    "b2": ((1, 1), 2),
    "b3": ((0, 2), 1),
    "c1": ((1, 0), 1),
    "c2": ((0, 1), 1),
    "a0": ((0, 0), 1),
}


def convert_a1form(coords: Coords = None, **values: Rat) -> LinDiffOp:
    """Build a dim-2 operator from (A1)-form coefficients (missing names are 0)."""
    coords = coords if coords is not None else plain_coords(2)
    if coords.dim != 2:
        raise ValueError("the (A1)-form is defined in dimension 2")
    unknown = set(values) - set(A1_FORM)
    if unknown:
        raise ValueError(f"unknown (A1)-form coefficients {sorted(unknown)}")
    coeffs: Dict[MultiIndex, Rat] = {}
    for name, value in values.items():
        alpha, weight = A1_FORM[name]
        if not isinstance(value, Rat):
            value = Rat.const(value, coords.vars)
        coeffs[alpha] = value * weight
    return LinDiffOp(coords, coeffs)


def to_a1form(A: LinDiffOp) -> Dict[str, Rat]:
    if A.dim != 2:
        raise ValueError("the (A1)-form is defined in dimension 2")
    return {name: A.coefficient(alpha) / weight for name, (alpha, weight) in A1_FORM.items()}


def convert_uform(A: LinDiffOp) -> Dict[MultiIndex, Rat]:
    """u^alpha = alpha! * c_alpha / 6."""
    return {alpha: c * mi.mfactorial(alpha) / 6 for alpha, c in A.coeffs.items()}


def from_uform(coords: Coords, u: Mapping[MultiIndex, Rat]) -> LinDiffOp:
    """c_alpha = 6 * u^alpha / alpha!."""
    return LinDiffOp(coords, {alpha: v * 6 / mi.mfactorial(alpha) for alpha, v in u.items()})
