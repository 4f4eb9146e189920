"""Principal symbols, the discriminant of a cubic symbol and its classification."""
import logging
from fractions import Fraction
from typing import Mapping, Optional

from diffop.operator import LinDiffOp
from geometry.tensors import SymTensor, VECTOR
from symexpr import Rat
from utils.formatters import truncate_expression

logger = logging.getLogger(__name__)

HYPERBOLIC = "hyperbolic"
ULTRAHYPERBOLIC = "ultrahyperbolic"
DEGENERATE = "degenerate"
REGULAR = "regular"


def symbol_k(A: LinDiffOp, k: int) -> SymTensor:
    """Degree-k coefficient slice of A as a symmetric k-vector (S_alpha = c_alpha)."""
    return SymTensor(A.coords, k, A.homogeneous(k), VECTOR)


def symbol3(A: LinDiffOp) -> SymTensor:
    return symbol_k(A, 3)


def binary_cubic(sigma: SymTensor):
    """(a1, a2, a3, a4) with sigma = a1 d1^3 + 3 a2 d1^2 d2 + 3 a3 d1 d2^2 + a4 d2^3."""
    if sigma.dim != 2 or sigma.degree != 3:
        raise ValueError("the discriminant is defined for cubic symbols in dimension 2")
    return (
        sigma.component((3, 0)),
        sigma.component((2, 1)) / 3,
        sigma.component((1, 2)) / 3,
        sigma.component((0, 3)),
    )


def discriminant(sigma: SymTensor) -> Rat:
    """6 a1 a2 a3 a4 - 4 (a1 a3^3 + a4 a2^3) + 3 a2^2 a3^2 - a1^2 a4^2."""
    a1, a2, a3, a4 = binary_cubic(sigma)
    return 6 * a1 * a2 * a3 * a4 - 4 * (a1 * a3 ** 3 + a4 * a2 ** 3) + 3 * a2 ** 2 * a3 ** 2 - a1 ** 2 * a4 ** 2


def _sign_class(value: Fraction) -> str:
    if value > 0:
        return HYPERBOLIC
    if value < 0:
        return ULTRAHYPERBOLIC
    return DEGENERATE


def classify(sigma: SymTensor, point: Optional[Mapping[str, Fraction]] = None) -> str:
    """Type of a cubic symbol, at a point or symbolically.

    Symbolically a constant discriminant gives its sign class, the zero
    discriminant gives "degenerate" and any other gives "regular" (the sign
    is not constant).
    """
    delta = discriminant(sigma)
    if point is not None:
        return _sign_class(delta.eval_at(point))
    if delta.is_zero():
        return DEGENERATE
    if delta.is_constant():
        return _sign_class(delta.constant_value())
    logger.debug("classify: non-constant discriminant %s", truncate_expression(str(delta)))
    return REGULAR


def is_regular(sigma: SymTensor) -> bool:
    if sigma.dim == 1:
        return not sigma.component((3,)).is_zero()
    return not discriminant(sigma).is_zero()
