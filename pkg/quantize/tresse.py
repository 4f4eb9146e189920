"""Tresse derivatives of an invariant with respect to two invariants in general position."""
import logging
from typing import Tuple

from diffop.operator import Coords
from symexpr import Rat
from utils.errors import GeneralPositionError

logger = logging.getLogger(__name__)


def tresse_values(coords: Coords, J: Rat, I1: Rat, I2: Rat) -> Tuple[Rat, Rat]:
    """Solve dJ/dx_i = sum_m dI_m/dx_i * D_m for (D_1, D_2).

    Raises:
        GeneralPositionError: dI1 ^ dI2 vanishes identically
    """
    if coords.dim != 2:
        raise GeneralPositionError(
            f"Tresse derivatives need a two-dimensional base, got dimension {coords.dim}",
            jacobian=None,
        )
    i1 = (coords.d(I1, 0), coords.d(I1, 1))
    i2 = (coords.d(I2, 0), coords.d(I2, 1))
    det = i1[0] * i2[1] - i1[1] * i2[0]
    if det.is_zero():
        raise GeneralPositionError(
            "invariants are not in general position: dI1 ^ dI2 = 0",
            jacobian=[[i1[0], i1[1]], [i2[0], i2[1]]],
        )
    j = (coords.d(J, 0), coords.d(J, 1))
    d1 = (j[0] * i2[1] - j[1] * i2[0]) / det
    d2 = (i1[0] * j[1] - i1[1] * j[0]) / det
    logger.debug("tresse: det has %d variables", len(det.variables()))
    return d1, d2
