"""
Quantization of symmetric tensors and the total symbol of an operator.

Q(alpha_k)(h) = (1/k!) <alpha_k, (d^s_nabla)^k h>; the pairing normalization
makes the symbol of Q(alpha_k) equal to alpha_k.
"""
import logging
from dataclasses import dataclass
from math import factorial

from diffop import multiindex as mi
from diffop.operator import LinDiffOp
from geometry.connection import Connection, wagner_connection
from geometry.symbol import symbol3, symbol_k
from geometry.tensors import SymTensor, VECTOR
from quantize.sympoly import SymPoly, sym_derivation
from symexpr import Rat

logger = logging.getLogger(__name__)


def symmetric_differential(conn: Connection, k: int) -> SymPoly:
    """(d^s_nabla)^k h for a placeholder h, as w-polynomial with operator coefficients."""
    coords = conn.coords
    p = SymPoly.constant(coords, LinDiffOp.identity(coords))
    for _ in range(k):
        p = sym_derivation(conn, p)
    return p


def quantize(alpha: SymTensor, conn: Connection) -> LinDiffOp:
    """The order-k operator Q(alpha) built from the connection."""
    if alpha.variance != VECTOR:
        raise ValueError("only symmetric vectors are quantized")
    k = alpha.degree
    if k > 3:
        raise ValueError("quantization is implemented up to order 3")
    coords = alpha.coords
    if k == 0:
        return LinDiffOp(coords, {mi.zero(coords.dim): alpha.component(mi.zero(coords.dim))})
    dk = symmetric_differential(conn, k)
    result = LinDiffOp(coords, {})
    for a, c in alpha.components.items():
        jet = dk.coefficient(a)
        if jet is None:
            continue
        result = result + jet.scale(c * Rat.const(mi.mfactorial(a)) / factorial(k))
    return result


@dataclass
class TotalSymbol:
    """sigma3 + sigma2 + sigma1 + sigma0 with A = Q(s3) + Q(s2) + Q(s1) + s0."""

    sigma3: SymTensor
    sigma2: SymTensor
    sigma1: SymTensor
    sigma0: Rat
    connection: Connection

    def sigma(self, k: int):
        return {3: self.sigma3, 2: self.sigma2, 1: self.sigma1, 0: self.sigma0}[k]

    def quantized(self, k: int) -> LinDiffOp:
        if k == 0:
            coords = self.connection.coords
            return LinDiffOp(coords, {mi.zero(coords.dim): self.sigma0})
        return quantize(self.sigma(k), self.connection)

    def reconstruct(self) -> LinDiffOp:
        result = self.quantized(0)
        for k in (1, 2, 3):
            result = result + self.quantized(k)
        return result


def total_symbol(A: LinDiffOp, conn: Connection = None) -> TotalSymbol:
    """Peel Q(sigma3), Q(sigma2), Q(sigma1) off A, all with the Wagner connection of sigma3.

    Raises:
        DegenerateSymbolError: sigma3 is not regular
    """
    s3 = symbol3(A)
    if conn is None:
        conn = wagner_connection(s3)
    rest = A - quantize(s3, conn)
    s2 = symbol_k(rest, 2)
    rest = rest - quantize(s2, conn)
    s1 = symbol_k(rest, 1)
    rest = rest - quantize(s1, conn)
    logger.debug("total_symbol: sigma2 has %d terms, sigma1 %d", len(s2.components), len(s1.components))
    return TotalSymbol(s3, s2, s1, rest.free_term(), conn)
