"""Diffeomorphisms given with exact inverses, and operator pushforward."""
import logging
from typing import Dict, List, Sequence

from diffop import multiindex as mi
from diffop.multiindex import MultiIndex
from diffop.operator import Coords, LinDiffOp, OperatorFamily
from symexpr import Rat
from utils.errors import SingularJacobianError

logger = logging.getLogger(__name__)


class Diffeo:
    """phi: x -> (phi^1(x), ..., phi^n(x)) with its inverse, both over ``coords``."""

    def __init__(self, coords: Coords, forward: Sequence[Rat], inverse: Sequence[Rat]):
        if len(forward) != coords.dim or len(inverse) != coords.dim:
            raise ValueError("a diffeomorphism needs one component per coordinate")
        self.coords = coords
        self.forward = list(forward)
        self.inverse = list(inverse)

    @classmethod
    def identity(cls, coords: Coords) -> "Diffeo":
        comps = [coords.var(i) for i in range(coords.dim)]
        return cls(coords, comps, comps)

    def _bind(self, components: Sequence[Rat]) -> Dict[str, Rat]:
        return dict(zip(self.coords.names, components))

    def apply(self, e: Rat) -> Rat:
        """e o phi."""
        return e.subs(self._bind(self.forward))

    def apply_inverse(self, e: Rat) -> Rat:
        """e o phi^-1."""
        return e.subs(self._bind(self.inverse))

    def check(self) -> bool:
        """True iff phi^-1 o phi and phi o phi^-1 reduce to the identity."""
        for i in range(self.coords.dim):
            x = self.coords.var(i)
            if self.apply(self.inverse[i]) != x or self.apply_inverse(self.forward[i]) != x:
                return False
        return True

    def jacobian(self) -> List[List[Rat]]:
        """J[j][i] = d phi^j / d x_i."""
        return [[c.diff(name) for name in self.coords.names] for c in self.forward]

    def jacobian_det(self) -> Rat:
        J = self.jacobian()
        if self.coords.dim == 1:
            return J[0][0]
        return J[0][0] * J[1][1] - J[0][1] * J[1][0]

    def compose(self, other: "Diffeo") -> "Diffeo":
        """other o self (apply self first)."""
        forward = [self.apply(c) for c in other.forward]
        inverse = [other.apply_inverse(c) for c in self.inverse]
        return Diffeo(self.coords, forward, inverse)

    def point(self, x: Sequence) -> tuple:
        """phi evaluated at a rational point."""
        p = self._bind(x)
        return tuple(c.eval_at(p) for c in self.forward)

    def inverse_point(self, x: Sequence) -> tuple:
        p = self._bind(x)
        return tuple(c.eval_at(p) for c in self.inverse)

    def inverted(self) -> "Diffeo":
        return Diffeo(self.coords, self.inverse, self.forward)


def pushforward(A: LinDiffOp, phi: Diffeo) -> LinDiffOp:
    """phi_*(A) = (h -> A(h o phi) o phi^-1).

    A(h o phi) is expanded over formal jets H_beta of h taken at phi(x):
    d_i (e H_beta o phi) = (d_i e) H_beta o phi + e sum_j (d_i phi^j) H_{beta+e_j} o phi.
    The coefficients are then composed with phi^-1. For families the fiber
    variable is inert.
    """
    if A.coords != phi.coords:
        raise ValueError("operator and diffeomorphism live on different coordinates")
    if phi.jacobian_det().is_zero():
        raise SingularJacobianError("Jacobian of the coordinate change vanishes identically")
    coords = A.coords
    dim = coords.dim
    dphi = phi.jacobian()
    # chain[alpha]: d^alpha (h o phi) as {beta: coefficient}
    chain: Dict[MultiIndex, Dict[MultiIndex, Rat]] = {mi.zero(dim): {mi.zero(dim): coords.one()}}
    for k in range(1, A.order + 1):
        for alpha in mi.of_order(dim, k):
            i, rest = mi.split_first(alpha)
            result: Dict[MultiIndex, Rat] = {}
            for beta, e in chain[rest].items():
                de = e.diff(coords.names[i])
                if de:
                    result[beta] = result[beta] + de if beta in result else de
                for j in range(dim):
                    factor = dphi[j][i]
                    if factor:
                        up = mi.add(beta, mi.unit(dim, j))
                        term = e * factor
                        result[up] = result[up] + term if up in result else term
            chain[alpha] = result
    expanded: Dict[MultiIndex, Rat] = {}
    for alpha, c in A.coeffs.items():
        for beta, e in chain[alpha].items():
            term = c * e
            expanded[beta] = expanded[beta] + term if beta in expanded else term
    coeffs = {beta: phi.apply_inverse(e) for beta, e in expanded.items()}
    logger.debug("pushforward: %d coefficients", len(coeffs))
    if isinstance(A, OperatorFamily):
        return OperatorFamily(coords, coeffs, A.fiber)
    return LinDiffOp(coords, coeffs)


def transport(e: Rat, phi: Diffeo) -> Rat:
    """A function pushed forward: e o phi^-1."""
    return phi.apply_inverse(e)
