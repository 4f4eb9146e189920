"""Invariants of operator families and of related pairs (family jet, function jet)."""
import logging
from dataclasses import dataclass, field
from typing import List, Union

from descent.jets import JetVars, VerticalDerivation, pair_coords, rebase, specialize_jets
from diffop.operator import Coords, OperatorFamily
from quantize.battery import InvariantEvaluator, InvariantSpec, parse_invariant
from symexpr import Rat

logger = logging.getLogger(__name__)

SpecLike = Union[str, InvariantSpec]


@dataclass
class PairInvariant:
    """A scalar invariant of related pairs: rational in x, y, f-jets and coefficient data."""

    name: str
    expr: Rat
    jets: JetVars = field(repr=False)

    @property
    def jet_variables(self):
        return self.jets.occurring(self.expr)

    def specialize(self, f: Rat, coords: Coords) -> Rat:
        """Value on the pair (A, f): y = f and every f-jet replaced by the derivative of f."""
        return specialize_jets(self.expr, f, coords, self.jets)

    def __mul__(self, other: "PairInvariant") -> "PairInvariant":
        return PairInvariant(f"{self.name}*{other.name}", self.expr * other.expr, self.jets)


def _scalar_spec(spec: SpecLike) -> InvariantSpec:
    spec = parse_invariant(spec) if isinstance(spec, str) else spec
    if spec.arity != 1:
        raise ValueError(f"{spec.name} is not a scalar invariant")
    return spec


def family_invariant(spec: SpecLike, family: OperatorFamily) -> Rat:
    """The invariant of A_y with y held as a constant parameter; rational in x and y.

    Raises:
        DegenerateSymbolError: The frozen symbol is not regular for generic y
    """
    return InvariantEvaluator(family).scalar(_scalar_spec(spec))


def pair_invariant(spec: SpecLike, family: OperatorFamily, order: int) -> PairInvariant:
    """The invariant of A_f for a generic f, written in the jet coordinates of f.

    Raises:
        JetOrderError: The invariant needs jets of f above ``order``
        DegenerateSymbolError: The symbol of A_f is not regular
    """
    spec = _scalar_spec(spec)
    jets = JetVars(family.dim, order)
    evaluator = InvariantEvaluator(rebase(family, pair_coords(family.dim, family.coords.names)))
    value = evaluator.scalar(spec)
    jets.check_order(value, spec.name)
    logger.debug("pair invariant %s uses jets %s", spec.name, jets.occurring(value))
    return PairInvariant(spec.name, value, jets)


def nabla(p: PairInvariant) -> PairInvariant:
    """d/dy acting on the coefficient data with the jets of f fixed."""
    value = VerticalDerivation(p.jets.dim)(p.expr)
    return PairInvariant(f"NABLA:{p.name}", value, p.jets)


def nabla_chain(seed: PairInvariant, n: int) -> List[PairInvariant]:
    """[I_0, ..., I_n] with I_{k+1} = nabla(I_k)."""
    chain = [seed]
    for _ in range(n):
        chain.append(nabla(chain[-1]))
    return chain
