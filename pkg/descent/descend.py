"""
Descent: invariants of weakly nonlinear operators from the relations among
pair invariants.

The pair invariants I_0, ..., I_N are rational in the f-jets with
coefficients in the field generated by the coefficient data. Eliminating
the jets leaves polynomial relations in X_0, ..., X_N; the coefficients of
the reduced (monic) basis are invariants of the weakly nonlinear operator.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

from descent.pairs import PairInvariant, nabla_chain
from polyalg.relations import RelationIdeal, relations_ideal
from symexpr import Rat

logger = logging.getLogger(__name__)

NO_RELATIONS = "no_relations"
RELATIONS = "relations"


@dataclass
class DescentResult:
    seeds: List[PairInvariant]
    x_names: Tuple[str, ...]
    work: Tuple[str, ...]
    params: Tuple[str, ...]
    ideal: RelationIdeal = field(repr=False)

    @property
    def status(self) -> str:
        return NO_RELATIONS if self.ideal.is_zero() else RELATIONS

    @property
    def relations(self) -> List[Rat]:
        return list(self.ideal.generators)

    def coefficients(self) -> List[List[Tuple[Tuple[int, ...], Rat]]]:
        """Per relation, (exponent, coefficient) pairs in decreasing lex order of exponents."""
        result = []
        for g in self.ideal.generators:
            coeffs = self.ideal.coefficients(g)
            result.append(sorted(coeffs.items(), key=lambda item: item[0], reverse=True))
        return result

    @property
    def invariants(self) -> List[Rat]:
        """Distinct non-constant normalized coefficients, in relation order."""
        found: List[Rat] = []
        for row in self.coefficients():
            for _, c in row:
                if not c.is_constant() and all(c != seen for seen in found):
                    found.append(c)
        return found

    def verify(self) -> bool:
        return self.ideal.verify()


def descend(
    seeds: Union[PairInvariant, Sequence[PairInvariant]],
    n: Optional[int] = None,
    eliminate: Optional[Sequence[str]] = None,
    x_names: Optional[Sequence[str]] = None,
) -> DescentResult:
    """Relations among seed pair invariants and their normalized coefficients.

    Args:
        seeds: Either the list I_0, ..., I_N, or a single seed whose nabla
            chain of length ``n`` (default: the number of jet coordinates)
            is generated
        n: Chain length for a single seed
        eliminate: Jet variables to eliminate; defaults to every occurring one
        x_names: Names of the relation variables, X0, X1, ... by default

    Returns:
        The descent result; its status is ``no_relations`` when the relation
        ideal is zero
    """
    if isinstance(seeds, PairInvariant):
        count = n if n is not None else len(seeds.jets)
        chain = nabla_chain(seeds, count)
    else:
        chain = list(seeds)
        if n is not None and n + 1 != len(chain):
            raise ValueError(f"{len(chain)} seeds given but n = {n}")
    if not chain:
        raise ValueError("descend needs at least one seed")

    maps = [p.expr for p in chain]
    if eliminate is None:
        occurring: Dict[str, None] = {}
        for p in chain:
            occurring.update(dict.fromkeys(p.jet_variables))
        work = tuple(occurring)
    else:
        work = tuple(eliminate)

    params: Dict[str, None] = {}
    for m in maps:
        params.update(dict.fromkeys(v for v in m.variables() if v not in work))
    params_t = tuple(params)

    names = tuple(x_names) if x_names is not None else tuple(f"X{i}" for i in range(len(maps)))
    logger.debug("descend: %d maps, eliminating %s", len(maps), work)
    ideal = relations_ideal(maps, work, params_t, names)
    if ideal.is_zero():
        logger.info("descend: no relations among %s", ", ".join(p.name for p in chain))
    return DescentResult(chain, names, work, params_t, ideal)
