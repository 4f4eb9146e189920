from descent.jets import (
    CoeffJet,
    JetVars,
    JetDerivation,
    VerticalDerivation,
    parse_coeff_jet,
    pair_coords,
    frozen_coords,
    generic_family,
    specialize,
    specialize_jets,
)
from descent.pairs import PairInvariant, family_invariant, pair_invariant, nabla, nabla_chain
from descent.descend import DescentResult, descend, NO_RELATIONS, RELATIONS
from descent.oracle import OracleItem, OracleReport, oracle_1d

__all__ = [
    "CoeffJet",
    "JetVars",
    "JetDerivation",
    "VerticalDerivation",
    "parse_coeff_jet",
    "pair_coords",
    "frozen_coords",
    "generic_family",
    "specialize",
    "specialize_jets",
    "PairInvariant",
    "family_invariant",
    "pair_invariant",
    "nabla",
    "nabla_chain",
    "DescentResult",
    "descend",
    "NO_RELATIONS",
    "RELATIONS",
    "OracleItem",
    "OracleReport",
    "oracle_1d",
]
