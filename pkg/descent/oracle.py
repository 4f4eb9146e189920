"""
Comparison of the closed formulas printed for the one-dimensional case with
the values the pipeline computes.

Printed formulas are evaluated verbatim. Where the pairing normalization
introduces a constant factor (2! for the quadratic invariant, 3! for the
cubic one) the printed value is scaled before comparing. Differences are
reported and logged, never raised.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from descent.jets import JetDerivation, JetVars, VerticalDerivation
from descent.pairs import pair_invariant
from diffop.operator import LinDiffOp, OperatorFamily
from quantize.battery import InvariantEvaluator
from quantize.quantization import quantize
from symexpr import Rat

logger = logging.getLogger(__name__)

GROUPS = ("Gamma", "sigmas", "invariants", "pairs")


@dataclass
class OracleItem:
    name: str
    printed: Rat
    computed: Rat
    factor: int = 1

    @property
    def equal(self) -> bool:
        return self.computed == self.printed * self.factor

    def as_dict(self) -> Dict[str, object]:
        return {
            "item": self.name,
            "printed": self.printed.to_text(),
            "computed": self.computed.to_text(),
            "factor": self.factor,
            "equal": self.equal,
        }


@dataclass
class OracleReport:
    items: List[OracleItem] = field(default_factory=list)

    @property
    def discrepancies(self) -> List[OracleItem]:
        return [item for item in self.items if not item.equal]

    def item(self, name: str) -> OracleItem:
        for entry in self.items:
            if entry.name == name:
                return entry
        raise KeyError(name)

    def as_dict(self) -> Dict[str, object]:
        return {
            "items": [item.as_dict() for item in self.items],
            "discrepancies": [item.name for item in self.discrepancies],
        }


def _frozen_items(A: LinDiffOp, groups: Sequence[str]) -> List[OracleItem]:
    coords = A.coords
    d = lambda e: coords.d(e, 0)
    a3, a2, a1, a0 = (A.coefficient((k,)) for k in (3, 2, 1, 0))
    a3p = d(a3)
    a3pp = d(a3p)
    a0p = d(a0)

    printed_gamma = -a3p / (3 * a3)
    printed_hat3 = (2 * a3p ** 2 * a3 + 3 * a3p - a3pp * a3) / (9 * a3)
    printed_sigma2 = a2 - a3p
    printed_sigma1 = a1 - printed_hat3 - printed_sigma2 * a3p / (3 * a3)

    evaluator = InvariantEvaluator(A)
    ts = evaluator.total_symbol
    conn = ts.connection
    items: List[OracleItem] = []
    if "Gamma" in groups:
        items.append(OracleItem("Gamma", printed_gamma, conn[0, 0, 0]))
    if "sigmas" in groups:
        hat3 = quantize(ts.sigma3, conn)
        hat2 = quantize(ts.sigma2, conn)
        items.extend([
            OracleItem("sigma2", printed_sigma2, ts.sigma2.component((2,))),
            OracleItem("sigma1", printed_sigma1, ts.sigma1.component((1,))),
            OracleItem("sigma0", a0, ts.sigma0),
            OracleItem("sigma3hat[2]", a3p, hat3.coefficient((2,))),
            OracleItem("sigma3hat[1]", printed_hat3, hat3.coefficient((1,))),
            OracleItem("sigma2hat[1]", printed_sigma2 * a3p / (3 * a3), hat2.coefficient((1,))),
        ])
    if "invariants" in groups:
        items.extend([
            OracleItem("I0", a0, evaluator.scalar("I0")),
            OracleItem("I1", printed_sigma1 * a0p, evaluator.scalar("DA1")),
            OracleItem("I2", printed_sigma2 * a0p ** 2, evaluator.scalar("DA2"), 2),
            OracleItem("I3", a3 * a0p ** 3, evaluator.scalar("DA3"), 6),
        ])
    return items


def _pair_items(family: OperatorFamily) -> List[OracleItem]:
    px = JetDerivation(1, 0, "frozen", family.coords.names)
    py = VerticalDerivation(1)
    jets = JetVars(1, 2)
    f1, f2 = jets.var((1,)), jets.var((2,))
    a3, a2, a1, a0 = (family.coefficient((k,)) for k in (3, 2, 1, 0))
    a3x, a3y = px(a3), py(a3)
    a0x, a0y = px(a0), py(a0)
    slope3 = a3x + a3y * f1
    slope0 = a0x + a0y * f1
    second3 = px(a3x) + 2 * py(a3x) * f1 + py(a3y) * f1 ** 2 + (a3x + a3y) * f2

    printed_i1 = (
        a1
        - (2 * slope3 ** 2 * a3 + 3 * slope3) / (9 * a3)
        - second3 * a3 / (9 * a3)
        - (a2 - slope3) * slope3 / (3 * a3)
    ) * slope0
    printed_i2 = (a2 - a3x - a3y * f1) * slope0 ** 2
    printed_i3 = a3 * slope0 ** 3
    return [
        OracleItem("pair I0", a0, pair_invariant("I0", family, 2).expr),
        OracleItem("pair I1", printed_i1, pair_invariant("DA1", family, 2).expr),
        OracleItem("pair I2", printed_i2, pair_invariant("DA2", family, 2).expr, 2),
        OracleItem("pair I3", printed_i3, pair_invariant("DA3", family, 2).expr, 6),
    ]


def oracle_1d(A: LinDiffOp, groups: Optional[Sequence[str]] = None) -> OracleReport:
    """Printed-versus-computed report for a one-dimensional operator or family.

    ``groups`` selects among ``Gamma``, ``sigmas``, ``invariants`` and
    ``pairs`` (the related-pair formulas, families only); all by default.
    """
    if A.dim != 1:
        raise ValueError("the closed-form comparison is one-dimensional")
    groups = tuple(groups) if groups else GROUPS
    unknown = [g for g in groups if g not in GROUPS]
    if unknown:
        raise ValueError(f"unknown oracle groups {unknown}")
    report = OracleReport(_frozen_items(A, groups))
    if "pairs" in groups and isinstance(A, OperatorFamily):
        report.items.extend(_pair_items(A))
    for item in report.discrepancies:
        logger.warning("closed form for %s differs: printed %s, computed %s (factor %d)",
                       item.name, item.printed.to_text(), item.computed.to_text(), item.factor)
    return report
