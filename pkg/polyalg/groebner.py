"""
Division, reduced Groebner bases and elimination.

Bases are computed with sympy's Buchberger implementation (normal selection
strategy with Gebauer-Moeller pair criteria), which returns the reduced,
monic basis sorted by leading monomial, so the output depends only on the
ideal and the order.
"""
import logging
from dataclasses import dataclass, field
from typing import List, Sequence

from sympy.polys.groebnertools import groebner

from polyalg.orders import MonomialOrder
from symexpr import Rat

logger = logging.getLogger(__name__)


@dataclass
class GroebnerBasis:
    """Reduced Groebner basis of an ideal under ``order``."""

    order: MonomialOrder
    polys: list = field(repr=False)

    @property
    def generators(self) -> List[Rat]:
        return [self.order.from_poly(p) for p in self.polys]

    def is_unit(self) -> bool:
        return len(self.polys) == 1 and self.polys[0].is_ground and bool(self.polys[0])

    def reduce(self, p: Rat) -> Rat:
        return normal_form(p, self.generators, self.order)

    def contains(self, p: Rat) -> bool:
        return self.reduce(p).is_zero()

    def __len__(self) -> int:
        return len(self.polys)

    def __iter__(self):
        return iter(self.generators)


def normal_form(p: Rat, basis: Sequence[Rat], order: MonomialOrder) -> Rat:
    """Remainder of ``p`` on division by ``basis``.

    The first basis element (in basis order) whose leading monomial divides
    the current leading term is used.
    """
    if not basis:
        raise ValueError("normal_form needs a nonempty basis")
    ring = order.ring
    divisors = [order.to_poly(b, ring) for b in basis]
    divisors = [d for d in divisors if d]
    if not divisors:
        return p
    remainder = order.to_poly(p, ring).rem(divisors)
    return order.from_poly(remainder)


def buchberger(gens: Sequence[Rat], order: MonomialOrder) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Args:
        gens: Generators, polynomial in ``order.priority``
        order: Monomial order (and parameter symbols of the coefficient field)

    Returns:
        The reduced basis; ``{1}`` when the ideal is the whole ring
    """
    ring = order.ring
    polys = [order.to_poly(g, ring) for g in gens]
    polys = [p for p in polys if p]
    if not polys:
        return GroebnerBasis(order, [])
    logger.debug("buchberger: %d generators in %d variables (%s)",
                 len(polys), len(order.priority), order.kind)
    basis = groebner(polys, ring, method="buchberger")
    logger.debug("buchberger: reduced basis of size %d", len(basis))
    return GroebnerBasis(order, basis)


def elimination_ideal(gb: GroebnerBasis, drop: Sequence[str]) -> List[Rat]:
    """Generators of the ideal intersected with the subring without ``drop``.

    ``gb`` must be a lexicographic basis with the ``drop`` block highest.
    """
    order = gb.order
    if order.kind != "lex":
        raise ValueError("elimination needs a lexicographic basis")
    drop = set(drop)
    block = order.priority[: len(drop)]
    if set(block) != drop:
        raise ValueError(f"dropped variables {sorted(drop)} are not the highest block of {order.priority}")
    kept = len(drop)
    result = []
    for poly in gb.polys:
        if all(not any(m[:kept]) for m in poly.itermonoms()):
            result.append(order.from_poly(poly))
    return result
