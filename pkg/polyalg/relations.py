"""Ideals of polynomial relations among rational maps."""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from polyalg.groebner import buchberger, elimination_ideal
from polyalg.orders import MonomialOrder, coefficients_in
from symexpr import Rat, varset

logger = logging.getLogger(__name__)

SATURATION_VAR = "s_"


@dataclass
class RelationIdeal:
    """Relations among maps ``X_i = maps[i]``.

    ``generators`` are polynomial in ``x_names`` with coefficients rational in
    ``params``; they form the reduced lexicographic basis of the ideal
    (monic over QQ(params)).
    """

    x_names: Tuple[str, ...]
    params: Tuple[str, ...]
    maps: List[Rat] = field(repr=False)
    generators: List[Rat] = field(default_factory=list)

    def is_zero(self) -> bool:
        return not self.generators

    def coefficients(self, generator: Rat) -> Dict[Tuple[int, ...], Rat]:
        return coefficients_in(generator, self.x_names)

    def verify(self) -> bool:
        """True iff every generator vanishes after substituting the maps."""
        bindings = dict(zip(self.x_names, self.maps))
        return all(g.subs(bindings).is_zero() for g in self.generators)


def relations_ideal(
    maps: Sequence[Rat],
    work: Sequence[str],
    params: Sequence[str] = (),
    x_names: Sequence[str] = None,
) -> RelationIdeal:
    """Ideal of polynomial relations among ``maps`` (rational in work + params).

    Forms ``X_i*den_i - num_i`` and ``s*prod(den_i) - 1`` and eliminates
    ``s`` and the work variables from a lexicographic basis computed over
    QQ(params).
    """
    maps = list(maps)
    x_names = tuple(x_names) if x_names is not None else tuple(f"X{i}" for i in range(len(maps)))
    if len(x_names) != len(maps):
        raise ValueError("one X variable per map is required")
    params = tuple(params)
    work = tuple(w for w in work if w not in params)
    drop = (SATURATION_VAR,) + work
    order = MonomialOrder.lex(*(drop + x_names), params=params)

    names = drop + x_names + params
    vs = varset(names)
    gens = []
    denominator_product = Rat.const(1, vs)
    for x, m in zip(x_names, maps):
        numerator, denominator = m.numerator(), m.denominator()
        gens.append(Rat.var(x, vs) * denominator - numerator)
        denominator_product = denominator_product * denominator
    gens.append(Rat.var(SATURATION_VAR, vs) * denominator_product - 1)

    logger.debug("relations_ideal: %d maps, eliminating %s over parameters %s",
                 len(maps), work, params)
    gb = buchberger(gens, order)
    kept = elimination_ideal(gb, drop)
    kept_order = MonomialOrder.lex(*x_names, params=params)
    generators = [kept_order.from_poly(kept_order.to_poly(g)) for g in kept]
    return RelationIdeal(x_names, params, maps, generators)
