"""Monomial orders and conversion between ``Rat`` and ring polynomials."""
from dataclasses import dataclass
from typing import Dict, Sequence, Tuple

from sympy.polys.domains import QQ, FractionField
from sympy.polys.fields import FracField
from sympy.polys.orderings import grlex, lex
from sympy.polys.rings import PolyRing

from symexpr import Rat, varset

_KINDS = {"lex": lex, "grlex": grlex}


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order on ``priority`` (highest variable first).

    ``params`` are symbols adjoined to the coefficient field: polynomials
    live in QQ(params)[priority]. They never take part in the order.
    """

    kind: str
    priority: Tuple[str, ...]
    params: Tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if set(self.priority) & set(self.params):
            raise ValueError("ring variables and parameters overlap")

    @classmethod
    def lex(cls, *priority: str, params: Sequence[str] = ()) -> "MonomialOrder":
        return cls("lex", tuple(priority), tuple(params))

    @classmethod
    def grlex(cls, *priority: str, params: Sequence[str] = ()) -> "MonomialOrder":
        return cls("grlex", tuple(priority), tuple(params))

    @property
    def param_field(self):
        if not self.params:
            return None
        return FracField(list(self.params), QQ, grlex)

    @property
    def ring(self) -> PolyRing:
        field = self.param_field
        domain = QQ if field is None else FractionField(field)
        return PolyRing(list(self.priority), domain, _KINDS[self.kind])

    def to_poly(self, e: Rat, ring: PolyRing = None):
        """Convert ``e`` (polynomial in ``priority``, rational in ``params``)."""
        ring = ring if ring is not None else self.ring
        vs = e.vars
        extra = [n for n in e.variables() if n not in self.priority and n not in self.params]
        if extra:
            raise ValueError(f"{e} uses variables {extra} outside {self.priority + self.params}")
        if any(e.den.degree(vs.gen(n)) > 0 for n in self.priority if n in vs):
            raise ValueError(f"{e} is not a polynomial in {self.priority}")
        main = [(vs.index(n), j) for j, n in enumerate(self.priority) if n in vs]
        par = [(vs.index(n), j) for j, n in enumerate(self.params) if n in vs]
        field = ring.domain.field if self.params else None

        def split(monom):
            m = [0] * len(self.priority)
            for i, j in main:
                m[j] = monom[i]
            p = [0] * len(self.params)
            for i, j in par:
                p[j] = monom[i]
            return tuple(m), tuple(p)

        if field is None:
            scale = e.den.LC
            terms: Dict[tuple, object] = {}
            for monom, coeff in e.num.iterterms():
                m, _ = split(monom)
                terms[m] = terms.get(m, QQ.zero) + coeff / scale
            return ring.from_dict({m: c for m, c in terms.items() if c})

        pring = field.ring
        den = pring.zero
        for monom, coeff in e.den.iterterms():
            den += pring.term_new(split(monom)[1], coeff)
        grouped: Dict[tuple, object] = {}
        for monom, coeff in e.num.iterterms():
            m, p = split(monom)
            grouped[m] = grouped.get(m, pring.zero) + pring.term_new(p, coeff)
        return ring.from_dict({m: field.new(c, den) for m, c in grouped.items() if c})

    def from_poly(self, poly) -> Rat:
        """Convert a ring polynomial back to a ``Rat`` over priority + params."""
        target = varset(self.priority + self.params)
        if not self.params:
            tring = target.ring
            return Rat(target, tring.from_dict(dict(poly.iterterms())) if poly else tring.zero)
        pvars = varset(self.params)
        pad = (0,) * len(self.params)
        total = Rat.const(0, target)
        for monom, coeff in poly.iterterms():
            c = Rat(pvars, coeff.numer.set_ring(pvars.ring), coeff.denom.set_ring(pvars.ring))
            mono = Rat(target, target.ring.term_new(monom + pad, QQ.one))
            total = total + c * mono
        return total

    def leading_monomial(self, e: Rat) -> Tuple[int, ...]:
        return self.to_poly(e).LM


def coefficients_in(e: Rat, names: Sequence[str]) -> Dict[Tuple[int, ...], Rat]:
    """Coefficients of ``e`` as a polynomial in ``names``.

    Every other variable is treated as part of the coefficient field.
    """
    vs = e.vars
    if any(e.den.degree(vs.gen(n)) > 0 for n in names if n in vs):
        raise ValueError(f"{e} is not a polynomial in {tuple(names)}")
    idx = [vs.index(n) if n in vs else None for n in names]
    grouped: Dict[Tuple[int, ...], object] = {}
    for monom, coeff in e.num.iterterms():
        key = tuple(monom[i] if i is not None else 0 for i in idx)
        rest = list(monom)
        for i in idx:
            if i is not None:
                rest[i] = 0
        grouped[key] = grouped.get(key, vs.ring.zero) + vs.ring.term_new(tuple(rest), coeff)
    den = Rat(vs, e.den)
    return {key: Rat(vs, poly) / den for key, poly in grouped.items() if poly}
