"""Ordered variable sets and the sympy polynomial rings behind them."""
from functools import lru_cache
from typing import Iterable, Iterator, Tuple

from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyRing


class VarSet:
    """An ordered tuple of variable names with its polynomial ring over QQ.

    The order is fixed for the lifetime of the object; the ring uses
    graded-lexicographic order on it, which is what the canonical
    denominator normalization of ``Rat`` refers to. Build instances
    with :func:`varset` so that equal name tuples share one ring.
    """

    __slots__ = ("names", "ring", "_index")

    def __init__(self, names: Tuple[str, ...]):
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        self.names = names
        self.ring = PolyRing(list(names), QQ, grlex) if names else PolyRing("", QQ, grlex)
        self._index = {name: i for i, name in enumerate(names)}

    def index(self, name: str) -> int:
        return self._index[name]

    def gen(self, name: str):
        return self.ring.gens[self._index[name]]

    def union(self, other: "VarSet") -> "VarSet":
        """Names of ``self`` followed by the new names of ``other``."""
        if other is self:
            return self
        extra = [n for n in other.names if n not in self._index]
        if not extra:
            return self
        return varset(self.names + tuple(extra))

    def extend(self, *names: str) -> "VarSet":
        extra = [n for n in names if n not in self._index]
        if not extra:
            return self
        return varset(self.names + tuple(dict.fromkeys(extra)))

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __len__(self) -> int:
        return len(self.names)

    def __repr__(self) -> str:
        return f"VarSet({', '.join(self.names)})"


@lru_cache(maxsize=None)
def _cached(names: Tuple[str, ...]) -> VarSet:
    return VarSet(names)


def varset(names: Iterable[str]) -> VarSet:
    """Return the shared VarSet for ``names`` (order significant)."""
    return _cached(tuple(names))
