"""Derivations of the rational function field."""
from typing import Callable, Dict, Iterable, Mapping, Optional

from symexpr.rational import Rat


class Derivation:
    """A derivation D acting on ``Rat`` values.

    ``image(name)`` returns D(name) or None when D kills the variable.
    Images are memoized, so rules may mint new variables lazily (jet
    coordinates of ever higher order).
    """

    def __init__(self, rule: Callable[[str], Optional[Rat]]):
        self._rule = rule
        self._images: Dict[str, Optional[Rat]] = {}

    def image(self, name: str) -> Optional[Rat]:
        if name not in self._images:
            self._images[name] = self._rule(name)
        return self._images[name]

    def __call__(self, e: Rat) -> Rat:
        rules = {}
        for name in e.variables():
            image = self.image(name)
            if image is not None and image:
                rules[name] = image
        if not rules:
            return e.zero()
        return e.derive(rules)

    def iterate(self, e: Rat, times: int) -> Rat:
        for _ in range(times):
            e = self(e)
        return e


class PartialDerivation(Derivation):
    """The partial derivative with respect to one variable."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(lambda v: Rat.const(1) if v == name else None)

    def __call__(self, e: Rat) -> Rat:
        return e.diff(self.name)


def total_derivation(rules: Mapping[str, Rat]) -> Derivation:
    """Derivation with finitely many explicit images; other variables are constants."""
    rules = dict(rules)
    return Derivation(rules.get)


def partials(names: Iterable[str]):
    return [PartialDerivation(n) for n in names]
