"""
Jet variables of a function f(x), coefficient-jet symbols of generic
families, and the derivations acting on them.

Naming::

    f_1, f_2, ...            jets of f in dimension 1 (f', f'', ...)
    f_10, f_01, f_20, ...    jets of f in dimension 2 (multi-index digits)
    a3, a2, a1, a0           generic coefficients in dimension 1
    a30, a21, ..., a00       generic coefficients in dimension 2
    a3_x, a3_xy, a30_12y     coefficient jets: one letter per derivative

In dimension 1 the derivative letters are ``x`` and ``y``; in dimension 2
they are ``1``, ``2`` and ``y``.
"""
import logging
import re
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from diffop import multiindex as mi
from diffop.multiindex import MultiIndex
from diffop.operator import MAX_ORDER, Coords, OperatorFamily, plain_coords
from symexpr import Derivation, Rat
from utils.constants import COEFF_PREFIX, FIBER_VAR, JET_PREFIX
from utils.errors import JetOrderError

logger = logging.getLogger(__name__)

_COEFF_RE = re.compile(rf"^{COEFF_PREFIX}(\d+)(?:_([12xy]+))?$")
_JET_RE = re.compile(rf"^{JET_PREFIX}_(\d+)$")


def _letters(dim: int) -> Tuple[str, ...]:
    return ("x",) if dim == 1 else ("1", "2")


@dataclass(frozen=True)
class CoeffJet:
    """d^sigma_x d^ny_y of the generic coefficient a_alpha."""

    alpha: MultiIndex
    sigma: MultiIndex
    ny: int = 0

    @property
    def dim(self) -> int:
        return len(self.alpha)

    @property
    def name(self) -> str:
        base = COEFF_PREFIX + "".join(map(str, self.alpha))
        letters = "".join(l * s for l, s in zip(_letters(self.dim), self.sigma)) + "y" * self.ny
        return f"{base}_{letters}" if letters else base

    def shifted(self, i: Optional[int] = None) -> "CoeffJet":
        """Jet with one more x_i derivative, or one more y derivative when i is None."""
        if i is None:
            return CoeffJet(self.alpha, self.sigma, self.ny + 1)
        return CoeffJet(self.alpha, mi.add(self.sigma, mi.unit(self.dim, i)), self.ny)

    @property
    def order(self) -> int:
        return mi.order(self.sigma) + self.ny


def parse_coeff_jet(name: str, dim: int) -> Optional[CoeffJet]:
    match = _COEFF_RE.match(name)
    if not match:
        return None
    digits, letters = match.group(1), match.group(2) or ""
    if len(digits) != dim or sum(map(int, digits)) > MAX_ORDER:
        return None
    allowed = set(_letters(dim)) | {"y"}
    if any(c not in allowed for c in letters):
        return None
    sigma = tuple(letters.count(l) for l in _letters(dim))
    return CoeffJet(tuple(int(d) for d in digits), sigma, letters.count("y"))


class JetVars:
    """Jet coordinates f_sigma of a function of ``dim`` variables, orders 1..order."""

    def __init__(self, dim: int, order: int):
        if dim not in (1, 2):
            raise ValueError(f"unsupported dimension {dim}")
        if order < 1:
            raise ValueError("jet order must be at least 1")
        self.dim = dim
        self.order = order
        self.fiber = FIBER_VAR

    @staticmethod
    def name_of(sigma: Sequence[int]) -> str:
        return f"{JET_PREFIX}_{''.join(map(str, sigma))}"

    def parse(self, name: str) -> Optional[MultiIndex]:
        match = _JET_RE.match(name)
        if not match or len(match.group(1)) != self.dim:
            return None
        return tuple(int(c) for c in match.group(1))

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(
            self.name_of(sigma) for k in range(1, self.order + 1) for sigma in mi.of_order(self.dim, k)
        )

    def __len__(self) -> int:
        """dim pi_{l,0}: the number of jet coordinates of orders 1..l."""
        return len(self.names)

    def occurring(self, e: Rat) -> Tuple[str, ...]:
        """Jet variables of any order that occur in ``e``, in jet order."""
        found = [n for n in e.variables() if self.parse(n) is not None]
        return tuple(sorted(found, key=lambda n: (mi.order(self.parse(n)), tuple(-c for c in self.parse(n)))))

    def check_order(self, e: Rat, what: str = "expression") -> Rat:
        for name in self.occurring(e):
            if mi.order(self.parse(name)) > self.order:
                raise JetOrderError(f"{what} needs jet {name}, above declared order {self.order}")
        return e

    def var(self, sigma: Sequence[int]) -> Rat:
        return Rat.var(self.name_of(sigma))

    def __repr__(self) -> str:
        return f"JetVars(dim={self.dim}, order={self.order})"


def _unit_rat(i: int, j: int) -> Optional[Rat]:
    return Rat.const(1) if i == j else None


class JetDerivation(Derivation):
    """D_i on functions of (x, y, f-jets, coefficient jets).

    ``mode`` selects the action:

    * ``"pair"``: total derivative along the graph y = f(x); D_i y = f_{e_i},
      D_i f_sigma = f_{sigma + e_i}, D_i a = a_{x_i} + f_{e_i} a_y.
    * ``"frozen"``: y is a constant parameter; D_i a = a_{x_i}.
    """

    def __init__(self, dim: int, i: int, mode: str = "pair", names: Optional[Sequence[str]] = None):
        if mode not in ("pair", "frozen"):
            raise ValueError(f"unknown derivation mode {mode!r}")
        self.dim = dim
        self.i = i
        self.mode = mode
        self._base = tuple(names) if names is not None else plain_coords(dim).names
        self._jets = JetVars(dim, 1)
        super().__init__(self._rule)

    def _rule(self, name: str) -> Optional[Rat]:
        if name in self._base:
            return _unit_rat(self._base.index(name), self.i)
        up = mi.unit(self.dim, self.i)
        coeff = parse_coeff_jet(name, self.dim)
        if self.mode == "frozen":
            return Rat.var(coeff.shifted(self.i).name) if coeff else None
        if name == FIBER_VAR:
            return self._jets.var(up)
        sigma = self._jets.parse(name)
        if sigma is not None:
            return self._jets.var(mi.add(sigma, up))
        if coeff:
            slope = self._jets.var(up)
            return Rat.var(coeff.shifted(self.i).name) + slope * Rat.var(coeff.shifted().name)
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, JetDerivation):
            return NotImplemented
        return (self.i, self.mode, self._base) == (other.i, other.mode, other._base)

    def __hash__(self) -> int:
        return hash((self.i, self.mode, self._base))


class VerticalDerivation(Derivation):
    """d/dy on coefficient functions with x and the f-jets held fixed."""

    def __init__(self, dim: int):
        self.dim = dim
        super().__init__(self._rule)

    def _rule(self, name: str) -> Optional[Rat]:
        if name == FIBER_VAR:
            return Rat.const(1)
        coeff = parse_coeff_jet(name, self.dim)
        return Rat.var(coeff.shifted().name) if coeff else None


def pair_coords(dim: int, names: Optional[Sequence[str]] = None) -> Coords:
    names = tuple(names) if names is not None else plain_coords(dim).names
    return Coords(names, [JetDerivation(dim, i, "pair", names) for i in range(dim)])


def frozen_coords(dim: int, names: Optional[Sequence[str]] = None) -> Coords:
    names = tuple(names) if names is not None else plain_coords(dim).names
    return Coords(names, [JetDerivation(dim, i, "frozen", names) for i in range(dim)])


def generic_family(dim: int, order: int = MAX_ORDER, zero: Sequence[Sequence[int]] = ()) -> OperatorFamily:
    """The family whose coefficients are free symbols a_alpha(x, y).

    ``zero`` lists multi-indices whose coefficient is set to 0.
    """
    coords = frozen_coords(dim)
    skip = {tuple(a) for a in zero}
    coeffs = {
        alpha: Rat.var(CoeffJet(alpha, mi.zero(dim)).name)
        for alpha in mi.up_to(dim, order)
        if alpha not in skip
    }
    return OperatorFamily(coords, coeffs)


def coefficient_jets(e: Rat, dim: int) -> List[CoeffJet]:
    return [c for c in (parse_coeff_jet(n, dim) for n in e.variables()) if c is not None]


def specialize(e: Rat, family: OperatorFamily) -> Rat:
    """Replace coefficient-jet symbols by the derivatives of a concrete family's coefficients."""
    dim = family.dim
    fiber = family.fiber
    names = family.coords.names
    bindings: Dict[str, Rat] = {}
    for cj in coefficient_jets(e, dim):
        value = family.coefficient(cj.alpha)
        for i, s in enumerate(cj.sigma):
            for _ in range(s):
                value = value.diff(names[i])
        for _ in range(cj.ny):
            value = value.diff(fiber)
        bindings[cj.name] = value
    return e.subs(bindings) if bindings else e


def specialize_jets(e: Rat, f: Rat, coords: Coords, jets: JetVars = None) -> Rat:
    """Substitute y = f(x) and f_sigma = d^sigma f."""
    jets = jets if jets is not None else JetVars(coords.dim, 1)
    bindings: Dict[str, Rat] = {FIBER_VAR: f}
    top = max((mi.order(jets.parse(n)) for n in jets.occurring(e)), default=0)
    table = coords.jet(f, top) if top else {}
    for name in jets.occurring(e):
        bindings[name] = table[jets.parse(name)]
    return e.subs(bindings)


def rebase(family: OperatorFamily, coords: Coords) -> OperatorFamily:
    """Same coefficients, different coordinate derivations."""
    return OperatorFamily(coords, family.coeffs, family.fiber)


def jet_bindings(values: Mapping[MultiIndex, Rat]) -> Dict[str, Rat]:
    return {JetVars.name_of(sigma): v for sigma, v in values.items() if mi.order(sigma) > 0}
