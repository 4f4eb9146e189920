"""
Linear differential operators of order at most 3.

Operators are stored in the plain multi-index convention
``A = sum_alpha c_alpha d^alpha`` with no hidden factorials.
"""
import logging
from typing import Callable, Dict, Iterable, Mapping, Optional, Sequence

from diffop import multiindex as mi
from diffop.multiindex import MultiIndex
from symexpr import Derivation, PartialDerivation, Rat, varset
from utils.constants import FIBER_VAR
from utils.formatters import format_multi_index
from utils.errors import PoleError

logger = logging.getLogger(__name__)

MAX_ORDER = 3


class Coords:
    """Base coordinates together with the derivations d/dx_i acting on coefficients.

    Plain coordinates use partial derivatives. Jet computations supply total
    derivations instead, so everything built on ``Coords.d`` (operator
    application, Wagner solve, quantization) works verbatim on jets.
    """

    def __init__(self, names: Sequence[str], derivations: Optional[Sequence[Derivation]] = None):
        self.names = tuple(names)
        if derivations is not None and len(derivations) != len(self.names):
            raise ValueError("one derivation per coordinate is required")
        self.plain = derivations is None
        self.derivations = tuple(derivations) if derivations is not None else tuple(
            PartialDerivation(n) for n in self.names
        )
        self.vars = varset(self.names)

    @property
    def dim(self) -> int:
        return len(self.names)

    def d(self, e: Rat, i: int) -> Rat:
        return self.derivations[i](e)

    def derivative(self, e: Rat, alpha: Sequence[int]) -> Rat:
        for i, a in enumerate(alpha):
            for _ in range(a):
                e = self.d(e, i)
        return e

    def jet(self, e: Rat, k: int) -> Dict[MultiIndex, Rat]:
        """All derivatives d^alpha e with |alpha| <= k."""
        table: Dict[MultiIndex, Rat] = {mi.zero(self.dim): e}
        for j in range(1, k + 1):
            for alpha in mi.of_order(self.dim, j):
                i, rest = mi.split_first(alpha)
                table[alpha] = self.d(table[rest], i)
        return table

    def zero(self) -> Rat:
        return Rat.const(0, self.vars)

    def one(self) -> Rat:
        return Rat.const(1, self.vars)

    def var(self, i: int) -> Rat:
        return Rat.var(self.names[i], self.vars)

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Coords):
            return NotImplemented
        if self.names != other.names:
            return False
        return (self.plain and other.plain) or self.derivations == other.derivations

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        kind = "partial" if self.plain else "total"
        return f"Coords({', '.join(self.names)}; {kind})"


def plain_coords(dim: int) -> Coords:
    """x in dim 1, (x1, x2) in dim 2."""
    if dim == 1:
        return Coords(("x",))
    return Coords(tuple(f"x{i + 1}" for i in range(dim)))


class LinDiffOp:
    """A = sum_alpha c_alpha d^alpha over ``coords``."""

    def __init__(self, coords: Coords, coeffs: Mapping[Sequence[int], Rat]):
        self.coords = coords
        clean: Dict[MultiIndex, Rat] = {}
        for alpha, c in coeffs.items():
            alpha = tuple(alpha)
            if len(alpha) != coords.dim:
                raise ValueError(f"multi-index {alpha} does not fit dimension {coords.dim}")
            if sum(alpha) > MAX_ORDER:
                raise ValueError(f"multi-index {alpha} has order above {MAX_ORDER}")
            if not isinstance(c, Rat):
                c = Rat.const(c, coords.vars)
            if c:
                clean[alpha] = c
        self.coeffs = clean

    def _new(self, coeffs: Mapping[MultiIndex, Rat]) -> "LinDiffOp":
        return type(self)(self.coords, coeffs)

    @classmethod
    def identity(cls, coords: Coords) -> "LinDiffOp":
        return cls(coords, {mi.zero(coords.dim): coords.one()})

    @property
    def dim(self) -> int:
        return self.coords.dim

    @property
    def order(self) -> int:
        return max((sum(alpha) for alpha in self.coeffs), default=0)

    def coefficient(self, alpha: Sequence[int]) -> Rat:
        c = self.coeffs.get(tuple(alpha))
        return c if c is not None else self.coords.zero()

    def homogeneous(self, k: int) -> Dict[MultiIndex, Rat]:
        return {alpha: c for alpha, c in self.coeffs.items() if sum(alpha) == k}

    def free_term(self) -> Rat:
        return self.coefficient(mi.zero(self.dim))

    def apply(self, h: Rat) -> Rat:
        """Sum of c_alpha * d^alpha h."""
        if not self.coeffs:
            return self.coords.zero()
        table = self.coords.jet(h, self.order)
        total = self.coords.zero()
        for alpha, c in self.coeffs.items():
            total = total + c * table[alpha]
        return total

    __call__ = apply

    def compose_derivative(self, i: int) -> "LinDiffOp":
        """The operator D_i o A (D_i the i-th coordinate derivation)."""
        result: Dict[MultiIndex, Rat] = {}
        for alpha, c in self.coeffs.items():
            dc = self.coords.d(c, i)
            if dc:
                result[alpha] = result.get(alpha, self.coords.zero()) + dc
            up = mi.add(alpha, mi.unit(self.dim, i))
            result[up] = result.get(up, self.coords.zero()) + c
        return self._new(result)

    def scale(self, factor: Rat) -> "LinDiffOp":
        return self._new({alpha: c * factor for alpha, c in self.coeffs.items()})

    def map_coefficients(self, fn: Callable[[Rat], Rat]) -> "LinDiffOp":
        return self._new({alpha: fn(c) for alpha, c in self.coeffs.items()})

    def truncate(self, k: int) -> "LinDiffOp":
        """Terms of order at most k."""
        return self._new({alpha: c for alpha, c in self.coeffs.items() if sum(alpha) <= k})

    def __add__(self, other: "LinDiffOp") -> "LinDiffOp":
        result = dict(self.coeffs)
        for alpha, c in other.coeffs.items():
            result[alpha] = result[alpha] + c if alpha in result else c
        return self._new(result)

    def __neg__(self) -> "LinDiffOp":
        return self._new({alpha: -c for alpha, c in self.coeffs.items()})

    def __sub__(self, other: "LinDiffOp") -> "LinDiffOp":
        return self + (-other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinDiffOp):
            return NotImplemented
        if self.dim != other.dim:
            return False
        keys = set(self.coeffs) | set(other.coeffs)
        return all(self.coefficient(a) == other.coefficient(a) for a in keys)

    def is_zero(self) -> bool:
        return not self.coeffs

    def to_text(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for alpha in mi.up_to(self.dim, MAX_ORDER):
            if alpha in self.coeffs:
                parts.append(f"({self.coeffs[alpha].to_text()})*D[{format_multi_index(alpha)}]")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.to_text()})"


class OperatorFamily(LinDiffOp):
    """A y-parametrized operator A(x, y) with no d/dy terms.

    ``fiber`` names the fiber coordinate; coefficients may depend on it, the
    coordinate derivations treat it as a constant.
    """

    def __init__(self, coords: Coords, coeffs: Mapping[Sequence[int], Rat], fiber: str = FIBER_VAR):
        super().__init__(coords, coeffs)
        self.fiber = fiber

    def _new(self, coeffs):
        return OperatorFamily(self.coords, coeffs, self.fiber)

    def frozen(self, value=None) -> LinDiffOp:
        """The operator A_y with y a constant (optionally a given number)."""
        if value is None:
            return LinDiffOp(self.coords, self.coeffs)
        return LinDiffOp(self.coords, {a: c.subs({self.fiber: value}) for a, c in self.coeffs.items()})

    def depends_on_fiber(self) -> bool:
        return any(c.depends_on(self.fiber) for c in self.coeffs.values())


def restrict_family(family: OperatorFamily, f: Rat) -> LinDiffOp:
    """The operator A_f: every coefficient evaluated on the graph y = f(x)."""
    coeffs = {}
    for alpha, c in family.coeffs.items():
        try:
            coeffs[alpha] = c.subs({family.fiber: f})
        except PoleError as exc:
            raise PoleError(f"coefficient {','.join(map(str, alpha))} has a pole along y = {f}") from exc
    return LinDiffOp(family.coords, coeffs)


def weakly_apply(family: OperatorFamily, f: Rat) -> Rat:
    """A_w(f) = A_f(f)."""
    return restrict_family(family, f).apply(f)


def operator_from_terms(coords: Coords, terms: Iterable) -> LinDiffOp:
    """Build an operator from (alpha, coefficient) pairs, summing repeats."""
    coeffs: Dict[MultiIndex, Rat] = {}
    for alpha, c in terms:
        alpha = tuple(alpha)
        coeffs[alpha] = coeffs[alpha] + c if alpha in coeffs else c
    return LinDiffOp(coords, coeffs)
