"""
Natural invariants addressable by name.

Names::

    I0              free term a0 = A(1)
    I1              <sigma1, theta>, theta the torsion form of the Wagner connection
    I2              alias of BOX:I1
    DA1, DA2, DA3   <sigma_k, (d a0)^k>
    BOX:<name>      box3 applied to an invariant, i.e. A(I(A))
    TRESSE:J;K,L    Tresse derivatives dJ/dK, dJ/dL (a pair)

I0 is proportional to the u-form free term u^0 = a0/6; the factor does not
affect invariance.
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple, Union

from diffop.operator import LinDiffOp
from geometry.connection import torsion_form
from geometry.tensors import Covector, pairing, pair_vector_form
from quantize.quantization import TotalSymbol, total_symbol
from quantize.tresse import tresse_values
from symexpr import Rat
from utils.errors import InvariantNameError

logger = logging.getLogger(__name__)

Value = Union[Rat, Tuple[Rat, Rat]]

_ALIASES = {"I2": "BOX:I1"}


@dataclass(frozen=True)
class InvariantSpec:
    """Parsed battery name."""

    kind: str
    name: str
    inner: Tuple["InvariantSpec", ...] = ()
    degree: int = 0

    @property
    def arity(self) -> int:
        return 2 if self.kind == "TRESSE" else 1

    def column_names(self) -> List[str]:
        if self.arity == 1:
            return [self.name]
        return [f"{self.name}[1]", f"{self.name}[2]"]

    def __str__(self) -> str:
        return self.name


def parse_invariant(name: str) -> InvariantSpec:
    """Parse a battery name such as ``BOX:I1`` or ``TRESSE:BOX:I1;I1,I2``.

    Raises:
        InvariantNameError: The name is not in the battery grammar
    """
    text = name.strip()
    text = _ALIASES.get(text, text)
    if text in ("I0", "I1"):
        return InvariantSpec(text, text)
    if text in ("DA1", "DA2", "DA3"):
        return InvariantSpec("DA", text, degree=int(text[2]))
    if text.startswith("BOX:"):
        inner = parse_invariant(text[4:])
        if inner.arity != 1:
            raise InvariantNameError(f"BOX needs a scalar invariant, got {inner.name!r}")
        return InvariantSpec("BOX", f"BOX:{inner.name}", (inner,))
    if text.startswith("TRESSE:"):
        body = text[7:]
        if ";" not in body:
            raise InvariantNameError(f"TRESSE expects 'J;I1,I2', got {body!r}")
        target, pair = body.rsplit(";", 1)
        coords = pair.split(",")
        if len(coords) != 2:
            raise InvariantNameError(f"TRESSE expects two coordinate invariants, got {pair!r}")
        specs = tuple(parse_invariant(part) for part in (target, coords[0], coords[1]))
        if any(s.arity != 1 for s in specs):
            raise InvariantNameError("TRESSE arguments must be scalar invariants")
        return InvariantSpec("TRESSE", f"TRESSE:{specs[0].name};{specs[1].name},{specs[2].name}", specs)
    raise InvariantNameError(f"unknown invariant {name!r}")


def parse_battery(names: Union[str, List[str]]) -> List[InvariantSpec]:
    if isinstance(names, str):
        names = [names]
    expanded: List[str] = []
    for entry in names:
        for chunk in entry.split():
            expanded.extend(_split_list(chunk))
    return [parse_invariant(n) for n in expanded]


def _split_list(text: str) -> List[str]:
    """Split "I0,I1,TRESSE:J;K,L" at commas that are not inside a TRESSE pair."""
    parts: List[str] = []
    current = ""
    for piece in text.split(","):
        if current and current.startswith("TRESSE:") and current.count(",") == 0 and ";" in current:
            current = f"{current},{piece}"
            parts.append(current)
            current = ""
            continue
        if current:
            parts.append(current)
        current = piece
    if current:
        parts.append(current)
    return [p.strip() for p in parts if p.strip()]


class InvariantEvaluator:
    """Evaluates battery members on one operator, caching shared intermediates.

    The operator may be a family; its fiber variable then acts as a
    parameter. With total-derivative coordinates the same code evaluates
    invariants on jets.
    """

    def __init__(self, A: LinDiffOp):
        self.A = A
        self.coords = A.coords
        self._cache: Dict[str, Value] = {}
        self._symbol: Optional[TotalSymbol] = None
        self._theta: Optional[Covector] = None

    def _get_from_cache(self, key: str) -> Optional[Value]:
        return self._cache.get(key)

    def _store_in_cache(self, key: str, value: Value) -> None:
        self._cache[key] = value

    @property
    def total_symbol(self) -> TotalSymbol:
        if self._symbol is None:
            self._symbol = total_symbol(self.A)
        return self._symbol

    @property
    def torsion(self) -> Covector:
        if self._theta is None:
            self._theta = torsion_form(self.total_symbol.connection)
        return self._theta

    def evaluate(self, spec: Union[str, InvariantSpec]) -> Value:
        if isinstance(spec, str):
            spec = parse_invariant(spec)
        cached = self._get_from_cache(spec.name)
        if cached is not None:
            return cached
        value = self._compute(spec)
        self._store_in_cache(spec.name, value)
        return value

    def scalar(self, spec: Union[str, InvariantSpec]) -> Rat:
        value = self.evaluate(spec)
        if isinstance(value, tuple):
            raise InvariantNameError(f"{spec} is not a scalar invariant")
        return value

    def _compute(self, spec: InvariantSpec) -> Value:
        logger.debug("evaluating %s", spec.name)
        if spec.kind == "I0":
            return invariant_I0(self.A)
        if spec.kind == "I1":
            return pair_vector_form(self.total_symbol.sigma1, self.torsion)
        if spec.kind == "DA":
            return self._da(spec.degree)
        if spec.kind == "BOX":
            return box3(self.A, self.scalar(spec.inner[0]))
        if spec.kind == "TRESSE":
            J, K, L = (self.scalar(s) for s in spec.inner)
            return tresse_values(self.coords, J, K, L)
        raise InvariantNameError(f"unknown invariant kind {spec.kind!r}")

    def _da(self, k: int) -> Rat:
        sigma = self.total_symbol.sigma(k)
        da0 = Covector.differential(self.coords, invariant_I0(self.A))
        return pairing(sigma, da0.power(k))


def invariant_I0(A: LinDiffOp) -> Rat:
    return A.free_term()


def invariant_I1(A: LinDiffOp) -> Rat:
    return InvariantEvaluator(A).scalar("I1")


def box3(A: LinDiffOp, h: Rat) -> Rat:
    """The universal operator on the section of A: sum c_alpha d^alpha h = A(h)."""
    return A.apply(h)


def box3_invariant(spec: Union[str, InvariantSpec]) -> InvariantSpec:
    if isinstance(spec, str):
        spec = parse_invariant(spec)
    return parse_invariant(f"BOX:{spec.name}")


def evaluate_battery(A: LinDiffOp, specs: List[InvariantSpec]) -> Dict[str, Value]:
    evaluator = InvariantEvaluator(A)
    return {spec.name: evaluator.evaluate(spec) for spec in specs}
