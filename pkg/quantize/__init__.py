from quantize.sympoly import SymPoly, sym_derivation
from quantize.quantization import symmetric_differential, quantize, TotalSymbol, total_symbol
from quantize.tresse import tresse_values
from quantize.battery import (
    InvariantSpec,
    InvariantEvaluator,
    parse_invariant,
    parse_battery,
    invariant_I0,
    invariant_I1,
    box3,
    box3_invariant,
    evaluate_battery,
)

__all__ = [
    "SymPoly",
    "sym_derivation",
    "symmetric_differential",
    "quantize",
    "TotalSymbol",
    "total_symbol",
    "tresse_values",
    "InvariantSpec",
    "InvariantEvaluator",
    "parse_invariant",
    "parse_battery",
    "invariant_I0",
    "invariant_I1",
    "box3",
    "box3_invariant",
    "evaluate_battery",
]
