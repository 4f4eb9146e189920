from diffop import multiindex
from diffop.operator import (
    Coords,
    LinDiffOp,
    OperatorFamily,
    plain_coords,
    restrict_family,
    weakly_apply,
    operator_from_terms,
)
from diffop.conventions import convert_a1form, to_a1form, convert_uform, from_uform
from diffop.diffeo import Diffeo, pushforward, transport
from diffop.io import parse_operator, load_operator, dump_operator, save_operator

__all__ = [
    "multiindex",
    "Coords",
    "LinDiffOp",
    "OperatorFamily",
    "plain_coords",
    "restrict_family",
    "weakly_apply",
    "operator_from_terms",
    "convert_a1form",
    "to_a1form",
    "convert_uform",
    "from_uform",
    "Diffeo",
    "pushforward",
    "transport",
    "parse_operator",
    "load_operator",
    "dump_operator",
    "save_operator",
]
