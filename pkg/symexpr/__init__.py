from symexpr.varset import VarSet, varset
from symexpr.rational import Rat, common_varset
from symexpr.parser import parse_expr, tokenize
from symexpr.derivation import Derivation, PartialDerivation, total_derivation, partials

__all__ = [
    "VarSet",
    "varset",
    "Rat",
    "common_varset",
    "parse_expr",
    "tokenize",
    "Derivation",
    "PartialDerivation",
    "total_derivation",
    "partials",
]
