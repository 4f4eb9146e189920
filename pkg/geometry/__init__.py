from geometry.tensors import SymTensor, Covector, pairing, pair_vector_form, VECTOR, FORM
from geometry.symbol import (
    symbol_k,
    symbol3,
    binary_cubic,
    discriminant,
    classify,
    is_regular,
    HYPERBOLIC,
    ULTRAHYPERBOLIC,
    DEGENERATE,
    REGULAR,
)
from geometry.linsolve import solve_linear
from geometry.connection import (
    Connection,
    parallel_residual,
    is_parallel,
    wagner_connection,
    curvature,
    is_flat,
    torsion_form,
)
from geometry import tables

__all__ = [
    "SymTensor",
    "Covector",
    "pairing",
    "pair_vector_form",
    "VECTOR",
    "FORM",
    "symbol_k",
    "symbol3",
    "binary_cubic",
    "discriminant",
    "classify",
    "is_regular",
    "HYPERBOLIC",
    "ULTRAHYPERBOLIC",
    "DEGENERATE",
    "REGULAR",
    "solve_linear",
    "Connection",
    "parallel_residual",
    "is_parallel",
    "wagner_connection",
    "curvature",
    "is_flat",
    "torsion_form",
    "tables",
]
