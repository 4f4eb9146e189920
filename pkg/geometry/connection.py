"""
Linear connections: the Wagner connection of a cubic symbol, curvature and
torsion form.

Convention: nabla_{d_l} d_m = sum_k Gamma^k_{ml} d_k, so the direction of
differentiation is the second lower index. ``gamma[k][m][l]`` is zero-based.
"""
import logging
from itertools import combinations_with_replacement
from typing import Dict, Iterator, List, Mapping, Sequence, Tuple

from diffop import multiindex as mi
from diffop.operator import Coords
from geometry.linsolve import solve_linear
from geometry.symbol import discriminant
from geometry.tensors import Covector, SymTensor
from symexpr import Rat
from utils.errors import DegenerateSymbolError, SingularSystemError
from utils.formatters import format_christoffel, truncate_expression

logger = logging.getLogger(__name__)

Index3 = Tuple[int, int, int]


class Connection:
    """Christoffel table Gamma^k_{ml} of Rat entries (torsion allowed)."""

    def __init__(self, coords: Coords, gamma: Sequence[Sequence[Sequence[Rat]]]):
        self.coords = coords
        self.gamma: List[List[List[Rat]]] = [[list(row) for row in block] for block in gamma]

    @classmethod
    def zero(cls, coords: Coords) -> "Connection":
        n = coords.dim
        return cls(coords, [[[coords.zero() for _ in range(n)] for _ in range(n)] for _ in range(n)])

    @classmethod
    def from_entries(cls, coords: Coords, entries: Mapping[Index3, Rat]) -> "Connection":
        conn = cls.zero(coords)
        for (k, m, l), value in entries.items():
            conn.gamma[k][m][l] = value if isinstance(value, Rat) else Rat.const(value, coords.vars)
        return conn

    @property
    def dim(self) -> int:
        return self.coords.dim

    def __getitem__(self, index: Index3) -> Rat:
        k, m, l = index
        return self.gamma[k][m][l]

    def indices(self) -> Iterator[Index3]:
        n = self.dim
        for k in range(n):
            for m in range(n):
                for l in range(n):
                    yield k, m, l

    def entries(self) -> Dict[str, Rat]:
        """Nonzero entries keyed by label, e.g. "Gamma^1_11"."""
        return {format_christoffel(*idx): self[idx] for idx in self.indices() if self[idx]}

    def perturbed(self, index: Index3, delta: Rat) -> "Connection":
        conn = Connection(self.coords, self.gamma)
        k, m, l = index
        conn.gamma[k][m][l] = conn.gamma[k][m][l] + delta
        return conn

    def is_symmetric(self) -> bool:
        return all(self[k, m, l] == self[k, l, m] for k, m, l in self.indices())

    def differences(self, other: "Connection") -> Dict[str, Tuple[Rat, Rat]]:
        """Entries where the two tables disagree, keyed by label."""
        return {
            format_christoffel(*idx): (self[idx], other[idx])
            for idx in self.indices()
            if self[idx] != other[idx]
        }

    def __eq__(self, other) -> bool:
        if not isinstance(other, Connection):
            return NotImplemented
        return self.dim == other.dim and not self.differences(other)

    def __repr__(self) -> str:
        body = ", ".join(f"{k} = {v}" for k, v in self.entries().items())
        return f"Connection({body or '0'})"


def _triples(dim: int) -> List[Tuple[int, ...]]:
    return list(combinations_with_replacement(range(dim), 3))


def _replace(t: Sequence[int], pos: int, m: int) -> Tuple[int, ...]:
    return tuple(m if q == pos else v for q, v in enumerate(t))


def parallel_system(sigma: SymTensor, l: int):
    """Linear system in the unknowns Gamma^p_{ml} (fixed l) expressing nabla_l sigma = 0.

    Unknowns are ordered (p, m) lexicographically.
    """
    coords = sigma.coords
    n = coords.dim
    unknowns = [(p, m) for p in range(n) for m in range(n)]
    matrix, rhs = [], []
    for t in _triples(n):
        row = []
        for p, m in unknowns:
            entry = coords.zero()
            for pos in range(3):
                if t[pos] == p:
                    entry = entry + sigma.full(_replace(t, pos, m))
            row.append(entry)
        matrix.append(row)
        rhs.append(-coords.d(sigma.full(t), l))
    return unknowns, matrix, rhs


def parallel_residual(sigma: SymTensor, conn: Connection) -> Dict[Tuple[int, ...], Rat]:
    """(nabla_l sigma)^{ijk} for every l and sorted ijk; zero iff sigma is parallel."""
    coords = sigma.coords
    n = coords.dim
    residual = {}
    for l in range(n):
        for t in _triples(n):
            value = coords.d(sigma.full(t), l)
            for pos in range(3):
                for m in range(n):
                    value = value + conn[t[pos], m, l] * sigma.full(_replace(t, pos, m))
            residual[(l,) + t] = value
    return residual


def is_parallel(sigma: SymTensor, conn: Connection) -> bool:
    return all(v.is_zero() for v in parallel_residual(sigma, conn).values())


def wagner_connection(sigma: SymTensor) -> Connection:
    """The unique connection with nabla sigma = 0 for a regular cubic symbol.

    Raises:
        DegenerateSymbolError: sigma is not regular
    """
    coords = sigma.coords
    if sigma.degree != 3:
        raise ValueError("the Wagner connection is defined by a cubic symbol")
    if coords.dim == 1:
        if sigma.component((3,)).is_zero():
            raise DegenerateSymbolError("leading coefficient vanishes identically")
    elif discriminant(sigma).is_zero():
        raise DegenerateSymbolError("discriminant of the symbol vanishes identically")
    conn = Connection.zero(coords)
    for l in range(coords.dim):
        unknowns, matrix, rhs = parallel_system(sigma, l)
        try:
            solution = solve_linear(matrix, rhs)
        except SingularSystemError as exc:
            raise DegenerateSymbolError(f"parallelism equations are singular: {exc}") from exc
        for (p, m), value in zip(unknowns, solution):
            conn.gamma[p][m][l] = value
    logger.debug("wagner_connection: %s", truncate_expression(repr(conn)))
    return conn


def curvature(conn: Connection) -> List[List[List[List[Rat]]]]:
    """R^k_{m,ij} = d_i G^k_{mj} - d_j G^k_{mi} + sum_p (G^k_{pi} G^p_{mj} - G^k_{pj} G^p_{mi})."""
    coords = conn.coords
    n = conn.dim
    R = [[[[coords.zero() for _ in range(n)] for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for k in range(n):
        for m in range(n):
            for i in range(n):
                for j in range(i + 1, n):
                    value = coords.d(conn[k, m, j], i) - coords.d(conn[k, m, i], j)
                    for p in range(n):
                        value = value + conn[k, p, i] * conn[p, m, j] - conn[k, p, j] * conn[p, m, i]
                    R[k][m][i][j] = value
                    R[k][m][j][i] = -value
    return R


def is_flat(conn: Connection) -> bool:
    return all(e.is_zero() for block in curvature(conn) for row in block for col in row for e in col)


def torsion_form(conn: Connection) -> Covector:
    """theta_j = sum_k (Gamma^k_{jk} - Gamma^k_{kj})."""
    n = conn.dim
    components = []
    for j in range(n):
        value = conn.coords.zero()
        for k in range(n):
            value = value + conn[k, j, k] - conn[k, k, j]
        components.append(value)
    return Covector(conn.coords, components)
