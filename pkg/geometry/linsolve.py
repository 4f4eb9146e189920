"""Fraction-free (Bareiss) elimination over Rat with full pivoting."""
import logging
from typing import List, Sequence

from symexpr import Rat
from utils.errors import SingularSystemError

logger = logging.getLogger(__name__)


def _size(e: Rat) -> int:
    return len(e.num) + len(e.den) + 4 * (not e.is_constant())


def solve_linear(matrix: Sequence[Sequence[Rat]], rhs: Sequence[Rat]) -> List[Rat]:
    """Unique solution x of matrix * x = rhs.

    Pivots are chosen among all remaining nonzero entries, smallest first.

    Raises:
        SingularSystemError: The system has no unique solution
    """
    n = len(matrix)
    m = len(matrix[0]) if n else 0
    if len(rhs) != n:
        raise ValueError("right-hand side length does not match the matrix")
    M = [list(row) + [b] for row, b in zip(matrix, rhs)]
    cols = list(range(m))
    prev = None
    rank = 0
    for k in range(min(n, m)):
        best = None
        for i in range(k, n):
            for j in range(k, m):
                entry = M[i][j]
                if entry and (best is None or _size(entry) < best[0]):
                    best = (_size(entry), i, j)
        if best is None:
            break
        _, r, c = best
        M[k], M[r] = M[r], M[k]
        if c != k:
            for row in M:
                row[k], row[c] = row[c], row[k]
            cols[k], cols[c] = cols[c], cols[k]
        pivot = M[k][k]
        for i in range(k + 1, n):
            factor = M[i][k]
            for j in range(k + 1, m + 1):
                value = pivot * M[i][j] - factor * M[k][j]
                M[i][j] = value / prev if prev is not None else value
            M[i][k] = pivot.zero()
        prev = pivot
        rank += 1
    if rank < m:
        raise SingularSystemError(f"system of rank {rank} in {m} unknowns has no unique solution")
    for i in range(rank, n):
        if M[i][m]:
            raise SingularSystemError("inconsistent linear system")
    x: List[Rat] = [None] * m
    for k in range(m - 1, -1, -1):
        acc = M[k][m]
        for j in range(k + 1, m):
            if M[k][j]:
                acc = acc - M[k][j] * x[cols[j]]
        x[cols[k]] = acc / M[k][k]
    logger.debug("solve_linear: %dx%d system solved", n, m)
    return x
