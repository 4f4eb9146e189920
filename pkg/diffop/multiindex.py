"""Multi-index helpers. A multi-index is a tuple of non-negative ints."""
from itertools import product
from math import factorial, prod
from typing import Iterator, List, Sequence, Tuple

from utils.errors import OperatorFileError

MultiIndex = Tuple[int, ...]


def order(alpha: Sequence[int]) -> int:
    return sum(alpha)


def mfactorial(alpha: Sequence[int]) -> int:
    """alpha! = alpha_1! * ... * alpha_n!"""
    return prod(factorial(a) for a in alpha)


def unit(dim: int, i: int) -> MultiIndex:
    return tuple(1 if j == i else 0 for j in range(dim))


def zero(dim: int) -> MultiIndex:
    return (0,) * dim


def add(alpha: Sequence[int], beta: Sequence[int]) -> MultiIndex:
    return tuple(a + b for a, b in zip(alpha, beta))


def sub(alpha: Sequence[int], beta: Sequence[int]) -> MultiIndex:
    return tuple(a - b for a, b in zip(alpha, beta))


def of_order(dim: int, k: int) -> List[MultiIndex]:
    """All alpha with |alpha| = k, in decreasing lexicographic order."""
    result = [alpha for alpha in product(range(k + 1), repeat=dim) if sum(alpha) == k]
    return sorted(result, reverse=True)


def up_to(dim: int, k: int) -> List[MultiIndex]:
    """All alpha with |alpha| <= k, highest order first."""
    result: List[MultiIndex] = []
    for j in range(k, -1, -1):
        result.extend(of_order(dim, j))
    return result


def split_first(alpha: Sequence[int]) -> Tuple[int, MultiIndex]:
    """(i, alpha - e_i) for the first nonzero position i."""
    for i, a in enumerate(alpha):
        if a:
            return i, tuple(a - 1 if j == i else a for j, a in enumerate(alpha))
    raise ValueError("zero multi-index has no first direction")


def as_indices(alpha: Sequence[int]) -> Tuple[int, ...]:
    """(2, 1) -> (0, 0, 1): the sorted index tuple of a multi-index."""
    return tuple(i for i, a in enumerate(alpha) for _ in range(a))


def from_indices(indices: Sequence[int], dim: int) -> MultiIndex:
    alpha = [0] * dim
    for i in indices:
        alpha[i] += 1
    return tuple(alpha)


def parse_key(key: str, dim: int, location: str = "") -> MultiIndex:
    """Parse the operator-file key "2,1" into (2, 1)."""
    try:
        alpha = tuple(int(part) for part in key.split(","))
    except ValueError:
        raise OperatorFileError(f"multi-index key {key!r} is not a comma list of integers", location)
    if len(alpha) != dim or any(a < 0 for a in alpha):
        raise OperatorFileError(f"multi-index key {key!r} does not fit dimension {dim}", location)
    if sum(alpha) > 3:
        raise OperatorFileError(f"multi-index key {key!r} has order above 3", location)
    return alpha


def iter_split(alpha: Sequence[int]) -> Iterator[Tuple[int, MultiIndex]]:
    for i, a in enumerate(alpha):
        if a:
            yield i, tuple(a - 1 if j == i else a for j, a in enumerate(alpha))
