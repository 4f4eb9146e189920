import random
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import pytest

from diffop import Coords, Diffeo, LinDiffOp, OperatorFamily, load_operator, plain_coords
from symexpr import Rat, parse_expr, varset

FIXTURES = Path(__file__).parent / "fixtures"


def expr(text: str, *names: str) -> Rat:
    """Parse over the given names (x1, x2, y by default)."""
    return parse_expr(text, varset(names or ("x1", "x2", "y")))


def operator(coords: Coords, coeffs) -> LinDiffOp:
    """LinDiffOp from {alpha: text} over the coordinates (plus y)."""
    names = coords.names + ("y",)
    return LinDiffOp(coords, {alpha: expr(text, *names) for alpha, text in coeffs.items()})


def family(coords: Coords, coeffs) -> OperatorFamily:
    names = coords.names + ("y",)
    return OperatorFamily(coords, {alpha: expr(text, *names) for alpha, text in coeffs.items()})


COEFFICIENTS = (-3, -2, -1, 1, 2, 3)


def random_poly(rng: random.Random, names: Sequence[str], terms: int = 3, degree: int = 1, constant=0) -> Rat:
    """Sum of a few random monomials with small integer coefficients (may cancel to the constant)."""
    vars = varset(names)
    result = Rat.const(constant, vars)
    for _ in range(terms):
        term = Rat.const(rng.choice(COEFFICIENTS), vars)
        for _ in range(rng.randint(0, degree)):
            term = term * Rat.var(rng.choice(names), vars)
        result = result + term
    return result


def nonzero_poly(rng: random.Random, names: Sequence[str], **kwargs) -> Rat:
    while True:
        e = random_poly(rng, names, **kwargs)
        if not e.is_zero():
            return e


def random_rat(rng: random.Random, names: Sequence[str] = ("x1", "x2")) -> Rat:
    return random_poly(rng, names) / nonzero_poly(rng, names, constant=rng.randint(1, 3))


def random_triangular(rng: random.Random, coords: Coords) -> Diffeo:
    """(x1 + c x2^2, x2) or (x1, x2 + c x1^2), with its exact inverse."""
    x1, x2 = coords.var(0), coords.var(1)
    c = rng.choice([1, 2, -1, Fraction(1, 2), Fraction(-1, 3)])
    if rng.random() < 0.5:
        return Diffeo(coords, [x1 + c * x2 ** 2, x2], [x1 - c * x2 ** 2, x2])
    return Diffeo(coords, [x1, x2 + c * x1 ** 2], [x1, x2 - c * x1 ** 2])


def random_unimodular(rng: random.Random, coords: Coords) -> Diffeo:
    """x -> Mx with M = [[1 + pq, p], [q, 1]], det M = 1."""
    x1, x2 = coords.var(0), coords.var(1)
    p, q = rng.choice([1, 2, -1, -2]), rng.choice([1, -1, 3])
    return Diffeo(coords, [(1 + p * q) * x1 + p * x2, q * x1 + x2], [x1 - p * x2, -q * x1 + (1 + p * q) * x2])


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def load():
    return lambda name: load_operator(FIXTURES / name)


@pytest.fixture
def plane() -> Coords:
    return plain_coords(2)


@pytest.fixture
def line() -> Coords:
    return plain_coords(1)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)
