"""Symmetric tensors, covectors and the pairing between them.

A degree-k tensor stores S_alpha (|alpha| = k) and stands for the polynomial
sum S_alpha w^alpha in fiber variables (forms) or dual ones (vectors).
"""
from math import factorial
from typing import Dict, List, Mapping, Sequence

from diffop import multiindex as mi
from diffop.multiindex import MultiIndex
from diffop.operator import Coords
from symexpr import Rat

VECTOR = "vector"
FORM = "form"


class SymTensor:
    def __init__(self, coords: Coords, degree: int, components: Mapping[Sequence[int], Rat], variance: str = VECTOR):
        if variance not in (VECTOR, FORM):
            raise ValueError(f"unknown variance {variance!r}")
        self.coords = coords
        self.degree = degree
        self.variance = variance
        clean: Dict[MultiIndex, Rat] = {}
        for alpha, c in components.items():
            alpha = tuple(alpha)
            if len(alpha) != coords.dim or sum(alpha) != degree:
                raise ValueError(f"component {alpha} does not have degree {degree}")
            if not isinstance(c, Rat):
                c = Rat.const(c, coords.vars)
            if c:
                clean[alpha] = c
        self.components = clean

    @property
    def dim(self) -> int:
        return self.coords.dim

    def component(self, alpha: Sequence[int]) -> Rat:
        c = self.components.get(tuple(alpha))
        return c if c is not None else self.coords.zero()

    def full(self, indices: Sequence[int]) -> Rat:
        """Fully symmetric array entry S^{i1...ik} = S_alpha * alpha! / k!."""
        alpha = mi.from_indices(indices, self.dim)
        return self.component(alpha) * mi.mfactorial(alpha) / factorial(self.degree)

    def is_zero(self) -> bool:
        return not self.components

    def scale(self, factor: Rat) -> "SymTensor":
        return SymTensor(self.coords, self.degree, {a: c * factor for a, c in self.components.items()}, self.variance)

    def __add__(self, other: "SymTensor") -> "SymTensor":
        if other.degree != self.degree or other.variance != self.variance:
            raise ValueError("cannot add tensors of different type")
        result = dict(self.components)
        for a, c in other.components.items():
            result[a] = result[a] + c if a in result else c
        return SymTensor(self.coords, self.degree, result, self.variance)

    def __sub__(self, other: "SymTensor") -> "SymTensor":
        return self + other.scale(Rat.const(-1))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymTensor):
            return NotImplemented
        if (self.degree, self.variance, self.dim) != (other.degree, other.variance, other.dim):
            return False
        keys = set(self.components) | set(other.components)
        return all(self.component(a) == other.component(a) for a in keys)

    def to_text(self) -> str:
        if not self.components:
            return "0"
        letter = "D" if self.variance == VECTOR else "w"
        return " + ".join(
            f"({self.components[a].to_text()})*{letter}[{','.join(map(str, a))}]"
            for a in mi.of_order(self.dim, self.degree)
            if a in self.components
        )

    def __repr__(self) -> str:
        return f"SymTensor({self.degree}, {self.variance}: {self.to_text()})"


class Covector:
    """A 1-form sum theta_i dx_i."""

    def __init__(self, coords: Coords, components: Sequence[Rat]):
        if len(components) != coords.dim:
            raise ValueError("one component per coordinate is required")
        self.coords = coords
        self.components: List[Rat] = list(components)

    @classmethod
    def differential(cls, coords: Coords, f: Rat) -> "Covector":
        return cls(coords, [coords.d(f, i) for i in range(coords.dim)])

    def __getitem__(self, i: int) -> Rat:
        return self.components[i]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def as_tensor(self) -> SymTensor:
        return SymTensor(self.coords, 1, {mi.unit(self.coords.dim, i): c for i, c in enumerate(self.components)}, FORM)

    def power(self, k: int) -> SymTensor:
        """theta^k as a symmetric k-form: coefficients of (sum theta_i w_i)^k."""
        dim = self.coords.dim
        components = {}
        for alpha in mi.of_order(dim, k):
            c = Rat.const(factorial(k) // mi.mfactorial(alpha), self.coords.vars)
            for i, a in enumerate(alpha):
                if a:
                    c = c * self.components[i] ** a
            components[alpha] = c
        return SymTensor(self.coords, k, components, FORM)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Covector):
            return NotImplemented
        return len(self.components) == len(other.components) and all(
            a == b for a, b in zip(self.components, other.components)
        )

    def to_text(self) -> str:
        return " + ".join(f"({c.to_text()})*d{n}" for c, n in zip(self.components, self.coords.names))

    def __repr__(self) -> str:
        return f"Covector({self.to_text()})"


def pairing(v: SymTensor, s: SymTensor) -> Rat:
    """<v, s> = sum_alpha alpha! v_alpha s_alpha."""
    if v.degree != s.degree:
        raise ValueError(f"cannot pair degree {v.degree} with degree {s.degree}")
    if v.variance != VECTOR or s.variance != FORM:
        raise ValueError("pairing takes a symmetric vector and a symmetric form")
    total = v.coords.zero()
    for alpha, c in v.components.items():
        other = s.components.get(alpha)
        if other is not None:
            total = total + c * other * mi.mfactorial(alpha)
    return total


def pair_vector_form(v: SymTensor, theta: Covector) -> Rat:
    """Contraction of a 1-vector with a 1-form."""
    return pairing(v, theta.as_tensor())
