"""
Exact multivariate rational functions over QQ.

A ``Rat`` stores a numerator and denominator as sparse sympy polynomials in
the ring of its ``VarSet``. Values are kept canonical: numerator and
denominator are coprime and the denominator's leading coefficient (graded
lexicographic order on the VarSet) is 1, so equality on a shared VarSet is
a comparison of the two polynomials.
"""
from fractions import Fraction
from math import gcd, lcm
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

from sympy.polys.domains import QQ

from symexpr.varset import VarSet, varset
from utils.errors import PoleError
from utils.formatters import format_number

Number = Union[int, Fraction]


def _qq(value: Number):
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def _fraction(coeff) -> Fraction:
    return Fraction(int(coeff.numerator), int(coeff.denominator))


def _normalize(num, den):
    if not den:
        raise PoleError("denominator vanishes identically")
    ring = num.ring
    if not num:
        return ring.zero, ring.one
    if den.is_ground:
        c = den.LC
        return (num if c == 1 else num.quo_ground(c)), ring.one
    num, den = num.cancel(den)
    c = den.LC
    if c != 1:
        num, den = num.quo_ground(c), den.quo_ground(c)
    return num, den


def _monic(num, den):
    c = den.LC
    if c == 1:
        return num, den
    return num.quo_ground(c), den.quo_ground(c)


def _total_degree(poly) -> int:
    return max((sum(m) for m in poly.itermonoms()), default=0)


class Rat:
    """Canonical element of QQ(x1, ..., xn)."""

    __slots__ = ("vars", "num", "den", "_hash")

    def __init__(self, vars: VarSet, num, den=None, canonical: bool = False):
        ring = vars.ring
        if den is None:
            den = ring.one
            canonical = True
        if not canonical:
            num, den = _normalize(num, den)
        self.vars = vars
        self.num = num
        self.den = den
        self._hash = None

    # -- construction -----------------------------------------------------

    @classmethod
    def const(cls, value: Number, vars: Optional[VarSet] = None) -> "Rat":
        vars = vars if vars is not None else varset(())
        return cls(vars, vars.ring.ground_new(_qq(value)))

    @classmethod
    def var(cls, name: str, vars: Optional[VarSet] = None) -> "Rat":
        vars = vars if vars is not None else varset((name,))
        if name not in vars:
            vars = vars.extend(name)
        return cls(vars, vars.gen(name))

    def zero(self) -> "Rat":
        return Rat(self.vars, self.vars.ring.zero)

    def one(self) -> "Rat":
        return Rat(self.vars, self.vars.ring.one)

    def lift(self, vars: VarSet) -> "Rat":
        """Re-express over ``vars``, which must contain every occurring variable."""
        if vars is self.vars:
            return self
        ring = vars.ring
        num, den = _monic(self.num.set_ring(ring), self.den.set_ring(ring))
        return Rat(vars, num, den, canonical=True)

    def _coerce(self, other) -> Optional["Rat"]:
        if isinstance(other, Rat):
            return other
        if isinstance(other, (int, Fraction)):
            return Rat(self.vars, self.vars.ring.ground_new(_qq(other)))
        return None

    def _align(self, other: "Rat"):
        if other.vars is self.vars:
            return self.vars, self.num, self.den, other.num, other.den
        target = self.vars.union(other.vars)
        ring = target.ring
        return (
            target,
            self.num.set_ring(ring),
            self.den.set_ring(ring),
            other.num.set_ring(ring),
            other.den.set_ring(ring),
        )

    # -- field operations -------------------------------------------------

    def __add__(self, other) -> "Rat":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        vs, an, ad, bn, bd = self._align(other)
        if ad == bd:
            if ad == 1:
                return Rat(vs, an + bn)
            return Rat(vs, an + bn, ad)
        return Rat(vs, an * bd + bn * ad, ad * bd)

    __radd__ = __add__

    def __neg__(self) -> "Rat":
        return Rat(self.vars, -self.num, self.den, canonical=True)

    def __pos__(self) -> "Rat":
        return self

    def __sub__(self, other) -> "Rat":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Rat":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "Rat":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        vs, an, ad, bn, bd = self._align(other)
        if not an or not bn:
            return Rat(vs, vs.ring.zero)
        if ad == 1 and bd == 1:
            return Rat(vs, an * bn)
        return Rat(vs, an * bn, ad * bd)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Rat":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other.num:
            raise PoleError("division by zero")
        vs, an, ad, bn, bd = self._align(other)
        return Rat(vs, an * bd, ad * bn)

    def __rtruediv__(self, other) -> "Rat":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, n: int) -> "Rat":
        if not isinstance(n, int):
            return NotImplemented
        if n == 0:
            return Rat.const(1, self.vars)
        if n > 0:
            return Rat(self.vars, self.num ** n, self.den ** n, canonical=True)
        if not self.num:
            raise PoleError("zero raised to a negative power")
        return Rat(self.vars, self.den ** (-n), self.num ** (-n))

    def inverse(self) -> "Rat":
        return self ** -1

    # -- comparison -------------------------------------------------------

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.vars is self.vars:
            return self.num == other.num and self.den == other.den
        _, an, ad, bn, bd = self._align(other)
        return an * bd == bn * ad

    def __ne__(self, other) -> bool:
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(
                (
                    frozenset(self.variables()),
                    _total_degree(self.num),
                    _total_degree(self.den),
                    len(self.num),
                    len(self.den),
                )
            )
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_zero(self) -> bool:
        return not self.num

    def is_polynomial(self) -> bool:
        return self.den == 1

    def is_constant(self) -> bool:
        return self.den == 1 and self.num.is_ground

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        if not self.num:
            return Fraction(0)
        return _fraction(self.num.LC)

    # -- calculus ---------------------------------------------------------

    def variables(self) -> Tuple[str, ...]:
        """Names that actually occur, in VarSet order."""
        used = [False] * len(self.vars)
        for poly in (self.num, self.den):
            for monom in poly.itermonoms():
                for i, e in enumerate(monom):
                    if e:
                        used[i] = True
        return tuple(n for n, u in zip(self.vars.names, used) if u)

    def depends_on(self, name: str) -> bool:
        if name not in self.vars:
            return False
        i = self.vars.index(name)
        return any(m[i] for m in self.num.itermonoms()) or any(m[i] for m in self.den.itermonoms())

    def diff(self, name: str) -> "Rat":
        """Partial derivative with respect to ``name``."""
        if not self.depends_on(name):
            return self.zero()
        gen = self.vars.gen(name)
        if self.den == 1:
            return Rat(self.vars, self.num.diff(gen))
        num = self.num.diff(gen) * self.den - self.num * self.den.diff(gen)
        return Rat(self.vars, num, self.den ** 2)

    def derive(self, rules: Mapping[str, "Rat"]) -> "Rat":
        """Apply the derivation sending each variable ``v`` to ``rules[v]``.

        Variables without a rule are treated as constants.
        """
        dnum = self._derive_poly(self.num, rules)
        if self.den == 1:
            return dnum
        dden = self._derive_poly(self.den, rules)
        num = Rat(self.vars, self.num)
        den = Rat(self.vars, self.den)
        return (dnum * den - num * dden) / (den * den)

    def _derive_poly(self, poly, rules: Mapping[str, "Rat"]) -> "Rat":
        total = self.zero()
        if not poly:
            return total
        for name in self.variables():
            image = rules.get(name)
            if image is None or not image:
                continue
            partial = poly.diff(self.vars.gen(name))
            if partial:
                total = total + Rat(self.vars, partial) * image
        return total

    # -- substitution and evaluation --------------------------------------

    def subs(self, bindings: Mapping[str, Union["Rat", Number]]) -> "Rat":
        """Simultaneous substitution of variables by rational functions."""
        occurring = set(self.variables())
        values: Dict[str, Rat] = {}
        for name, value in bindings.items():
            if name in occurring:
                values[name] = value if isinstance(value, Rat) else Rat.const(value, self.vars)
        if not values:
            return self
        target = self.vars
        for value in values.values():
            target = target.union(value.vars)
        ring = target.ring
        src_idx = [target.index(n) for n in self.vars.names]
        bound = {
            self.vars.index(n): (v.num.set_ring(ring), v.den.set_ring(ring))
            for n, v in values.items()
        }
        pn, qn = _compose(self.num, src_idx, bound, ring)
        pd, qd = _compose(self.den, src_idx, bound, ring)
        if not pd:
            raise PoleError(f"substitution makes the denominator of {self} vanish")
        return Rat(target, pn * qd, qn * pd)

    def rename(self, mapping: Mapping[str, str]) -> "Rat":
        return self.subs({old: Rat.var(new) for old, new in mapping.items()})

    def eval_at(self, point: Mapping[str, Number]) -> Fraction:
        """Exact value at a rational point binding every occurring variable."""
        values = self._point_values(point, Fraction)
        den = _eval_poly(self.den, values, Fraction)
        if den == 0:
            raise PoleError(f"pole of {self.to_text()} at {dict(point)}", point=dict(point))
        return _eval_poly(self.num, values, Fraction) / den

    def eval_float(self, point: Mapping[str, float]) -> float:
        values = self._point_values(point, float)
        den = _eval_poly(self.den, values, float)
        if den == 0.0:
            raise PoleError(f"pole of {self.to_text()} at {dict(point)}", point=dict(point))
        return _eval_poly(self.num, values, float) / den

    def _point_values(self, point, kind) -> List:
        values = []
        for name in self.vars.names:
            if name in point:
                values.append(kind(point[name]))
            else:
                values.append(None)
        missing = [n for n in self.variables() if n not in point]
        if missing:
            raise ValueError(f"unbound variables {missing} in {self.to_text()}")
        return values

    # -- conversion -------------------------------------------------------

    def numerator(self) -> "Rat":
        return Rat(self.vars, self.num)

    def denominator(self) -> "Rat":
        return Rat(self.vars, self.den)

    def as_sympy(self):
        return self.num.as_expr() / self.den.as_expr()

    def to_text(self) -> str:
        nterms = [(m, _fraction(c)) for m, c in self.num.terms()]
        if self.den == 1:
            return _terms_text(nterms, self.vars.names)
        dterms = [(m, _fraction(c)) for m, c in self.den.terms()]
        coeffs = [c for _, c in nterms + dterms]
        scale = Fraction(lcm(*(c.denominator for c in coeffs)), gcd(*(c.numerator for c in coeffs)))
        num = _terms_text([(m, c * scale) for m, c in nterms], self.vars.names)
        den = _terms_text([(m, c * scale) for m, c in dterms], self.vars.names)
        if len(nterms) > 1:
            num = f"({num})"
        if len(dterms) > 1 or "*" in den:
            den = f"({den})"
        return f"{num}/{den}"

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Rat({self.to_text()})"


def _compose(poly, src_idx, bound, ring):
    """Substitute ``x_i -> p_i/q_i`` (i in ``bound``) into ``poly``.

    Returns ``(P, Q)`` with polynomials over ``ring`` and ``poly = P/Q``.
    """
    if not poly:
        return ring.zero, ring.one
    degrees = {i: max(m[i] for m in poly.itermonoms()) for i in bound}
    cache: Dict[Tuple[int, int], object] = {}

    def factor(i: int, e: int):
        key = (i, e)
        if key not in cache:
            p, q = bound[i]
            # sympy refuses 0**0
            cache[key] = (p ** e if e else ring.one) * q ** (degrees[i] - e)
        return cache[key]

    total = ring.zero
    for monom, coeff in poly.iterterms():
        exps = [0] * ring.ngens
        for j, e in enumerate(monom):
            if e and j not in bound:
                exps[src_idx[j]] = e
        term = ring.term_new(tuple(exps), coeff)
        for i in bound:
            term = term * factor(i, monom[i])
        total += term
    common = ring.one
    for i, (_, q) in bound.items():
        if degrees[i]:
            common = common * q ** degrees[i]
    return total, common


def _eval_poly(poly, values, kind):
    total = kind(0)
    for monom, coeff in poly.iterterms():
        term = _fraction(coeff)
        if kind is float:
            term = float(term)
        for j, e in enumerate(monom):
            if e:
                term = term * values[j] ** e
        total += term
    return total


def _monomial_text(monom, names) -> str:
    factors = []
    for name, e in zip(names, monom):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    return "*".join(factors)


def _terms_text(terms, names) -> str:
    if not terms:
        return "0"
    parts: List[str] = []
    for monom, c in terms:
        sign = "-" if c < 0 else "+"
        c = abs(c)
        mono = _monomial_text(monom, names)
        if not mono:
            body = format_number(c)
        elif c == 1:
            body = mono
        else:
            body = f"{format_number(c)}*{mono}"
        if not parts:
            parts.append(f"-{body}" if sign == "-" else body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


def common_varset(values: Iterable[Rat]) -> VarSet:
    """Smallest VarSet (in first-seen order) holding every value."""
    result: Optional[VarSet] = None
    for value in values:
        result = value.vars if result is None else result.union(value.vars)
    return result if result is not None else varset(())
