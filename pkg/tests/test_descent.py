from fractions import Fraction

import pytest

from descent import (
    NO_RELATIONS,
    RELATIONS,
    CoeffJet,
    JetDerivation,
    JetVars,
    PairInvariant,
    VerticalDerivation,
    descend,
    family_invariant,
    generic_family,
    nabla,
    nabla_chain,
    oracle_1d,
    pair_invariant,
    parse_coeff_jet,
    specialize,
)
from diffop import Diffeo, pushforward, restrict_family
from quantize import InvariantEvaluator
from symexpr import Rat, parse_expr, varset
from tests.conftest import expr, family
from utils.errors import JetOrderError, PoleError


def jet(text: str, *names: str) -> Rat:
    return parse_expr(text, varset(names or ("x", "y", "f_1", "f_2", "a3", "a2", "a1", "a0",
                                             "a3_x", "a3_y", "a0_x", "a0_y", "a0_xy", "a0_yy")))


def test_coeff_jet_names():
    cj = parse_coeff_jet("a30_12y", 2)
    assert cj == CoeffJet((3, 0), (1, 1), 1)
    assert cj.name == "a30_12y"
    assert cj.order == 3
    assert parse_coeff_jet("a3_x", 1).shifted().name == "a3_xy"
    assert parse_coeff_jet("a21", 2).shifted(1).name == "a21_2"
    for name in ("a4", "a30", "f_1", "a3_1", "b3"):
        assert parse_coeff_jet(name, 1) is None


def test_jet_vars():
    assert JetVars(2, 2).names == ("f_10", "f_01", "f_20", "f_11", "f_02")
    assert len(JetVars(1, 3)) == 3
    jets = JetVars(1, 1)
    assert jets.occurring(jet("f_2*f_1 + y")) == ("f_1", "f_2")
    with pytest.raises(JetOrderError):
        jets.check_order(jet("f_2"))
    with pytest.raises(ValueError):
        JetVars(3, 1)


def test_pair_derivation():
    D = JetDerivation(1, 0, "pair")
    assert D(jet("y")) == jet("f_1")
    assert D(jet("f_1")) == jet("f_2")
    assert D(jet("a3")) == jet("a3_x + f_1*a3_y")
    assert D(jet("x*y")) == jet("y + x*f_1")


def test_frozen_and_vertical_derivations():
    D = JetDerivation(1, 0, "frozen")
    assert D(jet("a0*y")) == jet("a0_x*y")
    assert D(jet("y")).is_zero()
    V = VerticalDerivation(1)
    assert V(jet("a0_x*y")) == jet("a0_xy*y + a0_x")
    assert V(jet("x*f_1")).is_zero()


def test_generic_pair_invariants():
    family = generic_family(1)
    assert pair_invariant("DA3", family, 1).expr == jet("6*a3*(a0_x + a0_y*f_1)^3")
    assert pair_invariant("DA2", family, 1).expr == jet("2*(a2 - a3_x - a3_y*f_1)*(a0_x + a0_y*f_1)^2")
    assert pair_invariant("I0", family, 1).expr == jet("a0")


def test_pair_invariant_order_check():
    with pytest.raises(JetOrderError):
        pair_invariant("DA1", generic_family(1), 1)
    assert pair_invariant("DA1", generic_family(1), 2).jets.order == 2


def test_pair_invariant_rejects_pairs(load):
    with pytest.raises(ValueError):
        pair_invariant("TRESSE:I1;I0,BOX:I0", load("line_family.json"), 1)


def test_specialize_generic_to_concrete(load):
    F = load("line_family.json")
    generic = pair_invariant("DA3", generic_family(1), 1)
    assert specialize(generic.expr, F) == pair_invariant("DA3", F, 1).expr
    assert pair_invariant("DA3", F, 1).expr == jet("6*(y + x*f_1)^3")


def test_pair_invariant_on_a_section(load, line):
    F = load("line_family.json")
    p = pair_invariant("DA3", F, 1)
    f = expr("x", "x", "y")
    assert p.specialize(f, line) == expr("48*x^3", "x", "y")
    assert p.specialize(f, line) == InvariantEvaluator(restrict_family(F, f)).scalar("DA3")


def test_family_invariant(load):
    F = load("line_family.json")
    assert family_invariant("DA2", F) == expr("2*y^3", "x", "y")


def test_nabla():
    p = PairInvariant("I0", jet("a0*f_1"), JetVars(1, 1))
    assert nabla(p).expr == jet("a0_y*f_1")
    assert nabla(p).name == "NABLA:I0"
    chain = nabla_chain(p, 2)
    assert [c.name for c in chain] == ["I0", "NABLA:I0", "NABLA:NABLA:I0"]
    assert chain[2].expr == jet("a0_yy*f_1")


def test_descend_monomials():
    jets = JetVars(1, 1)
    result = descend([PairInvariant("A", jet("f_1^2"), jets), PairInvariant("B", jet("f_1^3"), jets)])
    assert result.status == RELATIONS
    assert result.work == ("f_1",)
    assert result.relations == [parse_expr("X0^3 - X1^2", varset(("X0", "X1")))]
    assert result.invariants == []
    assert result.verify()


def test_descend_without_relations():
    jets = JetVars(1, 1)
    result = descend(PairInvariant("A", jet("f_1 + y"), jets), n=0)
    assert result.status == NO_RELATIONS
    assert result.relations == []


def test_descend_rejects_inconsistent_length():
    jets = JetVars(1, 1)
    with pytest.raises(ValueError):
        descend([PairInvariant("A", jet("f_1"), jets)], n=3)
    with pytest.raises(ValueError):
        descend([])


def test_descend_line_family(load):
    F = load("line_family.json")
    seeds = [pair_invariant(name, F, 1) for name in ("DA2", "DA3")]
    result = descend(seeds)
    assert set(result.params) == {"x", "y"}
    X = varset(("X0", "X1", "y"))
    assert result.relations == [parse_expr("X0^3 - 2/9*y^3*X1^2", X)]
    assert result.invariants == [expr("-2/9*y^3", "x", "y")]
    assert [c.to_text() for c in result.invariants] == ["-2/9*y^3"]
    assert result.verify()


@pytest.mark.slow
def test_descend_generic_line():
    family = generic_family(1)
    result = descend([pair_invariant("DA2", family, 1), pair_invariant("DA3", family, 1)])
    assert result.status == RELATIONS
    assert len(result.relations) == 1
    assert result.verify()


def test_oracle_reports_known_discrepancies(load):
    report = oracle_1d(load("line_example.json"))
    assert [item.name for item in report.discrepancies] == ["sigma1", "sigma3hat[1]", "I1"]
    assert report.item("I3").factor == 6
    assert report.item("I2").equal
    assert report.as_dict()["discrepancies"] == ["sigma1", "sigma3hat[1]", "I1"]


def test_oracle_flat_symbol(load):
    report = oracle_1d(load("line_flat.json"))
    assert report.discrepancies == []
    assert report.item("I3").computed == expr("6", "x", "y")


def test_oracle_pairs(load):
    report = oracle_1d(load("line_family.json"), ["pairs"])
    names = [item.name for item in report.items]
    assert names == ["pair I0", "pair I1", "pair I2", "pair I3"]
    assert report.item("pair I2").equal
    assert report.item("pair I3").equal


def test_oracle_needs_line(load):
    with pytest.raises(ValueError):
        oracle_1d(load("hyperbolic.json"))
    with pytest.raises(ValueError):
        oracle_1d(load("line_example.json"), ["bogus"])


@pytest.fixture(scope="module")
def generic_line_descent():
    generic = generic_family(1)
    return descend([pair_invariant("DA2", generic, 1), pair_invariant("DA3", generic, 1)])


@pytest.mark.slow
def test_generic_line_relation_survives_the_parametrization(generic_line_descent):
    (relation,) = generic_line_descent.relations
    names = ("X0", "X1", "t", "a3", "a2", "a3_x", "a3_y", "a0_x", "a0_y")
    rat = lambda text: parse_expr(text, varset(names))
    K = "(a2 - a3_x + a3_y*a0_x/a0_y)"
    expected = rat(f"(X0 + a3_y/(3*a3*a0_y)*X1)^3 - 2*{K}^3/(9*a3^2)*X1^2")
    assert relation == expected
    # t = a0_x + a0_y*f_1 turns both seeds into monomials in t
    f_1 = rat("(t - a0_x)/a0_y")
    X1 = rat("6*a3*t^3")
    X0 = rat("2*t^2") * (rat("a2 - a3_x") - rat("a3_y") * f_1)
    assert relation.subs({"X0": X0, "X1": X1}).is_zero()


@pytest.mark.slow
def test_descended_invariants_are_natural(generic_line_descent, line):
    F = family(line, {(3,): "x + y", (2,): "y^2", (1,): "1", (0,): "x*y + x^2"})
    phi = Diffeo(line, [expr("2*x + 1", "x", "y")], [expr("(x - 1)/2", "x", "y")])
    G = pushforward(F, phi)
    invariants = generic_line_descent.invariants
    assert invariants
    for c in invariants:
        on_f, on_g = specialize(c, F), specialize(c, G)
        checked = 0
        for i in range(10):
            x, y = Fraction(i + 2, 3), Fraction(5 - i, 2)
            try:
                expected = on_f.eval_at({"x": x, "y": y})
                value = on_g.eval_at({"x": 2 * x + 1, "y": y})
            except PoleError:
                continue
            assert value == expected, (c.to_text(), x, y)
            checked += 1
        assert checked > 0
