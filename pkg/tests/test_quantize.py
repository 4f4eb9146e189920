from fractions import Fraction

import pytest

from diffop import Diffeo, LinDiffOp, pushforward, transport
from geometry import SymTensor, wagner_connection
from geometry.tables import hyperbolic_symbol, ultrahyperbolic_symbol
from quantize import (
    InvariantEvaluator,
    SymPoly,
    box3,
    box3_invariant,
    evaluate_battery,
    invariant_I1,
    parse_battery,
    parse_invariant,
    quantize,
    sym_derivation,
    symmetric_differential,
    total_symbol,
    tresse_values,
)
from tests.conftest import expr, nonzero_poly, operator, random_poly, random_triangular
from utils.errors import GeneralPositionError, InvariantNameError, PoleError


def x(text: str):
    return expr(text, "x", "y")


@pytest.fixture
def line_example(line):
    return operator(line, {(3,): "x", (0,): "x"})


@pytest.fixture
def canonical(plane):
    """x1 d1^2 d2 + d1 d2^2 + x2 d1 + x1."""
    return operator(plane, {(2, 1): "x1", (1, 2): "1", (1, 0): "x2", (0, 0): "x1"})


def test_sym_derivation_without_connection(plane):
    conn = wagner_connection(SymTensor(plane, 3, {(2, 1): expr("1"), (1, 2): expr("1")}))
    p = SymPoly.constant(plane, expr("x1^2*x2"))
    assert sym_derivation(conn, p) == SymPoly(plane, {(1, 0): expr("2*x1*x2"), (0, 1): expr("x1^2")})


def test_symmetric_differential_line(line_example):
    conn = wagner_connection(SymTensor(line_example.coords, 3, {(3,): x("x")}))
    d3 = symmetric_differential(conn, 3)
    assert d3.degrees() == [3]
    # h''' - 3 G h'' + (2 G^2 - G') h' with G = -1/(3x)
    assert d3.coefficient((3,)) == operator(line_example.coords, {(3,): "1", (2,): "1/x", (1,): "-1/(9*x^2)"})


def test_quantized_symbol_has_that_symbol(canonical):
    ts = total_symbol(canonical)
    for k in (1, 2, 3):
        q = quantize(ts.sigma(k), ts.connection)
        assert q.order == k
        assert q.homogeneous(k) == ts.sigma(k).components


def test_total_symbol_line(line_example):
    ts = total_symbol(line_example)
    assert ts.sigma3.components == {(3,): x("x")}
    assert ts.sigma2.components == {(2,): x("-1")}
    assert ts.sigma1.components == {(1,): x("4/(9*x)")}
    assert ts.sigma0 == x("x")
    assert ts.quantized(3) == operator(line_example.coords, {(3,): "x", (2,): "1", (1,): "-1/(9*x)"})
    assert ts.reconstruct() == line_example


def test_total_symbol_hyperbolic(canonical):
    ts = total_symbol(canonical)
    assert ts.sigma2.components == {(1, 1): expr("-1/3"), (0, 2): expr("1/(3*x1)")}
    assert ts.sigma1.components == {(1, 0): expr("x2"), (0, 1): expr("-7/(54*x1)")}
    assert ts.sigma0 == expr("x1")
    assert ts.reconstruct() == canonical


def test_quantize_rejects_forms(plane):
    conn = wagner_connection(SymTensor(plane, 3, {(2, 1): expr("1"), (1, 2): expr("1")}))
    with pytest.raises(ValueError):
        quantize(SymTensor(plane, 1, {(1, 0): expr("1")}, "form"), conn)


def test_I1(canonical, line_example):
    assert invariant_I1(canonical) == expr("-x2/(3*x1)")
    assert invariant_I1(line_example).is_zero()


def test_da_invariants(canonical, line_example):
    values = evaluate_battery(line_example, parse_battery("DA1,DA2,DA3"))
    assert values == {"DA1": x("4/(9*x)"), "DA2": x("-2"), "DA3": x("6*x")}
    values = evaluate_battery(canonical, parse_battery("DA1 DA2 DA3"))
    assert values["DA1"] == expr("x2")
    assert values["DA2"].is_zero()
    assert values["DA3"].is_zero()


def test_box(canonical):
    assert box3(canonical, expr("x1")) == expr("x2 + x1^2")
    evaluator = InvariantEvaluator(canonical)
    assert evaluator.evaluate("BOX:I1") == canonical.apply(expr("-x2/(3*x1)"))
    assert evaluator.evaluate("I2") == evaluator.evaluate("BOX:I1")
    assert box3_invariant("I0").name == "BOX:I0"


def test_tresse(canonical):
    d1, d2 = InvariantEvaluator(canonical).evaluate("TRESSE:I1;I0,BOX:I0")
    assert d1 == expr("x2/(3*x1^2) + 2/3")
    assert d2 == expr("-1/(3*x1)")


def test_tresse_needs_general_position(canonical, plane, line):
    with pytest.raises(GeneralPositionError) as info:
        tresse_values(plane, expr("x1"), expr("x1 + x2"), expr("2*x1 + 2*x2"))
    assert info.value.jacobian is not None
    with pytest.raises(GeneralPositionError):
        InvariantEvaluator(canonical).evaluate("TRESSE:I1;I0,I0")
    with pytest.raises(GeneralPositionError):
        tresse_values(line, x("x"), x("x"), x("x^2"))


def test_scalar_rejects_pairs(canonical):
    with pytest.raises(InvariantNameError):
        InvariantEvaluator(canonical).scalar("TRESSE:I1;I0,BOX:I0")


def test_parse_battery():
    specs = parse_battery(["I0,I1", "BOX:I1", "TRESSE:BOX:I1;I1,I2"])
    assert [s.name for s in specs] == ["I0", "I1", "BOX:I1", "TRESSE:BOX:I1;I1,BOX:I1"]
    assert specs[-1].arity == 2
    assert specs[-1].column_names() == ["TRESSE:BOX:I1;I1,BOX:I1[1]", "TRESSE:BOX:I1;I1,BOX:I1[2]"]
    assert parse_invariant("I2") == parse_invariant("BOX:I1")
    assert parse_invariant("DA2").degree == 2


@pytest.mark.parametrize("name", ["I9", "BOX:", "TRESSE:I0", "TRESSE:I0;I1", "BOX:TRESSE:I0;I0,I1", "da1"])
def test_bad_names(name):
    with pytest.raises(InvariantNameError):
        parse_invariant(name)


@pytest.mark.slow
def test_invariants_are_natural(canonical, plane):
    phi = Diffeo(plane, [expr("x1"), expr("x2 + x1")], [expr("x1"), expr("x2 - x1")])
    B = pushforward(canonical, phi)
    mine, theirs = InvariantEvaluator(canonical), InvariantEvaluator(B)
    for name in ("I0", "I1", "BOX:I0", "DA1"):
        assert theirs.scalar(name) == transport(mine.scalar(name), phi), name


def degree_indices(dim: int, k: int):
    return [(k,)] if dim == 1 else [(a, k - a) for a in range(k + 1)]


def random_regular_symbol(rng, coords) -> SymTensor:
    names = coords.names
    a = nonzero_poly(rng, names, terms=2, constant=2)
    if coords.dim == 1:
        return SymTensor(coords, 3, {(3,): a})
    b = nonzero_poly(rng, names, terms=2, constant=1)
    make = hyperbolic_symbol if rng.random() < 0.5 else ultrahyperbolic_symbol
    return make(coords, a, b)


def random_regular_operator(rng, coords) -> LinDiffOp:
    coeffs = dict(random_regular_symbol(rng, coords).components)
    for k in (2, 1, 0):
        for alpha in degree_indices(coords.dim, k):
            if rng.random() < 0.6:
                coeffs[alpha] = random_poly(rng, coords.names, terms=2)
    return LinDiffOp(coords, coeffs)


def test_quantization_keeps_the_symbol(rng, line, plane):
    connections = [wagner_connection(random_regular_symbol(rng, coords)) for coords in (line, line, plane, plane)]
    for _ in range(20):
        conn = rng.choice(connections)
        coords = conn.coords
        k = rng.randint(1, 3)
        alpha = SymTensor(coords, k, {a: nonzero_poly(rng, coords.names, terms=2) for a in degree_indices(coords.dim, k)})
        q = quantize(alpha, conn)
        assert q.order == k
        assert q.homogeneous(k) == alpha.components


@pytest.mark.slow
@pytest.mark.parametrize("dim", [1, 2])
def test_total_symbol_reconstructs_the_operator(rng, line, plane, dim):
    coords = line if dim == 1 else plane
    for _ in range(10):
        A = random_regular_operator(rng, coords)
        assert total_symbol(A).reconstruct() == A


@pytest.mark.slow
def test_invariants_agree_pointwise_after_triangular_changes(canonical, plane, rng):
    mine = InvariantEvaluator(canonical)
    for _ in range(3):
        phi = random_triangular(rng, plane)
        theirs = InvariantEvaluator(pushforward(canonical, phi))
        for name in ("I0", "I1", "BOX:I1"):
            before, after = mine.scalar(name), theirs.scalar(name)
            checked = 0
            for _ in range(25):
                p = (Fraction(rng.randint(4, 12), 4), Fraction(rng.randint(4, 12), 4))
                try:
                    expected = before.eval_at(dict(zip(plane.names, phi.inverse_point(p))))
                    value = after.eval_at(dict(zip(plane.names, p)))
                except PoleError:
                    continue
                assert value == expected, (name, p)
                checked += 1
            assert checked > 0
