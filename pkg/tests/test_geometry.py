from fractions import Fraction

import pytest

from geometry import (
    DEGENERATE,
    FORM,
    HYPERBOLIC,
    REGULAR,
    ULTRAHYPERBOLIC,
    Connection,
    Covector,
    SymTensor,
    classify,
    curvature,
    discriminant,
    is_flat,
    is_parallel,
    is_regular,
    pairing,
    parallel_residual,
    solve_linear,
    symbol3,
    torsion_form,
    wagner_connection,
)
from geometry.tables import (
    canonical_comparison,
    detect_canonical,
    hyperbolic_symbol,
    hyperbolic_table,
    hyperbolic_torsion,
    printed_hyperbolic_table,
    printed_ultrahyperbolic_torsion,
    ultrahyperbolic_symbol,
    ultrahyperbolic_table,
    ultrahyperbolic_torsion,
)
from diffop import LinDiffOp, pushforward
from tests.conftest import expr, nonzero_poly, operator, random_poly, random_unimodular
from utils.errors import DegenerateSymbolError, SingularSystemError


def test_discriminant_of_fixtures(load):
    assert discriminant(symbol3(load("hyperbolic.json"))) == expr("1/27")
    assert discriminant(symbol3(load("ultrahyperbolic.json"))) == expr("-4/27")
    assert discriminant(symbol3(load("degenerate.json"))).is_zero()


def test_classify(load, plane):
    assert classify(symbol3(load("hyperbolic.json"))) == HYPERBOLIC
    assert classify(symbol3(load("ultrahyperbolic.json"))) == ULTRAHYPERBOLIC
    assert classify(symbol3(load("degenerate.json"))) == DEGENERATE

    sigma = symbol3(operator(plane, {(2, 1): "x1", (1, 2): "1"}))
    assert discriminant(sigma) == expr("x1^2/27")
    assert classify(sigma) == REGULAR
    assert classify(sigma, {"x1": Fraction(1), "x2": Fraction(0)}) == HYPERBOLIC
    assert classify(sigma, {"x1": Fraction(0), "x2": Fraction(0)}) == DEGENERATE


def test_is_regular(load, line):
    assert is_regular(symbol3(load("hyperbolic.json")))
    assert not is_regular(symbol3(load("degenerate.json")))
    assert is_regular(symbol3(operator(line, {(3,): "x"})))
    assert not is_regular(symbol3(operator(line, {(2,): "1"})))


def test_discriminant_needs_plane(line):
    with pytest.raises(ValueError):
        discriminant(symbol3(operator(line, {(3,): "1"})))


def test_full_components(plane):
    sigma = SymTensor(plane, 3, {(2, 1): expr("3")})
    assert sigma.full((0, 0, 1)) == expr("1")
    assert sigma.full((1, 0, 0)) == expr("1")
    assert sigma.full((1, 1, 0)).is_zero()


def test_pairing(plane):
    v = SymTensor(plane, 3, {(2, 1): expr("1")})
    s = Covector(plane, [expr("x1"), expr("x2")]).power(3)
    assert s.variance == FORM
    assert s.component((2, 1)) == expr("3*x1^2*x2")
    assert pairing(v, s) == expr("6*x1^2*x2")
    with pytest.raises(ValueError):
        pairing(v, Covector(plane, [expr("1"), expr("0")]).power(2))
    with pytest.raises(ValueError):
        pairing(v, v)


def test_constant_symbol_has_zero_connection(load):
    conn = wagner_connection(symbol3(load("hyperbolic.json")))
    assert conn == Connection.zero(load("hyperbolic.json").coords)
    assert not conn.entries()


def test_hyperbolic_closed_form(plane):
    a, b = expr("x1"), expr("1")
    sigma = hyperbolic_symbol(plane, a, b)
    conn = wagner_connection(sigma)
    assert conn.entries() == {"Gamma^1_11": expr("-2/(3*x1)"), "Gamma^2_21": expr("1/(3*x1)")}
    assert conn == hyperbolic_table(plane, a, b)
    assert is_parallel(sigma, conn)
    assert is_flat(conn)
    theta = torsion_form(conn)
    assert theta.components == [expr("-1/(3*x1)"), expr("0")]
    assert theta == hyperbolic_torsion(plane, a, b)


def test_ultrahyperbolic_solved_table(plane):
    a, b = expr("x1"), expr("1")
    sigma = ultrahyperbolic_symbol(plane, a, b)
    conn = wagner_connection(sigma)
    assert conn == ultrahyperbolic_table(plane, a, b)
    assert is_parallel(sigma, conn)
    report = canonical_comparison(sigma, conn)
    assert report["form"] == ULTRAHYPERBOLIC
    assert report["matches_closed_form"]
    assert report["printed_table_differences"]


def test_canonical_detection(load, plane):
    sigma = symbol3(load("canonical_hyperbolic.json"))
    kind, a, b = detect_canonical(sigma)
    assert (kind, a, b) == (HYPERBOLIC, expr("x1"), expr("1"))
    report = canonical_comparison(sigma, wagner_connection(sigma))
    assert report["matches_closed_form"]
    assert report["printed_table_differences"] == {}
    assert detect_canonical(SymTensor(plane, 3, {(3, 0): expr("1"), (0, 3): expr("1")})) is None


def test_perturbed_connection_is_not_parallel(plane):
    sigma = hyperbolic_symbol(plane, expr("x1"), expr("1"))
    conn = wagner_connection(sigma).perturbed((0, 1, 0), expr("x2"))
    assert not is_parallel(sigma, conn)
    assert any(not v.is_zero() for v in parallel_residual(sigma, conn).values())


def test_degenerate_symbol_has_no_connection(load):
    with pytest.raises(DegenerateSymbolError):
        wagner_connection(symbol3(load("degenerate.json")))


def test_line_connection(line):
    sigma = symbol3(operator(line, {(3,): "x", (0,): "x"}))
    conn = wagner_connection(sigma)
    assert conn[0, 0, 0] == expr("-1/(3*x)", "x")
    assert torsion_form(conn).is_zero()
    assert is_flat(conn)


def test_curvature(plane):
    conn = Connection.from_entries(plane, {(0, 0, 1): expr("x1")})
    R = curvature(conn)
    assert R[0][0][0][1] == expr("1")
    assert R[0][0][1][0] == expr("-1")
    assert not is_flat(conn)
    assert not conn.is_symmetric()


def test_solve_linear(plane):
    x = solve_linear([[expr("x1"), expr("1")], [expr("1"), expr("1")]], [expr("1"), expr("0")])
    assert x == [expr("1/(x1 - 1)"), expr("-1/(x1 - 1)")]
    with pytest.raises(SingularSystemError):
        solve_linear([[expr("1"), expr("1")], [expr("2"), expr("2")]], [expr("1"), expr("2")])


def test_hyperbolic_table_with_varying_coefficients(plane):
    a, b = expr("x1"), expr("1 + x2^2")
    sigma = hyperbolic_symbol(plane, a, b)
    conn = wagner_connection(sigma)
    assert conn.entries() == {
        "Gamma^1_11": expr("-2/(3*x1)"),
        "Gamma^1_12": expr("2*x2/(3*(1 + x2^2))"),
        "Gamma^2_21": expr("1/(3*x1)"),
        "Gamma^2_22": expr("-4*x2/(3*(1 + x2^2))"),
    }
    assert conn == hyperbolic_table(plane, a, b) == printed_hyperbolic_table(plane, a, b)
    theta = torsion_form(conn)
    assert theta == Covector(plane, [expr("-1/(3*x1)"), expr("-2*x2/(3*(1 + x2^2))")])
    assert theta == hyperbolic_torsion(plane, a, b)


def test_ultrahyperbolic_table_with_varying_coefficients(plane):
    a, b = expr("x2"), expr("x1")
    sigma = ultrahyperbolic_symbol(plane, a, b)
    conn = wagner_connection(sigma)
    r = "(x1^2 + x2^2)"
    assert conn.entries() == {
        "Gamma^1_11": expr(f"-x1/(3*{r})"),
        "Gamma^1_12": expr(f"-x2/(3*{r})"),
        "Gamma^2_21": expr(f"-x1/(3*{r})"),
        "Gamma^2_22": expr(f"-x2/(3*{r})"),
        "Gamma^2_11": expr(f"-x2/{r}"),
        "Gamma^2_12": expr(f"x1/{r}"),
        "Gamma^1_21": expr(f"x2/{r}"),
        "Gamma^1_22": expr(f"-x1/{r}"),
    }
    assert conn == ultrahyperbolic_table(plane, a, b)
    theta = torsion_form(conn)
    assert theta == Covector(plane, [expr(f"4*x1/(3*{r})"), expr(f"4*x2/(3*{r})")])
    assert theta == ultrahyperbolic_torsion(plane, a, b)
    assert theta != printed_ultrahyperbolic_torsion(plane, a, b)
    assert canonical_comparison(sigma, conn)["printed_torsion_differences"]


def random_regular_symbols(rng, plane):
    """Canonical symbols with random coefficients, some moved by unimodular linear maps."""
    names = plane.names
    for kind in ("hyperbolic", "ultrahyperbolic", "hyperbolic", "ultrahyperbolic", "general"):
        if kind == "general":
            while True:
                sigma = SymTensor(plane, 3, {alpha: random_poly(rng, names, terms=2) for alpha in
                                             [(3, 0), (2, 1), (1, 2), (0, 3)]})
                if is_regular(sigma):
                    yield sigma
                    break
            continue
        a, b = nonzero_poly(rng, names, constant=2), nonzero_poly(rng, names, constant=1)
        sigma = hyperbolic_symbol(plane, a, b) if kind == "hyperbolic" else ultrahyperbolic_symbol(plane, a, b)
        if rng.random() < 0.7:
            sigma = symbol3(pushforward(LinDiffOp(plane, sigma.components), random_unimodular(rng, plane)))
        yield sigma


@pytest.mark.slow
def test_wagner_connection_is_parallel_and_flat(plane, rng):
    for sigma in random_regular_symbols(rng, plane):
        conn = wagner_connection(sigma)
        assert is_parallel(sigma, conn)
        assert all(not v for v in parallel_residual(sigma, conn).values())
        assert is_flat(conn)


def test_classification_survives_linear_changes(load, plane, rng):
    for name, kind in (("hyperbolic.json", HYPERBOLIC), ("ultrahyperbolic.json", ULTRAHYPERBOLIC)):
        A = load(name)
        for _ in range(3):
            assert classify(symbol3(pushforward(A, random_unimodular(rng, plane)))) == kind


@pytest.mark.parametrize(
    "symbol, index, delta",
    [
        ("hyperbolic", (1, 0, 1), "1"),
        ("ultrahyperbolic", (0, 0, 0), "x1"),
        ("ultrahyperbolic_constant", (1, 1, 1), "1/2"),
    ],
)
def test_wagner_connection_is_unique(plane, symbol, index, delta):
    if symbol == "hyperbolic":
        sigma = hyperbolic_symbol(plane, expr("x1"), expr("1 + x2^2"))
    elif symbol == "ultrahyperbolic":
        sigma = ultrahyperbolic_symbol(plane, expr("x2"), expr("x1"))
    else:
        sigma = ultrahyperbolic_symbol(plane, expr("1"), expr("0"))
    conn = wagner_connection(sigma).perturbed(index, expr(delta))
    assert not is_parallel(sigma, conn)
