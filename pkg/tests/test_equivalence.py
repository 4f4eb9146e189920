from fractions import Fraction

import numpy as np
import pandas as pd
import pytest

from diffop import Diffeo, plain_coords, pushforward
from equivalence import (
    EQUIVALENT,
    INCONCLUSIVE,
    NOT_EQUIVALENT,
    Domain,
    atlas_test,
    compare_signatures,
    damped_newton,
    equivalence_test,
    invariant_signature,
    match_charts,
    natural_chart,
    within_tolerance,
)
from tests.conftest import expr, family
from utils.errors import GeneralPositionError, PoleError

SPECS = ["I0", "BOX:BOX:I0"]
DOMAIN_A = Domain((2, 1), (3, 2))
DOMAIN_B = Domain((4, 1), (5, 2))


@pytest.fixture
def shear():
    plane = plain_coords(2)
    return Diffeo(plane, [expr("x1 + x2"), expr("x2")], [expr("x1 - x2"), expr("x2")])


def test_domain():
    domain = Domain.parse("1/2,1,3/2,2")
    assert domain.lo == (Fraction(1, 2), Fraction(1))
    assert domain.grid(1) == [(Fraction(1), Fraction(3, 2))]
    assert len(domain.grid(3)) == 9
    assert (Fraction(3, 2), Fraction(2)) in domain.grid(2)
    assert domain.as_list() == ["1/2", "1", "3/2", "2"]
    with pytest.raises(ValueError):
        Domain.parse("1,2,3")
    with pytest.raises(ValueError):
        Domain((2, 2), (1, 1))


def test_within_tolerance():
    assert within_tolerance(1.0, 1.0 + 1e-12, 1e-9)
    assert within_tolerance(1e6, 1e6 + 1e-4, 1e-9)
    assert not within_tolerance(0.0, 1e-6, 1e-9)


def test_natural_chart(load):
    chart = natural_chart(load("family_a.json"), 0, ("I0", "BOX:I0"), DOMAIN_A, 3)
    assert chart.z[0] == expr("x1^2 + x2")
    assert chart.z[1] == expr("2*x1*x2 + (x1^2 + x2)^2")
    assert len(chart.points) == 9
    assert chart.values[0] == chart.evaluate(chart.points[0])
    assert chart.evaluate((2, 1)) == (5, 29)


def test_chart_needs_general_position(load):
    with pytest.raises(GeneralPositionError):
        natural_chart(load("family_a.json"), 0, ("I0", "I0"), DOMAIN_A, 3)


def test_chart_needs_a_plane(load):
    with pytest.raises(ValueError):
        natural_chart(load("line_family.json"), 0)


def test_chart_skips_poles(plane):
    F = family(plane, {(2, 1): "1", (1, 2): "1", (1, 0): "1", (0, 0): "1/(x1 - 2) + x2"})
    chart = natural_chart(F, 0, ("I0", "BOX:I0"), DOMAIN_A, 3)
    assert len(chart.skipped) == 3
    assert len(chart.points) == 6


def test_damped_newton(load):
    chart = natural_chart(load("family_a.json"), 0, ("I0", "BOX:I0"), DOMAIN_A, 3)
    goal = np.array([float(v) for v in chart.values[4]])
    x, converged, iterations, residual = damped_newton(chart.numeric(), goal, np.array([2.4, 1.4]), 1e-10)
    assert converged
    assert residual <= 1e-10
    assert list(x) == pytest.approx([float(v) for v in chart.points[4]])


def test_match_charts_recovers_the_shear(load, shear):
    A = load("family_a.json")
    B = pushforward(A, shear)
    chart_a = natural_chart(A, 0, ("I0", "BOX:I0"), DOMAIN_A, 3)
    chart_b = natural_chart(B, 0, ("I0", "BOX:I0"), DOMAIN_B, 3)
    for m in match_charts(chart_a, chart_b, 1e-10, workers=2):
        assert m.converged
        assert m.target == pytest.approx((m.source[0] + m.source[1], m.source[1]))


def test_signature_table(load):
    chart = natural_chart(load("family_a.json"), 0, ("I0", "BOX:I0"), DOMAIN_A, 2)
    frame = invariant_signature(chart, SPECS)
    assert list(frame.columns) == ["x1", "x2", "z1", "z2", "I0", "BOX:BOX:I0"]
    assert len(frame) == 4
    assert frame["I0"].tolist() == frame["z1"].tolist()
    assert frame.attrs["skipped"] == []


def test_compare_signatures():
    left = pd.DataFrame({"z1": [1.0, 2.0], "I0": [3.0, 4.0]})
    right = pd.DataFrame({"z1": [1.0, 2.0], "I0": [3.0, 4.5]})
    assert compare_signatures(left, left, ["z1", "I0"], 1e-9) is None
    mismatch = compare_signatures(left, right, ["z1", "I0"], 1e-9)
    assert mismatch == {"row": 1, "invariant": "I0", "value_a": 4.0, "value_b": 4.5, "residual": 0.5}


@pytest.mark.slow
def test_sheared_family_is_equivalent(load, shear):
    A = load("family_a.json")
    B = pushforward(A, shear)
    verdict = equivalence_test(A, B, specs=SPECS, domain=DOMAIN_A, domain_b=DOMAIN_B, grid=3, workers=2)
    assert verdict.verdict == EQUIVALENT, verdict.reason
    assert verdict.witness is None
    assert len(verdict.correspondence) == 9
    report = verdict.as_dict()
    assert report["chart"] == ["I0", "BOX:I0"]
    row = report["correspondence"][0]
    assert row["x1'"] == pytest.approx(row["x1"] + row["x2"])


@pytest.mark.slow
def test_perturbed_family_is_not_equivalent(load):
    A = load("family_a.json")
    B = load("family_a_perturbed.json")
    verdict = equivalence_test(A, B, specs=SPECS, domain=DOMAIN_A, grid=3, workers=2)
    assert verdict.verdict == NOT_EQUIVALENT
    assert verdict.witness["step"] == "signature"
    assert verdict.witness["invariant"] == "BOX:BOX:I0"
    x2, x2b = verdict.witness["point"][1], verdict.witness["matched"][1]
    assert verdict.witness["value_b"] - verdict.witness["value_a"] == pytest.approx(2 * (x2b ** 2 - x2 ** 2))


def test_degenerate_chart_is_inconclusive(load):
    A = load("family_a.json")
    verdict = equivalence_test(A, A, specs=SPECS, chart=("I0", "I0"), domain=DOMAIN_A, grid=2, workers=1)
    assert verdict.verdict == INCONCLUSIVE
    assert "chart construction failed" in verdict.reason


def test_default_battery_is_inconclusive_for_flat_symbols(load):
    A = load("family_a.json")
    verdict = equivalence_test(A, A, domain=DOMAIN_A, grid=2, workers=1)
    assert verdict.verdict == INCONCLUSIVE
    assert "signature evaluation failed" in verdict.reason


@pytest.mark.slow
def test_atlas(load, shear):
    A = load("family_a.json")
    B = pushforward(A, shear)
    verdict = atlas_test(A, B, [("I0", "BOX:I0"), ("I0", "BOX:BOX:I0")], specs=SPECS,
                         domain=DOMAIN_A, domain_b=DOMAIN_B, grid=2, workers=2)
    assert verdict.verdict == EQUIVALENT, verdict.reason
    assert len(verdict.as_dict()["charts"]) == 2
    with pytest.raises(ValueError):
        atlas_test(A, B, [])


def test_family_is_equivalent_to_itself_at_y0_zero(load):
    A = load("family_a.json")
    verdict = equivalence_test(A, A, specs=SPECS, domain=DOMAIN_A, grid=2, workers=1)
    assert verdict.verdict == EQUIVALENT, verdict.reason
    for row in verdict.as_dict()["correspondence"]:
        assert (row["x1'"], row["x2'"]) == pytest.approx((row["x1"], row["x2"]))


def test_pole_at_y0_is_a_degenerate_chart(plane):
    F = family(plane, {(2, 1): "1", (1, 2): "1", (1, 0): "1", (0, 0): "x1 + 1/y"})
    with pytest.raises(PoleError, match="y0 is a pole"):
        natural_chart(F, 0, ("I0", "BOX:I0"), DOMAIN_A, 2)
    verdict = equivalence_test(F, F, specs=SPECS, domain=DOMAIN_A, grid=2, workers=1)
    assert verdict.verdict == INCONCLUSIVE
    assert "chart construction failed" in verdict.reason
    assert natural_chart(F, 1, ("I0", "BOX:I0"), DOMAIN_A, 2).points


BASE_FAMILIES = [
    {(2, 1): "1", (1, 2): "1", (1, 0): "x2", (0, 0): "x1^2 + x2 + y"},
    {(2, 1): "1", (1, 2): "1", (1, 0): "x2", (0, 0): "x1^2 + 2*x2 + y"},
    {(2, 1): "1", (1, 2): "1", (1, 0): "x2 + 1", (0, 0): "x1^2 + x2 + y"},
]


@pytest.mark.slow
@pytest.mark.parametrize("coeffs", BASE_FAMILIES)
def test_random_shears_are_equivalent_both_ways(coeffs, plane, rng):
    A = family(plane, coeffs)
    (lo1, lo2), (hi1, hi2) = DOMAIN_A.lo, DOMAIN_A.hi
    for _ in range(5):
        c = rng.choice([Fraction(1, 2), Fraction(-1, 2), Fraction(1, 3), Fraction(-1, 4), Fraction(3, 4)])
        phi = Diffeo(plane, [expr("x1") + c * expr("x2"), expr("x2")], [expr("x1") - c * expr("x2"), expr("x2")])
        B = pushforward(A, phi)
        # x1' = x1 + c x2 stays inside the image of DOMAIN_A over the whole x2 range
        domain_b = Domain((lo1 + max(c * lo2, c * hi2), lo2), (hi1 + min(c * lo2, c * hi2), hi2))
        verdict = equivalence_test(A, B, specs=SPECS, domain=DOMAIN_A, domain_b=domain_b, grid=2, workers=2)
        assert verdict.verdict == EQUIVALENT, (c, verdict.reason)
        assert verdict.max_residual <= 1e-9
        for row in verdict.as_dict()["correspondence"]:
            assert row["x1'"] == pytest.approx(row["x1"] + float(c) * row["x2"])
            assert row["x2'"] == pytest.approx(row["x2"])
        swapped = equivalence_test(B, A, specs=SPECS, domain=domain_b, domain_b=DOMAIN_A, grid=2, workers=2)
        assert swapped.verdict == EQUIVALENT, (c, swapped.reason)


@pytest.mark.parametrize("coeffs", BASE_FAMILIES)
def test_fiber_dependent_term_breaks_equivalence(coeffs, plane):
    A = family(plane, coeffs)
    B = family(plane, {**coeffs, (1, 0): coeffs[(1, 0)] + " + y/10"})
    verdict = equivalence_test(A, B, specs=SPECS, domain=DOMAIN_A, grid=2, workers=1)
    assert verdict.verdict == NOT_EQUIVALENT
    assert verdict.witness["step"] == "y0-independence"
    swapped = equivalence_test(B, A, specs=SPECS, domain=DOMAIN_A, grid=2, workers=1)
    assert swapped.verdict == NOT_EQUIVALENT
    assert swapped.witness["step"] == "y0-independence"
