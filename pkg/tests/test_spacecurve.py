import math

import pytest

from flexpuiseux import (
    AmbiguousLiftError,
    ProjectionError,
    YAxisComponentError,
    branch_order,
    compose,
    lift_branches,
    parse_polynomial,
    pencil_ideal,
    PuiseuxConfig,
    project,
)

from cases import ABCD, P_BC, P_BD, XYZ, three_quadrics, four_bar


def test_projection_matches_published_polynomials():
    gens = four_bar().generators
    assert project(gens, "b", "c") == parse_polynomial(P_BC, ("b", "c"))
    assert project(gens, "b", "d") == parse_polynomial(P_BD, ("b", "d"))


def test_projection_is_independent_of_elimination_order():
    gens = four_bar().generators
    assert project(gens, "b", "c", ["a", "d"]) == project(gens, "b", "c", ["d", "a"])


def test_single_generator_projection_is_itself():
    gens = four_bar().generators
    assert project(gens, "b", "a") == parse_polynomial("a^2 + b^2 + 2*a", ("b", "a"))


def test_projection_errors():
    x_only = [parse_polynomial("x^2 + y^2 + z^2", XYZ)]
    with pytest.raises(ProjectionError):
        project(x_only, "x", "y")
    with pytest.raises(ProjectionError):
        project(x_only, "x", "w")


def test_four_bar_branches():
    branches = lift_branches(list(four_bar().generators), "b", order=6)
    assert len(branches) == 2
    for sign, b in zip((1, -1), branches):
        assert b.ramification == 1
        assert branch_order(b) == 1
        s = b.series
        assert abs(s["a"].coefficient(2) + 0.5) < 1e-12
        assert abs(s["c"].coefficient(2) - complex(-8, 6 * sign) / 25) < 1e-9
        assert abs(s["d"].coefficient(1) - complex(2, 6 * sign) / 5) < 1e-9


def test_i3_branches_and_soundness():
    gens = pencil_ideal(three_quadrics(), 1, (0, 0))
    branches = lift_branches(gens, order=8)
    slopes = sorted(b.series["y"].coefficient(1).real for b in branches)
    assert slopes == pytest.approx([-(1 + math.sqrt(3)), -(1 - math.sqrt(3))], abs=1e-12)
    for b in branches:
        for g in gens:
            assert compose(g, b).is_zero()


def test_base_choice_skips_obstructed_hyperplanes():
    # the z axis lies in both x = 0 and y = 0
    gens = pencil_ideal(three_quadrics(), 3, (2, 1))
    branches = lift_branches(gens, order=6)
    assert {b.base for b in branches} == {"z"}
    axis = [b for b in branches if b.series["x"].is_zero() and b.series["y"].is_zero()]
    assert len(axis) == 1 and axis[0].multiplicity == 2
    with pytest.raises(YAxisComponentError):
        lift_branches(gens, "x", order=6)


def test_line_system():
    gens = [parse_polynomial(t, XYZ) for t in ("y - 2*x", "z + x")]
    (b,) = lift_branches(gens)
    assert b.render() == "x=t, y=2 * t, z=-t"
    assert b.truncation_order == math.inf


def test_smooth_curve_matches_projection_route():
    # twisted cubic through the origin, solved directly and via plane projections
    from flexpuiseux import spacecurve

    gens = [parse_polynomial(t, XYZ) for t in ("y - x^2 - y*z", "z - x*y + x^3")]
    fast = spacecurve._smooth_branch(gens, XYZ, "x", 7)
    assert fast is not None
    slow = spacecurve._lift_with_base(gens, XYZ, "x", 7, PuiseuxConfig())
    assert len(slow) == 1
    for v in ("y", "z"):
        for e in range(1, 7):
            assert abs(fast.series[v].coefficient(e) - slow[0].series[v].coefficient(e)) < 1e-9
    for g in gens:
        assert compose(g, fast).is_zero()


def test_base_independence_of_branch_count():
    gens = pencil_ideal(three_quadrics(), 1, (0, 0))
    by_x = lift_branches(gens, "x", order=6)
    by_y = lift_branches(gens, "y", order=6)
    assert len(by_x) == len(by_y) == 2


def test_ambiguity_is_reported():
    # two branches that separate only after the truncation order
    gens = [parse_polynomial(t, XYZ) for t in ("(y - x)*(y - x - x^9)", "z")]
    with pytest.raises(AmbiguousLiftError):
        lift_branches(gens, "x", order=4)


def test_minimality():
    gens = [parse_polynomial(t, XYZ) for t in ("y^2 - x^3", "z^2 - x^3")]
    for b in lift_branches(gens, "x", order=8):
        assert b.exponent_gcd() == 1
        assert b.ramification == 2


def test_unresolved_pair_is_flagged():
    gens = [parse_polynomial(t, XYZ) for t in ("(y - x)^2 - x^30", "z")]
    (b,) = lift_branches(gens, "x", order=4)
    assert not b.separated
