import random

import pytest

from conormal import FamilySpec, make_ring, plane_curve_report, singularity_profile
from conormal.degrees import (
    NODAL_CUBIC_NOTE,
    component_degree,
    conormal_degree_plane_curve,
    euler_obstruction_degree_curve,
    family_degree,
    gauss_degree_trivialized,
    polar_multidegrees,
)
from conormal.errors import DomainError, UnsupportedSingularityError
from conormal.geometry import singular_locus
from conormal.specialization import specialize_cycle

R, (x, y) = make_ring(["x", "y"])


def plucker_oracle(d, nodes=0, cusps=0):
    # class d(d-1) - 2 nodes - 3 cusps, degree -(2d - class)
    return -(2 * d - (d * (d - 1) - 2 * nodes - 3 * cusps))


@pytest.mark.parametrize(
    "text, expected",
    [
        ("x", -2),
        ("x^2 + y^2 - 1", -2),
        ("y^2 - x^3", -3),
        ("y^2 - x^3 - x^2", -2),
        ("x^4 + y^4 - 1", 4),
        ("x*y", -4),
        ("x^3 + y^3 - 1", 0),
    ],
)
def test_plane_curve_degrees_both_routes(text, expected):
    f = R.parse(text)
    assert conormal_degree_plane_curve(f, seed=1) == expected
    assert euler_obstruction_degree_curve(f, seed=1) == expected


def test_smooth_curves_follow_degree_formula():
    rng = random.Random(99)
    seen = 0
    while seen < 8:
        d = rng.randint(1, 4)
        f = R.random_element(rng, terms=4, degree=d, height=5) + x**d + y**d + rng.randint(1, 3)
        if f.total_degree() != d or not singular_locus(FamilySpec.from_polys([f])).is_unit():
            continue
        prof = singularity_profile(f, seed=seen)
        if prof.points:
            continue
        assert conormal_degree_plane_curve(f, seed=seen) == plucker_oracle(d)
        assert euler_obstruction_degree_curve(f, seed=seen) == plucker_oracle(d)
        seen += 1


def test_polar_multidegrees_of_conic():
    d0, d1 = polar_multidegrees(R.parse("x^2 + y^2 - 1").homogenize("z"), seed=0)
    assert (d0, d1) == (2, 2)


def test_profiles():
    prof = singularity_profile(R.parse("y^2 - x^3 - x^2"))
    assert (prof.nodes(), prof.cusps()) == (1, 0)
    prof = singularity_profile(R.parse("y^2 - x^3"))
    assert (prof.nodes(), prof.cusps()) == (0, 1)
    assert plucker_oracle(3, cusps=1) == -3 and plucker_oracle(3, nodes=1) == -2


def test_tacnode_is_unsupported():
    with pytest.raises(UnsupportedSingularityError) as info:
        euler_obstruction_degree_curve(R.parse("y^2 - x^4"))
    assert info.value.local_data["mu"] == 3
    # the polar route needs no classification; the closure has tacnodes at [0:0:1] and
    # [0:1:0], each lowering the class by mu + m - 1 = 4, so the class is 12 - 8 = 4
    assert conormal_degree_plane_curve(R.parse("y^2 - x^4")) == -(2 * 4 - 4)


def test_nodal_cubic_warning():
    rep = plane_curve_report(R.parse("y^2 - x^3 - x^2"), route="polar")
    assert rep.total == -2 and rep.warnings == [NODAL_CUBIC_NOTE]
    assert plane_curve_report(R.parse("y^2 - x^3"), route="polar").warnings == []


@pytest.mark.parametrize("text, expected", [("x^2 + y^2 - 1", 2), ("y^2 - x^3", 1), ("x", 0), ("x*y - 1", 2)])
def test_trivialized_gauss_degrees(text, expected):
    F = FamilySpec.from_polys([R.parse(text)])
    assert {gauss_degree_trivialized(F, seed=k) for k in range(3)} == {expected}


def test_family_degree_routes():
    F = FamilySpec.from_polys([R.parse("y^2 - x^3")])
    assert family_degree(F, "polar").total == -3
    assert family_degree(F, "gauss-fiber").total == 1
    S, (a, b, c) = make_ring(["a", "b", "c"])
    with pytest.raises(DomainError):
        family_degree(FamilySpec.from_polys([a * b - c]), "polar")


def test_component_degree_totals_match_rows():
    S, (a, b, s) = make_ring(["x", "y", "s"])
    F = FamilySpec.from_polys([a * b - s], parameter="s", mode="biprojective-plane")
    cyc = specialize_cycle(F, 0, seed=2)
    rep = component_degree(cyc, "biprojective-plane", seed=2, family=F, s0=0)
    assert rep.check() and rep.total == -2
    rep = component_degree(cyc, "affine-trivialized", seed=2)
    assert rep.check() and rep.total == 2
