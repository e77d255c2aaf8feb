from fractions import Fraction

import pytest

from conormal import (
    FamilySpec,
    Ideal,
    check_degree_conservation,
    check_jump_criterion,
    make_ring,
    relative_conormal_ideal,
    specialize_cycle,
)
from conormal.errors import DomainError
from conormal.groebner import zero_dim_colength
from conormal.specialization import (
    contains_fiber_conormal,
    extras_in_singular_locus,
    fiber_ideal,
    local_multiplicity,
)

S, (x, y, s) = make_ring(["x", "y", "s"])


def family(f, mode="affine-trivialized"):
    return FamilySpec.from_polys([f], positions=["x", "y"], parameter="s", mode=mode)


def labels(cycle):
    return sorted((c.label(), c.multiplicity) for c in cycle.components)


def test_node_family_cycle():
    F = family(x * y - s)
    cyc = specialize_cycle(F, 0, seed=3)
    assert labels(cyc) == [("(x)", 1), ("(y)", 1), ("(y, x)", 2)]
    assert cyc.is_effective()
    assert cyc.multidegree == [2, 2]


def test_node_origin_length_oracle():
    # fibre at s = 0 is (xy, x xi_x - y xi_y); at a point of the origin's conormal with
    # xi = (a, b), a b != 0, the local ring is k[x, y]/(xy, a x - b y) of length 2
    R, (u, v) = make_ring(["x", "y"])
    a, b = Fraction(3), Fraction(-5, 7)
    assert zero_dim_colength(Ideal([u * v, a * u - b * v], R)) == 2


def test_generic_fibre_is_one_reduced_component():
    F = family(x * y - s)
    for s0 in (1, -3, Fraction(2, 5)):
        cyc = specialize_cycle(F, s0, seed=1)
        assert [c.multiplicity for c in cyc.components] == [1]
        assert cyc.components[0].base_dim == 1


def test_cusp_pencil_cycle():
    F = family(y**2 - x**3 - s * x, mode="biprojective-plane")
    cyc = specialize_cycle(F, 0, seed=5)
    assert labels(cyc) == [("(x^3 - y^2)", 1), ("(y, x)", 3)]


def test_structural_checks_on_node():
    F = family(x**2 - y**2 + x**3 - s)
    cyc = specialize_cycle(F, 0, seed=2)
    assert contains_fiber_conormal(F, 0, cyc)
    assert extras_in_singular_locus(F, 0, cyc)


def test_conservation_reports():
    rep = check_degree_conservation(family(x * y - s, "biprojective-plane"), [0, 1, -2], seed=4)
    assert rep.totals == [-2, -2, -2] and rep.verdict and rep.route == "polar"
    rep = check_degree_conservation(family(x * y - s), [0, 1, -2], seed=4)
    assert rep.totals == [2, 2, 2] and rep.verdict


def test_jump_criterion():
    rep = check_jump_criterion(family(x * y - s), 0, seed=1)
    assert rep.applicable and rep.verdict
    assert rep.jump_components == [("(y, x)", 2)]
    rep = check_jump_criterion(family(x * y - s), 1, seed=1)
    assert not rep.applicable and rep.message == "criterion not applicable"


def test_local_multiplicity_is_seed_independent():
    F = family(x * y - s)
    K = relative_conormal_ideal(F)
    fib = fiber_ideal(K, F, 0)
    T = fib.ring
    lam0 = Ideal([T.gen("x"), T.gen("y")], T)
    amb = F.ambient.without_parameter()
    assert {local_multiplicity(fib, lam0, amb, 0, seed=k) for k in range(5)} == {2}


def test_parameter_required():
    F = FamilySpec.from_polys([x * y - 1], positions=["x", "y", "s"])
    with pytest.raises(DomainError):
        specialize_cycle(F, 0)


@pytest.mark.parametrize(
    "germ, mu, mult",
    [("x*y", 1, 2), ("y^2 - x^3", 2, 2), ("y^2 - x^4", 3, 2), ("x^2*y - y^3", 4, 3), ("y^3 - x^4", 6, 3)],
)
def test_origin_coefficient_is_milnor_plus_multiplicity_minus_one(germ, mu, mult):
    # for f - s the vanishing-cycle count at the origin is mu, and Lambda(origin) also
    # collects the polar contribution mult - 1 of the special fibre
    f = S.parse(germ) - s
    cyc = specialize_cycle(family(f), 0, seed=6)
    P, (u, v) = make_ring(["x", "y"])
    assert cyc.multiplicity_of(Ideal([u, v], P)) == mu + mult - 1
