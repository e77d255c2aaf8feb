import itertools
import random

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conormal import Ideal, PolynomialRing, budget, dimension_degree, eliminate, make_ring
from conormal.errors import BudgetExceededError, NonHomogeneousError, NotZeroDimensionalError
from conormal.groebner import (
    hilbert_numerator,
    ideal_quotient,
    intersect,
    is_reduced_basis,
    radical_membership,
    s_polynomial_check,
    saturate,
    saturation,
    standard_monomials,
    zero_dim_colength,
)
from conormal.primes import to_sympy

from _corpus import R3, X, Y, Z, ideal_corpus, random_element, random_ideal

CORPUS = ideal_corpus(100)


def test_small_known_bases():
    R, (x, y, z) = make_ring(["x", "y", "z"], order="lex")
    G = Ideal([x - z**2, y - z**3], R).reduced().gens
    assert sorted(str(g) for g in G) == ["x - z^2", "y - z^3"]
    G = eliminate(Ideal([x - z**2, y - z**3], R), ["z"])
    assert G.canonical_strings() == ["x^3 - y^2"]
    S, (a, b) = make_ring(["a", "b"])
    I = intersect(Ideal([a, b], S), Ideal([a, b - 1], S))
    assert I == Ideal([a, b**2 - b], S)


def _sympy_reduced(I, order):
    gens = sympy.symbols(" ".join(I.ring.variables))
    exprs = [to_sympy(g).as_expr() for g in I.gens]
    G = sympy.groebner(exprs, *gens, order=order)
    return {sympy.expand(sympy.Poly(g, *gens).monic().as_expr()) for g in G.exprs}


@pytest.mark.parametrize("k", range(25))
def test_reduced_basis_agrees_with_sympy(k):
    I = random_ideal(500 + k)
    for name, sym in (("grevlex", "grevlex"), ("lex", "lex")):
        ours = I.ring.with_order(name)
        G = Ideal([g.to_ring(ours) for g in I.gens], ours).reduced().gens
        mine = {sympy.expand(to_sympy(g).monic().as_expr()) for g in G}
        assert mine == _sympy_reduced(I, sym)


def test_s_polynomial_post_check_on_corpus():
    for I in CORPUS:
        G = I.groebner_basis()
        assert s_polynomial_check(G)
        assert is_reduced_basis(I.reduced().gens)
        for g in I.gens:
            assert I.normal_form(g) == 0


def test_elimination_identities():
    for I in CORPUS[:60]:
        E = eliminate(I, ["x"])
        for g in E.gens:
            assert "x" not in g.variables()
            assert I.contains(g.to_ring(R3))
        lex = R3.with_order("lex")
        for g in Ideal([h.to_ring(lex) for h in I.gens], lex).groebner_basis():
            if "x" not in g.variables():
                assert E.contains(g.to_ring(E.ring))


def test_saturation_identities():
    for k, I in enumerate(CORPUS):
        f = random_element(900 + k)
        S, e = saturate(I, f)
        assert S.contains_ideal(I)
        for g in S.gens:
            assert I.contains(f**e * g)
        assert saturation(S, f) == S
        # element route and iterated quotients agree
        J = Ideal([f], R3)
        assert saturation(I, J, method="quotient") == S


def test_quotient_and_intersection_identities():
    for k in range(0, 100, 2):
        I, J = CORPUS[k], CORPUS[k + 1]
        Q = ideal_quotient(I, J)
        assert Q.contains_ideal(I)
        assert I.contains_ideal(Q * J)
        M = intersect(I, J)
        assert I.contains_ideal(M) and J.contains_ideal(M)
        assert M.contains_ideal(I * J)


def test_saturation_examples():
    R, (x, y) = make_ring(["x", "y"])
    I = Ideal([x**2 * y, x * y**2], R)
    assert saturation(I, x) == Ideal([y], R)
    assert saturation(I, Ideal([x, y], R)) == Ideal([x * y], R)
    assert saturation(Ideal([x**2, x * y], R), Ideal([x, y], R)) == Ideal([x], R)
    S, e = saturate(Ideal([x**3 * y], R), Ideal([x], R))
    assert S == Ideal([y], R) and e == 3


def test_radical_membership():
    R, (x, y) = make_ring(["x", "y"])
    I = Ideal([x**3, y**2], R)
    assert radical_membership(x + y, I)
    assert not radical_membership(x + 1, I)


def test_complete_intersection_degrees_in_p3():
    rng = random.Random(77)
    P3 = PolynomialRing(["a", "b", "c", "d"])
    for degs in [(2,), (3,), (2, 2), (2, 3), (1, 2, 2), (2, 2, 2)]:
        gens = []
        for d in degs:
            f = P3.zero
            for m in itertools.product(range(d + 1), repeat=4):
                if sum(m) == d:
                    f = f + P3.from_terms([(rng.randint(-5, 5), m)])
            gens.append(f)
        dd = dimension_degree(Ideal(gens, P3), "projective")
        prod = 1
        for d in degs:
            prod *= d
        assert (dd.dim, dd.degree) == (3 - len(degs), prod)


def test_dimension_conventions():
    R, (x, y, z) = make_ring(["x", "y", "z"])
    assert tuple(dimension_degree(Ideal([R.one], R), "affine")) == (-1, 0)
    assert tuple(dimension_degree(Ideal([x, y, z], R), "projective")) == (-1, 0)
    assert tuple(dimension_degree(Ideal([x * y - 1], R), "affine")) == (2, 2)
    with pytest.raises(NonHomogeneousError):
        dimension_degree(Ideal([x - 1], R), "projective")
    cyclic = [
        x + y + z,
        x * y + y * z + z * x,
        x * y * z - 1,
    ]
    assert zero_dim_colength(Ideal(cyclic, R)) == 6


def test_hilbert_numerator_small():
    # k[x,y]/(x^2, xy): 1 - 2 t^2 + t^3
    assert hilbert_numerator([(2, 0), (1, 1)], 2)[:4] == [1, 0, -2, 1]


@pytest.mark.parametrize("k", range(30))
def test_colength_matches_enumeration(k):
    rng = random.Random(3000 + k)
    gens = [X ** rng.randint(1, 4), Y ** rng.randint(1, 4), Z ** rng.randint(1, 3)]
    gens += [R3.random_element(rng, terms=2, degree=3) for _ in range(2)]
    I = Ideal(gens, R3)
    try:
        n = zero_dim_colength(I)
    except NotZeroDimensionalError:
        pytest.skip("not zero-dimensional")
    assert n == len(standard_monomials(I))


@given(st.integers(1, 6), st.integers(1, 6))
def test_colength_of_monomial_box(a, b):
    R, (x, y) = make_ring(["x", "y"])
    assert zero_dim_colength(Ideal([x**a, y**b], R)) == a * b


def test_budget_cap():
    R, (x, y, z, w) = make_ring(["x", "y", "z", "w"])
    cyc = [x + y + z + w, x * y + y * z + z * w + w * x, x * y * z + y * z * w + z * w * x + w * x * y, x * y * z * w - 1]
    with pytest.raises(BudgetExceededError) as info:
        with budget(max_steps=10):
            Ideal(cyc, R).groebner_basis()
    assert info.value.limit == 10
    with budget(max_steps=100000):
        assert tuple(dimension_degree(Ideal(cyc, R), "affine")) == (1, 4)
