"""Acceptance gate: one test per criterion, each under its own wall-clock cap.

Every test records PASS or FAIL in ``conftest.CRITERIA``; the terminal summary
prints one line per criterion.
"""

import json
import random
import time
from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path

import conftest

from conormal import (
    FamilySpec,
    Ideal,
    check_degree_conservation,
    check_jump_criterion,
    dimension_degree,
    eliminate,
    gauss_map_plucker,
    incidence_cover,
    make_ring,
    plane_curve_report,
    saturate,
    schottky_row,
    singular_locus,
    specialize_cycle,
)
from conormal.degrees import NODAL_CUBIC_NOTE, gauss_degree_trivialized
from conormal.errors import DomainError
from conormal.geometry import exceptional_locus, generic_finiteness_check
from conormal.groebner import ideal_quotient, intersect, s_polynomial_check, same_radical
from conormal.schottky import (
    QUADRIC_CHI_IC,
    determinantal_oracle,
    hyperelliptic_g4_pair,
    nodal_theta_chi_ic,
    symmetric_determinantal_degree,
)
from conormal.specialization import contains_fiber_conormal, extras_in_singular_locus

from _corpus import R3, ideal_corpus, random_element

GOLDEN = Path(__file__).parent / "golden"
SEED = 1729


@contextmanager
def criterion(num, title, cap):
    start = time.perf_counter()
    ok, note = False, ""
    try:
        yield
        ok = True
    except AssertionError as exc:
        note = str(exc).splitlines()[0][:160] if str(exc) else "assertion failed"
        raise
    except Exception as exc:
        note = f"{type(exc).__name__}: {exc}"[:160]
        raise
    finally:
        elapsed = time.perf_counter() - start
        if ok and elapsed > cap:
            ok, note = False, f"over the time cap ({elapsed:.1f} s)"
        conftest.CRITERIA[num] = (title, ok, elapsed, cap, note)
    assert elapsed <= cap, f"criterion {num} took {elapsed:.1f} s, cap {cap} s"


def labels(cycle):
    return sorted((c.label(), c.multiplicity) for c in cycle.components)


def proportional(a, b):
    """Two coordinate vectors of polynomials agree up to one nonzero scalar."""
    return all(a[i] * b[j] == a[j] * b[i] for i in range(len(a)) for j in range(len(a))) and any(a)


# ---------------------------------------------------------------------------


def test_criterion_1_fat_point_example():
    with criterion(1, "two-quadric family: fat point, Gauss map, cover of degree 4", 300):
        R, (x, y, z, s) = make_ring(["x", "y", "z", "s"])
        F = FamilySpec.from_polys([x**2 + y**2 + s, x**2 + z**2 - s], parameter="s")
        # (a) relative singular locus (it contains the family's equations)
        sing = singular_locus(F, relative=True)
        for g in (x * y, x * z, y * z):
            assert g in sing, f"{g} not in the relative singular locus"
        assert same_radical(sing, Ideal([x, y, z, s], R))
        E = eliminate(sing, ["s"])
        assert same_radical(E, Ideal([E.ring.gen(v) for v in "xyz"], E.ring))
        # (b) Gauss map; lexicographic 2-subsets, reindexed by the complementary column
        G = gauss_map_plucker(F)
        by_cols = dict(zip(G.columns, G.forms))
        complement = [by_cols[(1, 2)], by_cols[(0, 2)], by_cols[(0, 1)]]
        assert proportional(complement, [y * z, x * z, -x * y])
        # (c) incidence cover over the exceptional point
        point = {"x": 0, "y": 0, "z": 0, "s": 0}
        cover, deg = incidence_cover(G, point, seed=SEED)
        assert deg == 4, f"generic degree {deg}"
        locus = exceptional_locus(G, point)
        assert dimension_degree(locus, "affine").dim == 2  # affine cone over a curve in P^2
        # (d) generically finite over its image in P V
        vnames = [f"v{i}" for i in (1, 2, 3)]
        assert generic_finiteness_check(cover, vnames, [list(G.names)], seed=SEED)


def test_criterion_2_node_family():
    with criterion(2, "node family: cycle at s = 0 and jump at the origin", 30):
        R, (x, y, s) = make_ring(["x", "y", "s"])
        F = FamilySpec.from_polys([x * y - s], parameter="s")
        cyc = specialize_cycle(F, 0, seed=SEED)
        jump = check_jump_criterion(F, 0, seed=SEED)
        got = labels(cyc)
        assert jump.applicable and jump.verdict
        assert got == [("(x)", 1), ("(y)", 1), ("(y, x)", 1)], f"specialization is {got}"
        assert jump.jump_components == [("(y, x)", 1)], f"jump reports {jump.jump_components}"


def test_criterion_3_plane_curve_degrees():
    with criterion(3, "plane-curve degrees on both routes", 60):
        R, (x, y) = make_ring(["x", "y"])
        cases = {
            "x^2 + y^2 - 1": -2,
            "y^2 - x^3": -3,
            "x^4 + y^4 + 2*x^2*y - 1": 4,
            "x + 3*y - 2": -2,
        }
        for text, expected in cases.items():
            f = R.parse(text)
            polar = plane_curve_report(f, "polar", seed=SEED).total
            euler = plane_curve_report(f, "euler-obstruction", seed=SEED).total
            assert polar == euler == expected, f"{text}: polar {polar}, euler {euler}"


def test_criterion_4_nodal_cubic_note():
    with criterion(4, "nodal cubic: -2 on both routes with the -3 note", 60):
        R, (x, y) = make_ring(["x", "y"])
        f = R.parse("y^2 - x^3 - x^2")
        for route in ("polar", "euler-obstruction"):
            rep = plane_curve_report(f, route, seed=SEED)
            assert rep.total == -2
            assert rep.warnings == [NODAL_CUBIC_NOTE] and "-3" in rep.warnings[0]


def test_criterion_5_degree_conservation():
    with criterion(5, "degree conservation: cusp pencil and conic pencil", 300):
        R, (x, y, s) = make_ring(["x", "y", "s"])
        F = FamilySpec.from_polys([y**2 - x**3 - s * x], parameter="s", mode="biprojective-plane")
        rep = check_degree_conservation(F, [0, 1, -1], seed=SEED)
        assert rep.totals == [0, 0, 0] and rep.verdict, f"totals {rep.totals}"
        rows = sorted((m, d) for _, m, d in rep.details[0].components)
        assert rows == [(1, -3), (3, 1)], f"cusp fibre {rows}"
        # conic pencil; the golden file was written by the CLI and checked against
        # smooth conic -2, lines -2 each and Milnor-plus-multiplicity 1 + 2 - 1 = 2 at the node
        golden = json.loads((GOLDEN / "conic_pencil.json").read_text())["results"]
        Q = FamilySpec.from_polys([x**2 - y**2 - s], parameter="s", mode="biprojective-plane")
        rep = check_degree_conservation(Q, [0, 1, -1], seed=SEED)
        assert rep.verdict and rep.totals == [g["total"] for g in golden["samples"]] == [-2, -2, -2]
        got = [(b, m, d) for b, m, d in rep.details[0].components]
        want = [(c["base"], c["multiplicity"], c["degree"]) for c in golden["samples"][0]["components"]]
        assert got == want


def divisor_corpus(count, seed):
    """Families ``g + s h`` with ``g`` in the square of the maximal ideal and ``h(0) != 0``."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = 2 if rng.random() < 0.6 else 3
        names = ["x", "y", "z"][:n]
        R, gens = make_ring(names + ["s"])
        g = R.zero
        for _ in range(rng.randint(2, 3)):
            e = [0] * (n + 1)
            for _ in range(rng.randint(2, 3)):
                e[rng.randrange(n)] += 1
            g = g + R.from_terms([(rng.choice([-3, -2, -1, 1, 2, 3]), tuple(e))])
        h = R.constant(rng.choice([-2, -1, 1, 2])) + gens[rng.randrange(n)] * rng.randint(-2, 2)
        if len(g.variables()) < n:
            continue
        F = FamilySpec.from_polys([g + R.gen("s") * h], positions=names, parameter="s")
        try:
            F.check_generically_reduced(0)
        except DomainError:
            continue
        out.append(F)
    return out


def test_criterion_6_property_suite():
    with criterion(6, "random divisor families: effective, jump, localized extras", 600):
        fams = divisor_corpus(24, 11)
        assert len(fams) >= 20
        for F in fams:
            cyc = specialize_cycle(F, 0, seed=SEED)
            assert cyc.is_effective(), str(F)
            assert contains_fiber_conormal(F, 0, cyc), str(F)
            assert extras_in_singular_locus(F, 0, cyc), str(F)
            jump = check_jump_criterion(F, 0, seed=SEED)
            # the origin is singular on the zero fibre and h(0) != 0, so the hypothesis holds
            assert jump.applicable and jump.verdict, f"{F}: {jump.message}"
        rng = random.Random(SEED)
        smooth = 0
        for F in fams:
            if smooth >= 12:
                break
            s0 = Fraction(rng.randint(-40, 40), rng.randint(1, 9))
            if s0 == 0 or not singular_locus(F.fiber(s0)).is_unit():
                continue
            cyc = specialize_cycle(F, s0, seed=SEED)
            assert [c.multiplicity for c in cyc.components] == [1], f"{F} at {s0}: {cyc}"
            smooth += 1
        assert smooth >= 10


def test_criterion_7_trivialized_gauss_degrees():
    with criterion(7, "trivialized Gauss degrees: circle, cusp, line, corpus", 60):
        R, (x, y) = make_ring(["x", "y"])
        for text, expected in {"x^2 + y^2 - 1": 2, "y^2 - x^3": 1, "x - 2*y + 1": 0}.items():
            F = FamilySpec.from_polys([R.parse(text)])
            assert gauss_degree_trivialized(F, seed=SEED) == expected, text
        rng = random.Random(SEED)
        checked = 0
        while checked < 10:
            ring = R if checked % 2 == 0 else R3
            f = ring.random_element(rng, terms=3, degree=3, height=4) + rng.randint(1, 5)
            if f.is_constant():
                continue
            F = FamilySpec.from_polys([f])
            if not singular_locus(F).is_unit():
                continue
            degs = {gauss_degree_trivialized(F, seed=k) for k in range(3)}
            assert len(degs) == 1 and min(degs) >= 0, f"{f}: {degs}"
            checked += 1


def test_criterion_8_schottky_table():
    with criterion(8, "closed-form table at genus four and the determinantal oracle", 10):
        row = schottky_row(4)
        assert row.jacobian_degree == 20
        assert hyperelliptic_g4_pair() == (8, 14)
        assert row.hyperelliptic_degree == 8
        assert row.prym_degree == 6 and row.d_value == 4
        assert row.n0_threshold == 22
        assert (nodal_theta_chi_ic(4, 1), nodal_theta_chi_ic(4, 2)) == (22, 20)
        assert (QUADRIC_CHI_IC["smooth"], QUADRIC_CHI_IC["cone"], QUADRIC_CHI_IC["two-planes"]) == (4, 3, 6)
        for m, r in [(3, 1), (3, 2), (4, 3)]:
            assert symmetric_determinantal_degree(m, r) == determinantal_oracle(m, r)


def test_criterion_9_engine_soundness():
    with criterion(9, "engine: S-polynomial post-check and ideal identities", 600):
        corpus = ideal_corpus(100)
        for k, I in enumerate(corpus):
            assert s_polynomial_check(I.groebner_basis())
            f = random_element(900 + k)
            S, e = saturate(I, f)
            assert S.contains_ideal(I) and all(I.contains(f**e * g) for g in S.gens)
            J = corpus[(k + 1) % len(corpus)]
            Q = ideal_quotient(I, J)
            assert Q.contains_ideal(I) and I.contains_ideal(Q * J)
            M = intersect(I, J)
            assert I.contains_ideal(M) and J.contains_ideal(M) and M.contains_ideal(I * J)
            E = eliminate(I, ["x"])
            assert all(I.contains(g.to_ring(R3)) for g in E.gens)
            assert s_polynomial_check(E.groebner_basis())
