"""Degrees of conic Lagrangian cycles.

Two settings are covered:

* trivialized affine space, where the degree of ``Lambda`` is the degree of its
  projection to ``P V`` (a generic fibre count, ``0`` when not dominant);
* plane curves in ``P^2``, where ``deg Lambda_C = -(2d - delta_1)`` with
  ``delta_1`` the class.  The Euler-obstruction route computes the same number
  as ``-(chi(C_smooth) + sum of multiplicities at singular points)``.

The plane identity comes from ``chi(C, Eu) = 2d - delta_1``: for a curve with
nodes and cusps, ``delta_1 = d(d-1) - 2 nodes - 3 cusps`` and
``chi(C, Eu) = 3d - d^2 + 2 nodes + 3 cusps`` (smooth Euler characteristic
``3d - d^2`` corrected by ``+1`` per node and ``+2`` per cusp once ``Eu = mult``
is counted in).  Both sides agree, and the polar route does not need the
classification.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations_with_replacement

from .algebra import PolynomialRing, random_rational
from .errors import (
    DegenerateChoiceError,
    DomainError,
    NonHomogeneousError,
    NotZeroDimensionalError,
    UnsupportedSingularityError,
)
from .geometry import MAX_RETRIES, FamilySpec, conormal_ideal, maximal_minors, minors, two_agreeing
from .groebner import Ideal, dimension_degree, eliminate, saturation, zero_dim_colength
from .primes import minimal_primes, squarefree_part

NODAL_CUBIC_NOTE = (
    "nodal cubic: both routes give -2; the value -3 that is sometimes quoted for "
    "this curve disagrees with the computed class 4 and Eu(node) = 2"
)


@dataclass
class DegreeReport:
    total: int
    components: list            # [(support id, multiplicity, degree)]
    route: str
    seed: int
    warnings: list = field(default_factory=list)

    def check(self):
        return self.total == sum(m * d for _, m, d in self.components)


@dataclass
class SingularPoint:
    """A Galois orbit of singular points: ``count`` points sharing ``mu`` and ``multiplicity``."""

    prime: list
    count: int
    mu: int
    multiplicity: int
    kind: str


@dataclass
class CurveSingularityProfile:
    degree: int
    points: list

    def nodes(self):
        return sum(p.count for p in self.points if p.kind == "node")

    def cusps(self):
        return sum(p.count for p in self.points if p.kind == "cusp")

    def supported(self):
        return all(p.kind != "unsupported" for p in self.points)


# ---------------------------------------------------------------------------
# trivialized mode


def _gauss_fiber(F, v0):
    ring = F.ring
    jac = F.jacobian()
    rows = jac + [[ring.constant(c) for c in v0]]
    big = [m for m in minors(rows, F.codim + 1) if m]
    mins = [m for _, m in maximal_minors(jac) if m]
    fib = Ideal(list(F.generators) + big, ring)
    fib = saturation(fib, Ideal(mins, ring), method="elements")
    try:
        return zero_dim_colength(fib)
    except NotZeroDimensionalError:
        return None


def image_is_dominant(F):
    """The projection of the conormal to covectors has an ``n``-dimensional image cone."""
    lam = conormal_ideal(F)
    img = eliminate(lam, list(F.ambient.positions))
    return dimension_degree(img, "affine").dim == F.ambient.n


def gauss_degree_trivialized(F, seed=0, retries=MAX_RETRIES, cross_check=True):
    """Degree of ``P Lambda_X -> P V`` by counting the fibre over a random direction."""
    if F.parameter is not None:
        raise DomainError("gauss_degree_trivialized takes a family without parameter")
    rng = random.Random(seed)
    n = F.ambient.n

    def draw():
        return _gauss_fiber(F, [random_rational(rng) for _ in range(n)])

    deg = two_agreeing(draw, retries)
    if cross_check:
        dom = image_is_dominant(F)
        if dom != (deg > 0):
            raise DegenerateChoiceError(
                f"fibre count {deg} contradicts the image dimension test (dominant={dom})"
            )
    return deg


def conormal_fiber_degree(lam, ambient, seed=0, retries=MAX_RETRIES):
    """Same count for an arbitrary conic ``Lambda`` in ``(x, xi)``: fix ``xi`` to a random direction."""
    rng = random.Random(seed)
    ring = lam.ring
    n = ambient.n

    def draw():
        v0 = [random_rational(rng) for _ in range(n)]
        eqs = []
        # xi proportional to v0 and normalized by a random chart
        for i in range(n):
            for j in range(i + 1, n):
                eqs.append(ring.gen(ambient.covectors[i]) * v0[j] - ring.gen(ambient.covectors[j]) * v0[i])
        l = ring.constant(-1)
        for v in ambient.covectors:
            l = l + ring.gen(v) * random_rational(rng)
        eqs.append(l)
        try:
            return zero_dim_colength(lam + Ideal(eqs, ring))
        except NotZeroDimensionalError:
            return None

    return two_agreeing(draw, retries)


# ---------------------------------------------------------------------------
# plane curves


def _homogeneous_form(f, hvar="z_h"):
    """Return a homogeneous form in three variables for a plane-curve input."""
    vs = f.ring.variables
    if f.is_homogeneous() and len(vs) == 3:
        return f
    if len(vs) == 2:
        return f.homogenize(f.ring.fresh_name(hvar))
    if f.is_homogeneous():
        raise NonHomogeneousError("homogeneous plane curves need exactly three variables")
    raise DomainError("plane-curve input must be affine in two or homogeneous in three variables")


def _check_squarefree(G):
    if squarefree_part(G).total_degree() != G.total_degree():
        raise DomainError(f"{G} is not squarefree")


def _random_change(G, rng):
    """``G`` after a random invertible linear change, in a fresh ring ``(a, b, c)``."""
    R = PolynomialRing(["a", "b", "c"])
    while True:
        M = [[rng.randint(-4, 4) for _ in range(3)] for _ in range(3)]
        det = (
            M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
            - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
            + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0])
        )
        if det:
            break
    imgs = {}
    for i, v in enumerate(G.ring.variables):
        e = R.zero
        for j, g in enumerate(R.gens):
            e = e + g * M[i][j]
        imgs[v] = e
    return G.subs(imgs, ring=R)


def _chart(H):
    """Dehomogenize at the last variable ``c``."""
    return H.dehomogenize("c")


def polar_multidegrees(f, seed=0, retries=MAX_RETRIES):
    """``(delta_0, delta_1)``: line section count and class of the plane curve ``f``."""
    G = _homogeneous_form(f)
    _check_squarefree(G)
    rng = random.Random(seed)

    def draw():
        H = _random_change(G, rng)
        grads = [H.diff(v) for v in H.ring.variables]
        a = [random_rational(rng) for _ in range(3)]
        polar = grads[0] * a[0] + grads[1] * a[1] + grads[2] * a[2]
        h = _chart(H)
        A = h.ring
        gr = Ideal([_chart(g) for g in grads if g], A)
        if h.total_degree() != H.total_degree():
            return None
        line = A.constant(random_rational(rng))
        for v in A.gens:
            line = line + v * random_rational(rng)
        try:
            d0 = zero_dim_colength(saturation(Ideal([h, line], A), gr, method="elements"))
            pc = _chart(polar) if polar else A.zero
            d1 = zero_dim_colength(saturation(Ideal([h, pc], A), gr, method="elements"))
        except NotZeroDimensionalError:
            return None
        return (d0, d1)

    return two_agreeing(draw, retries)


def conormal_degree_plane_curve(f, seed=0):
    """``-(2d - delta_1)`` for a reduced plane curve."""
    G = _homogeneous_form(f)
    d = G.total_degree()
    _, d1 = polar_multidegrees(G, seed)
    return -(2 * d - d1)


def _local_multiplicity(h, P):
    """Least ``k`` with a ``k``-th partial derivative of ``h`` not vanishing on ``V(P)``."""
    vs = h.ring.variables
    for k in range(1, h.total_degree() + 1):
        for combo in combinations_with_replacement(vs, k):
            g = h
            for v in combo:
                g = g.diff(v)
            if g and not P.contains(g):
                return k
    return h.total_degree()


def singularity_profile(f, seed=0):
    """Singular points of the projective closure, grouped into rational orbits."""
    G = _homogeneous_form(f)
    _check_squarefree(G)
    rng = random.Random(seed)
    d = G.total_degree()
    for _ in range(MAX_RETRIES):
        H = _random_change(G, rng)
        h = _chart(H)
        if h.total_degree() != d:
            continue
        A = h.ring
        # no singular point may sit on the line at infinity of the chart
        grads = [H.diff(v) for v in H.ring.variables]
        at_inf = Ideal([H] + grads + [H.ring.gen("c")], H.ring)
        if dimension_degree(at_inf, "projective").dim != -1:
            continue
        T = Ideal([h, h.diff("a"), h.diff("b")], A)
        if T.is_unit():
            return CurveSingularityProfile(d, [])
        total = zero_dim_colength(T)
        pts = []
        for P in minimal_primes(T, seed):
            count = zero_dim_colength(P)
            away = zero_dim_colength(saturation(T, P))
            mu = (total - away) // count
            mult = _local_multiplicity(h, P)
            kind = {1: "node", 2: "cusp"}.get(mu, "unsupported")
            pts.append(SingularPoint(P.canonical_strings(), count, mu, mult, kind))
        pts.sort(key=lambda p: (p.mu, p.multiplicity, p.prime))
        return CurveSingularityProfile(d, pts)
    raise DegenerateChoiceError("could not find a chart containing every singular point")


def euler_obstruction_degree_curve(f, seed=0):
    """``-(chi(C_smooth) + sum mult_p)`` for curves whose singularities are nodes and cusps."""
    prof = singularity_profile(f, seed)
    bad = [p for p in prof.points if p.kind == "unsupported"]
    if bad:
        p = bad[0]
        raise UnsupportedSingularityError(
            f"singular point {p.prime} has local colength {p.mu}; only nodes and cusps are supported",
            local_data={"prime": p.prime, "mu": p.mu, "multiplicity": p.multiplicity},
        )
    d = prof.degree
    delta = sum(p.count for p in prof.points)
    genus = (d - 1) * (d - 2) // 2 - delta
    branches = sum(p.count * (2 if p.kind == "node" else 1) for p in prof.points)
    chi_smooth = 2 - 2 * genus - branches
    return -(chi_smooth + sum(p.count * p.multiplicity for p in prof.points))


def is_nodal_cubic(f, seed=0):
    G = _homogeneous_form(f)
    if G.total_degree() != 3:
        return False
    prof = singularity_profile(G, seed)
    return prof.nodes() == 1 and prof.cusps() == 0 and len(prof.points) == 1


def plane_curve_report(f, route="polar", seed=0):
    """Degree of the conormal of a plane curve with route tag and any warnings."""
    if route == "polar":
        deg = conormal_degree_plane_curve(f, seed)
    elif route == "euler-obstruction":
        deg = euler_obstruction_degree_curve(f, seed)
    else:
        raise DomainError(f"route {route!r} does not apply to plane curves")
    warnings = []
    if is_nodal_cubic(f, seed):
        warnings.append(NODAL_CUBIC_NOTE)
    return DegreeReport(deg, [(str(f), 1, deg)], route, seed, warnings)


# ---------------------------------------------------------------------------
# cycles


def _plane_checks(F, s0):
    """Conservation in the plane needs constant degree and no singular points at infinity."""
    f = F.fiber(s0).generators[0]
    g = F.generators[0]
    par = F.parameter
    degs = [sum(e[i] for i, v in enumerate(g.ring.variables) if v != par) for e in g.monomials()]
    if f.total_degree() != max(degs):
        raise DomainError(f"fibre at s = {s0} drops degree; the projective family is not flat in this chart")
    G = f.homogenize(f.ring.fresh_name("z_h"))
    grads = [G.diff(v) for v in G.ring.variables]
    at_inf = Ideal([G] + grads + [G.ring.gen(G.ring.variables[-1])], G.ring)
    if dimension_degree(at_inf, "projective").dim != -1:
        raise DomainError(f"fibre at s = {s0} is singular at infinity")


def component_degree(cycle, mode="affine-trivialized", seed=0, family=None, s0=None):
    """Per-component degrees and the weighted total of a Lagrangian cycle.

    Plane mode (``biprojective-plane``): curve supports go through the polar
    route on their projective closure, a point orbit of ``r`` points gives
    ``r``.  Trivialized mode: every support is counted by its generic fibre
    over ``P V``.
    """
    amb = cycle.ambient
    rows, total, warnings = [], 0, []
    if mode == "biprojective-plane":
        if amb.n != 2:
            raise DomainError("plane mode needs two position variables")
        if family is not None and s0 is not None:
            _plane_checks(family, s0)
        route = "polar"
        for c in cycle.sorted_components():
            if c.base_dim == 0:
                deg = zero_dim_colength(c.base)
            elif c.base_dim == 1:
                h = c.base.groebner_basis()[0]
                deg = conormal_degree_plane_curve(h, seed)
            else:
                raise DomainError(f"unrecognized support over {c.label()}")
            rows.append((c.label(), c.multiplicity, deg))
            total += c.multiplicity * deg
    elif mode == "affine-trivialized":
        route = "gauss-fiber"
        for c in cycle.sorted_components():
            if c.base_dim == 0:
                deg = zero_dim_colength(c.base)
            else:
                deg = conormal_fiber_degree(c.support, amb, seed)
            rows.append((c.label(), c.multiplicity, deg))
            total += c.multiplicity * deg
    else:
        raise DomainError(f"unknown mode {mode!r}")
    return DegreeReport(total, rows, route, seed, warnings)


def family_degree(F, route, seed=0):
    """Degree of a parameter-free family along ``route``."""
    if route == "gauss-fiber":
        deg = gauss_degree_trivialized(F, seed)
        return DegreeReport(deg, [(F.name, 1, deg)], route, seed, [])
    if F.codim != 1 or F.ambient.n != 2:
        raise DomainError(f"route {route} needs a plane curve (one generator in two variables)")
    return plane_curve_report(F.generators[0], route, seed)
