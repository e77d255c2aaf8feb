"""Singular loci, conormal ideals, Pluecker Gauss maps and the flag incidence cover.

Position variables ``x1..xn`` live in an affine space whose cotangent bundle is
trivialized, so covectors are the dual coordinates ``xi_<name>``.  A family is
cut out by ``f1..fd`` (a regular sequence) and may carry one parameter ``s``
on the affine line.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
import random

from .algebra import Polynomial, PolynomialRing, random_rational
from .errors import DegenerateChoiceError, DomainError, NotZeroDimensionalError
from .groebner import (
    Ideal,
    dimension_degree,
    eliminate,
    radical_membership,
    saturation,
    zero_dim_colength,
)

MAX_RETRIES = 5


# ---------------------------------------------------------------------------
# Specs


@dataclass(frozen=True)
class AmbientSpec:
    """Position, covector and optional parameter variable names."""

    positions: tuple
    covectors: tuple
    parameter: str | None = None
    mode: str = "affine-trivialized"

    def __post_init__(self):
        if len(self.positions) != len(self.covectors):
            raise DomainError("position and covector lists differ in length")
        names = list(self.positions) + list(self.covectors)
        if self.parameter is not None:
            names.append(self.parameter)
        if len(set(names)) != len(names):
            raise DomainError(f"variable names collide: {names}")
        if self.mode not in ("affine-trivialized", "biprojective-plane"):
            raise DomainError(f"unknown ambient mode {self.mode!r}")

    @classmethod
    def over(cls, positions, parameter=None, mode="affine-trivialized"):
        positions = tuple(positions)
        return cls(positions, tuple(f"xi_{v}" for v in positions), parameter, mode)

    @property
    def n(self):
        return len(self.positions)

    def base_variables(self):
        extra = (self.parameter,) if self.parameter else ()
        return self.positions + extra

    def base_ring(self):
        return PolynomialRing(self.base_variables())

    def cotangent_ring(self):
        """Ring in ``(x, s, xi)``; the parameter is omitted when absent."""
        return PolynomialRing(self.base_variables() + self.covectors)

    def without_parameter(self):
        return AmbientSpec(self.positions, self.covectors, None, self.mode)


@dataclass
class FamilySpec:
    """``X = V(f1..fd)`` inside affine space, optionally fibred over the ``parameter`` line."""

    ambient: AmbientSpec
    generators: tuple
    codim: int = None
    name: str = "X"

    def __post_init__(self):
        ring = self.ambient.base_ring()
        gens = []
        for g in self.generators:
            if not isinstance(g, Polynomial):
                g = ring(g)
            for v in g.variables():
                if v not in ring:
                    raise DomainError(f"generator {g} uses {v!r}, not a position or parameter")
            gens.append(g.to_ring(ring))
        if not gens:
            raise DomainError("a family needs at least one generator")
        self.generators = tuple(gens)
        if self.codim is None:
            self.codim = len(gens)
        if self.codim != len(gens):
            raise DomainError(
                f"declared codimension {self.codim} but {len(gens)} generators were given"
            )
        if self.codim > self.ambient.n:
            raise DomainError("more generators than position variables")

    @classmethod
    def from_polys(cls, gens, positions=None, parameter=None, name="X", mode="affine-trivialized"):
        """Build from polynomials; positions default to every non-parameter ring variable."""
        gens = list(gens)
        ring = gens[0].ring
        if positions is None:
            positions = [v for v in ring.variables if v != parameter]
        return cls(AmbientSpec.over(positions, parameter, mode), tuple(gens), name=name)

    @property
    def ring(self):
        return self.generators[0].ring

    @property
    def parameter(self):
        return self.ambient.parameter

    def ideal(self):
        return Ideal(self.generators, self.ring)

    def fiber(self, s0):
        """The fibre over ``s = s0`` as a parameter-free family."""
        if self.parameter is None:
            return self
        amb = self.ambient.without_parameter()
        ring = amb.base_ring()
        gens = tuple(g.subs({self.parameter: s0}).to_ring(ring) for g in self.generators)
        if any(not g for g in gens):
            raise DomainError(f"a generator vanishes identically on the fibre s = {s0}")
        return FamilySpec(amb, gens, self.codim, name=f"{self.name}_{s0}")

    def jacobian(self, relative=True):
        cols = list(self.ambient.positions)
        if not relative and self.parameter:
            cols.append(self.parameter)
        return [[f.diff(v) for v in cols] for f in self.generators]

    def check_dimension(self):
        """The generators must cut out codimension ``d`` (regular-sequence contract)."""
        I = self.ideal()
        expected = len(self.ring.variables) - self.codim
        got = dimension_degree(I, "affine").dim
        if got != expected:
            raise DomainError(
                f"{self.name} has dimension {got}, expected {expected} for a complete intersection"
            )
        return got

    def check_generically_reduced(self, s0=None):
        """Deterministic reducedness test for a fibre: ``dim Sing < dim X``."""
        fam = self.fiber(s0) if s0 is not None else self
        X = fam.ideal()
        dimX = dimension_degree(X, "affine").dim
        sing = singular_locus(fam)
        if dimX >= 0 and dimension_degree(sing, "affine").dim >= dimX:
            where = "" if s0 is None else f" at s = {s0}"
            raise DomainError(f"fibre{where} is not generically reduced")
        return True

    def __str__(self):
        return f"{self.name} = " + ", ".join(str(g) for g in self.generators)


# ---------------------------------------------------------------------------
# Matrices and minors


def determinant(rows):
    """Cofactor expansion; entries are polynomials in one ring."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = None
    for j in range(n):
        a = rows[0][j]
        if not a:
            continue
        sub = [r[:j] + r[j + 1 :] for r in rows[1:]]
        term = a * determinant(sub)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else rows[0][0] * 0


def maximal_minors(matrix):
    """``[(cols, det)]`` over lexicographic column subsets of size ``len(matrix)``."""
    d, n = len(matrix), len(matrix[0])
    out = []
    for cols in combinations(range(n), d):
        out.append((cols, determinant([[row[c] for c in cols] for row in matrix])))
    return out


def minors(matrix, k):
    """All ``k x k`` minors (row and column subsets in lexicographic order)."""
    out = []
    for rows in combinations(range(len(matrix)), k):
        for cols in combinations(range(len(matrix[0])), k):
            out.append(determinant([[matrix[r][c] for c in cols] for r in rows]))
    return out


# ---------------------------------------------------------------------------
# Singular loci and conormal ideals


def singular_locus(F, relative=True):
    """Generators plus all ``d x d`` Jacobian minors; no radical is taken."""
    mins = [m for _, m in maximal_minors(F.jacobian(relative))]
    return Ideal(list(F.generators) + mins, F.ring)


def _multiplier_graph(F, ring, lam):
    """``f_i`` and ``xi_j - sum_i lam_i d f_i / d x_j`` in ``ring``."""
    gens = [f.to_ring(ring) for f in F.generators]
    for v, xi in zip(F.ambient.positions, F.ambient.covectors):
        expr = ring.gen(xi)
        for i, f in enumerate(F.generators):
            expr = expr - ring.gen(lam[i]) * f.diff(v).to_ring(ring)
        gens.append(expr)
    return Ideal(gens, ring)


def _conormal(F):
    amb = F.ambient
    target = amb.cotangent_ring()
    lam = [f"lam{i + 1}" for i in range(F.codim)]
    while any(l in target for l in lam):
        lam = ["_" + l for l in lam]
    big = target.extend(lam, front=True)
    graph = _multiplier_graph(F, big, lam)
    pre = eliminate(graph, lam).to_ring(target)
    mins = [m.to_ring(target) for _, m in maximal_minors(F.jacobian(True))]
    mins = [m for m in mins if m]
    if not mins:
        raise DomainError(f"{F.name}: every Jacobian minor vanishes identically")
    Jm = Ideal(mins, target)
    out = saturation(pre, Jm, method="elements")
    if out.is_unit():
        raise DomainError(f"{F.name} is singular everywhere (non-reduced input)")
    return out, pre


def conormal_ideal(F, keep_presaturation=False):
    """Ideal of the conormal variety in ``(x, xi)``.

    Multipliers ``lam`` are adjoined with ``xi = sum lam_i grad f_i``, eliminated,
    and the result is saturated by the ideal of maximal Jacobian minors.
    """
    if F.parameter is not None:
        raise DomainError("conormal_ideal takes a family without parameter; use relative_conormal_ideal")
    out, pre = _conormal(F)
    return (out, pre) if keep_presaturation else out


def relative_conormal_ideal(F):
    """Relative conormal variety in ``(x, s, xi)``: the same construction fibrewise."""
    if F.parameter is None:
        raise DomainError("relative conormal needs a parameter variable")
    out, _ = _conormal(F)
    return out


def is_conic(I, covectors):
    """Every generator is homogeneous in the covector variables."""
    idx = [I.ring.index(v) for v in covectors]
    for g in I.gens:
        degs = {sum(e[i] for i in idx) for e in g.monomials()}
        if len(degs) > 1:
            return False
    return True


# ---------------------------------------------------------------------------
# Pluecker Gauss map


def plucker_names(n, d, stem="w"):
    """Names for lexicographic ``d``-subsets of ``1..n`` (``w12``, ``w13``, ...)."""
    sep = "_" if n > 9 else ""
    return [stem + sep.join(str(c + 1) for c in cols) for cols in combinations(range(n), d)]


@dataclass
class GaussMapSpec:
    """Pluecker coordinates of the (relative) Gauss map of a family.

    ``forms[k]`` is the minor on the ``k``-th lexicographic column subset of the
    Jacobian with respect to positions, sign as the determinant is written.
    """

    family: FamilySpec
    names: tuple
    columns: tuple
    forms: tuple
    _graph: Ideal = field(default=None, repr=False)

    def graph_ring(self):
        return PolynomialRing(self.family.ring.variables + self.names)

    def graph_ideal(self):
        """Family ideal plus ``w_K m_L - w_L m_K``, saturated by the minors."""
        if self._graph is None:
            R = self.graph_ring()
            w = [R.gen(v) for v in self.names]
            m = [f.to_ring(R) for f in self.forms]
            gens = [f.to_ring(R) for f in self.family.generators]
            for a, b in combinations(range(len(m)), 2):
                gens.append(w[a] * m[b] - w[b] * m[a])
            pre = Ideal(gens, R)
            self._graph = saturation(pre, Ideal([x for x in m if x], R), method="elements")
        return self._graph


def gauss_map_plucker(F):
    jac = F.jacobian(relative=True)
    mins = maximal_minors(jac)
    forms = tuple(m for _, m in mins)
    X = F.ideal()
    if all(radical_membership(m, X) for m in forms):
        raise DomainError(f"all maximal minors vanish on {F.name}; the Gauss map is undefined")
    names = tuple(plucker_names(F.ambient.n, F.codim))
    return GaussMapSpec(F, names, tuple(c for c, _ in mins), forms)


def wedge_incidence(v, w, n, d):
    """Coordinates of ``v ^ omega`` where ``omega`` has Pluecker coordinates ``w``.

    ``v`` is a list of ``n`` entries, ``w`` a dict ``cols -> entry`` over ``d``-subsets.
    The ``(d+1)``-subset ``K`` coordinate is ``sum_i (-1)^pos(i) v_i w_{K - i}``;
    it vanishes for all ``K`` exactly when the line ``v`` lies in the plane.
    """
    out = []
    for K in combinations(range(n), d + 1):
        total = None
        for pos, i in enumerate(K):
            rest = tuple(k for k in K if k != i)
            term = v[i] * w[rest]
            if pos % 2:
                term = -term
            total = term if total is None else total + term
        out.append(total)
    return out


def two_agreeing(draw, retries):
    """Call ``draw()`` until two consecutive successful values agree."""
    values, attempts = [], 0
    while True:
        attempts += 1
        if attempts > retries + 2:
            raise DegenerateChoiceError(f"random choices stayed degenerate after {attempts - 1} draws")
        v = draw()
        if v is None:
            values.clear()
            continue
        values.append(v)
        if len(values) >= 2:
            if values[-1] == values[-2]:
                return v
            values = values[-1:]


def _random_vector(rng, n):
    return [random_rational(rng) for _ in range(n)]


def _chart(ring, names, rng):
    """Random affine chart ``l(w) = 1`` on the projective coordinates ``names``."""
    expr = ring.constant(-1)
    for v in names:
        expr = expr + ring.gen(v) * random_rational(rng)
    return expr


def exceptional_locus(G, base_point):
    """Reduced ideal in the Pluecker variables of the graph fibre over ``base_point``.

    ``base_point`` maps every position (and the parameter, if any) to a rational.
    """
    from .primes import radical

    graph = G.graph_ideal()
    R = graph.ring
    base_vars = G.family.ring.variables
    missing = [v for v in base_vars if v not in base_point]
    if missing:
        raise DomainError(f"base point leaves {missing} unspecified")
    pt = Ideal([R.gen(v) - base_point[v] for v in base_vars], R)
    fib = eliminate(graph + pt, base_vars)
    W = fib.ring
    fib = saturation(fib, Ideal(W.gens, W), method="elements")
    if fib.is_unit():
        raise DomainError("the graph has empty fibre over the base point")
    return radical(fib)


def incidence_cover(G, base_point=None, seed=0, retries=MAX_RETRIES):
    """Flag incidence over the Gauss image and the generic degree of its projection to ``P V``.

    Without ``base_point`` the whole graph is used; with it, the reduced exceptional
    locus over that point.  Returns ``(cover ideal in (.., w, v), degree)``.  The
    degree is the colength of the fibre over a random point of ``P V`` in a random
    affine chart on the Pluecker coordinates; two independent points must agree.
    """
    n, d = G.family.ambient.n, G.family.codim
    vnames = [f"v{i + 1}" for i in range(n)]
    if base_point is None:
        base = G.graph_ideal()
    else:
        base = exceptional_locus(G, base_point)
    R = PolynomialRing(base.ring.variables + tuple(vnames))
    w = {c: R.gen(name) for c, name in zip(G.columns, G.names)}
    vv = [R.gen(v) for v in vnames]
    cover = base.to_ring(R) + Ideal(wedge_incidence(vv, w, n, d), R)

    rng = random.Random(seed)
    S = base.ring
    values, attempts = [], 0
    while len(values) < 2:
        attempts += 1
        if attempts > retries + 2:
            raise DegenerateChoiceError(f"no two agreeing generic fibres after {attempts - 1} draws")
        v0 = _random_vector(rng, n)
        wv = {c: S.gen(name) for c, name in zip(G.columns, G.names)}
        fib = base + Ideal(wedge_incidence(v0, wv, n, d), S)
        fib = fib + Ideal([_chart(S, G.names, rng)], S)
        try:
            values.append(zero_dim_colength(fib))
        except NotZeroDimensionalError:
            values.clear()
            continue
        if len(values) == 2 and values[0] != values[1]:
            values = values[1:]
    return cover, values[0]


def generic_finiteness_check(graph, target_vars, projective_groups=(), seed=0):
    """True iff the projection of ``graph`` to ``target_vars`` keeps its dimension.

    ``projective_groups`` lists groups of eliminated variables that are
    homogeneous coordinates; each is cut by a random affine chart first so the
    affine dimension counts projective fibres correctly.
    """
    rng = random.Random(seed)
    ring = graph.ring
    for v in target_vars:
        ring.index(v)
    G = graph
    for group in projective_groups:
        G = G + Ideal([_chart(ring, group, rng)], ring)
    drop = [v for v in ring.variables if v not in set(target_vars)]
    src = dimension_degree(G, "affine").dim
    img = dimension_degree(eliminate(G, drop), "affine").dim
    return src == img


def conormal_of_prime(P, ambient):
    """Conormal variety of the irreducible ``V(P)`` in ``(x, xi)``; ``P`` lives in the position ring.

    Works with any generating set: covectors range over the row space of the
    Jacobian of all generators, and the closure is taken by saturating with the
    ``c x c`` minors, ``c`` the codimension.
    """
    target = ambient.cotangent_ring()
    gens = [g for g in P.groebner_basis() if g]
    if not gens:
        # the whole space: the zero section
        return Ideal([target.gen(v) for v in ambient.covectors], target)
    dim = dimension_degree(P, "affine").dim
    n = ambient.n
    c = n - dim
    if dim == 0:
        return Ideal([g.to_ring(target) for g in gens], target).reduced()
    if len(gens) == 1:
        F = FamilySpec(ambient, (gens[0].to_ring(ambient.base_ring()),))
        return conormal_ideal(F)
    lam = [f"lam{i + 1}" for i in range(len(gens))]
    big = target.extend(lam, front=True)
    rows = [[g.diff(v) for v in ambient.positions] for g in gens]
    eqs = [g.to_ring(big) for g in gens]
    for j, xi in enumerate(ambient.covectors):
        expr = big.gen(xi)
        for i in range(len(gens)):
            expr = expr - big.gen(lam[i]) * rows[i][j].to_ring(big)
        eqs.append(expr)
    pre = eliminate(Ideal(eqs, big), lam).to_ring(target)
    mins = [m.to_ring(target) for m in minors(rows, c)]
    mins = [m for m in mins if m]
    Xt = Ideal([g.to_ring(target) for g in gens], target)
    mins = [m for m in mins if not Xt.contains(m)]
    if not mins:
        raise DomainError("generators do not have the expected Jacobian rank on the variety")
    return saturation(pre, Ideal(mins, target), method="elements")
