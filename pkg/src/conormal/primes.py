"""Rational factorization bridge, radicals and minimal primes over QQ.

Factorization of multivariate rational polynomials is delegated to sympy.  The
prime finding on top of it is local: splitting on factorizable generators,
Seidenberg radicals with a separating linear form for points, and a
birational projection onto a hypersurface for positive-dimensional pieces.
Whenever none of these isolates a component the ideal left over is reported
through :class:`UndecomposedRemainderError` rather than guessed.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

import sympy

from .algebra import PolynomialRing
from .errors import DomainError, UndecomposedRemainderError
from .groebner import Ideal, dimension_degree, eliminate, intersect, saturation, zero_dim_colength

# ---------------------------------------------------------------------------
# sympy bridge


def _symbols(ring):
    return sympy.symbols(" ".join(ring.variables) + " ,")[: ring.nvars]


def to_sympy(f):
    gens = _symbols(f.ring)
    data = {e: sympy.Rational(int(c.numerator), int(c.denominator)) for c, e in f.terms()}
    if not data:
        return sympy.Poly(0, *gens, domain="QQ")
    return sympy.Poly.from_dict(data, *gens, domain="QQ")


def from_sympy(p, ring):
    out = []
    for exps, c in p.terms():
        c = sympy.Rational(c)
        out.append((Fraction(int(c.p), int(c.q)), exps))
    return ring.from_terms(out)


def factor(f):
    """Distinct irreducible factors with multiplicities, each made monic: ``[(p, e)]``."""
    if f.is_constant():
        return []
    _, facs = to_sympy(f).factor_list()
    return sorted(
        ((from_sympy(p, f.ring).monic(), e) for p, e in facs),
        key=lambda pe: (pe[0].total_degree(), str(pe[0])),
    )


def squarefree_part(f):
    if f.is_constant():
        return f
    return from_sympy(to_sympy(f).sqf_part(), f.ring).monic()


def poly_gcd(polys):
    polys = [p for p in polys if p]
    if not polys:
        raise DomainError("gcd of nothing")
    g = to_sympy(polys[0])
    for p in polys[1:]:
        g = sympy.gcd(g, to_sympy(p))
        if g.is_ground:
            break
    return from_sympy(g, polys[0].ring).monic()


# ---------------------------------------------------------------------------
# helpers


def _minimalize(primes):
    """Drop duplicates and primes strictly containing another one."""
    out = []
    for P in primes:
        if any(Q.contains_ideal(P) and P.contains_ideal(Q) for Q in out):
            continue
        out.append(P)
    return [P for P in out if not any(Q is not P and P.contains_ideal(Q) for Q in out)]


def _sort_key(P):
    return (dimension_degree(P, "affine").dim, P.canonical_strings())


def _independent_set(I, k):
    """A set of ``k`` variables containing no leading monomial of the grevlex basis."""
    lms = [b.leading_monomial() for b in I.groebner_basis("grevlex")]
    n = I.ring.nvars
    for U in combinations(range(n), k):
        Us = set(U)
        if not any(all(e == 0 or i in Us for i, e in enumerate(m)) for m in lms):
            return [I.ring.variables[i] for i in U]
    raise DomainError("no independent set of the expected size")


def _univariate_minpoly(I, var):
    E = eliminate(I, [v for v in I.ring.variables if v != var])
    if not E.gens:
        raise DomainError(f"{var} is transcendental modulo the ideal")
    return E.groebner_basis()[0]


def seidenberg_radical(I):
    """Radical of a zero-dimensional ideal: add squarefree parts of univariate minimal polynomials."""
    extra = []
    for v in I.ring.variables:
        g = _univariate_minpoly(I, v)
        s = squarefree_part(g).to_ring(I.ring)
        if s != g.to_ring(I.ring):
            extra.append(s)
    return (I + Ideal(extra, I.ring)).reduced() if extra else I.reduced()


def _zero_dim_primes(I, rng):
    rad = seidenberg_radical(I)
    if rad.is_unit():
        return []
    n = zero_dim_colength(rad)
    ring = rad.ring
    t = ring.fresh_name("u_")
    big = ring.extend([t], front=True)
    for attempt in range(12):
        height = 1 + attempt
        coeffs = [rng.randint(-height, height) for _ in ring.variables]
        if attempt == 0:
            coeffs = [1] * len(coeffs)
        u = ring.zero
        for c, g in zip(coeffs, ring.gens):
            u = u + g * c
        E = rad.to_ring(big) + Ideal([big.gen(t) - u.to_ring(big)], big)
        q = _univariate_minpoly(E, t)
        if q.total_degree() != n:
            continue
        out = []
        for p, _ in factor(q):
            sub = p.to_ring(big).subs({t: u.to_ring(big)}).to_ring(ring)
            out.append((rad + Ideal([sub], ring)).reduced())
        return out
    raise UndecomposedRemainderError("no separating linear form found", remainder=I)


def _find_linear_element(J, z, base_vars, p):
    """An element ``a z - b`` of ``J`` with ``a, b`` in ``base_vars`` and ``p`` not dividing ``a``."""
    ring = J.ring
    others = [v for v in ring.variables if v != z and v not in base_vars]
    Ez = eliminate(J, others)
    R = Ez.ring
    P = Ideal([p.to_ring(R)], R)
    for g in Ez.groebner_basis(_z_first_order(R, z)):
        g = g.to_ring(R)
        if g.degree(z) != 1:
            continue
        a = g.diff(z)
        if a.degree(z) > 0:
            continue
        if P.contains(a):
            continue
        return g.to_ring(ring), a.to_ring(ring)
    return None


def _z_first_order(R, z):
    from .algebra import MonomialOrder

    # block order is defined on contiguous blocks, so only the order object is
    # compared here; the basis is taken in a ring where z leads
    if R.variables[0] == z:
        return MonomialOrder.block(1, R.nvars - 1) if R.nvars > 1 else MonomialOrder("grevlex")
    return MonomialOrder("lex")


def _component_over(I, base_vars, p, rest):
    """Prime of the component of ``V(I)`` mapping birationally onto ``V(p)``, or ``None``."""
    J = (I + Ideal([p.to_ring(I.ring)], I.ring)).reduced()
    if J.is_unit():
        return None
    ring = I.ring
    lin, denoms = [], []
    for z in rest:
        # put z first so a block order isolates degree one in z
        zring = PolynomialRing([z] + [v for v in ring.variables if v != z], "grevlex", ring.field)
        found = _find_linear_element(J.to_ring(zring), z, base_vars, p.to_ring(zring))
        if found is None:
            return None
        g, a = found
        lin.append(g.to_ring(ring))
        denoms.append(a.to_ring(ring))
    P0 = Ideal([p.to_ring(ring)] + lin, ring)
    A = ring.one
    for a in denoms:
        A = A * a
    P = saturation(P0, Ideal([A], ring)) if not A.is_constant() else P0.reduced()
    if P.is_unit():
        return None
    return P


def _positive_dim_prime(I, rng):
    """Find one minimal prime of top dimension of the (generator-irreducible) ideal ``I``."""
    k = dimension_degree(I, "affine").dim
    U = _independent_set(I, k)
    rest_all = [v for v in I.ring.variables if v not in U]
    ring = I.ring
    attempts = [(y, None) for y in rest_all] + [(None, a) for a in range(6)]
    for y, rand in attempts:
        if rand is None:
            J, R, yv = I, ring, y
            rest = [v for v in rest_all if v != y]
        else:
            yv = ring.fresh_name("y_")
            R = ring.extend([yv], front=True)
            L = R.zero
            for v in rest_all:
                L = L + R.gen(v) * rng.randint(-3 - rand, 3 + rand)
            J = I.to_ring(R) + Ideal([R.gen(yv) - L], R)
            rest = list(rest_all)
        base = U + [yv]
        E = eliminate(J, [v for v in R.variables if v not in base])
        if not E.gens:
            continue
        h = poly_gcd(E.groebner_basis())
        if h.is_constant():
            continue
        for p, _ in factor(h):
            P = _component_over(J, base, p.to_ring(J.ring), rest)
            if P is None:
                continue
            if rand is not None:
                P = eliminate(P, [yv]).to_ring(ring)
            if all(P.contains(g) for g in I.gens):
                return P.reduced()
    return None


# ---------------------------------------------------------------------------
# public


def minimal_primes(I, seed=0):
    """Minimal primes of ``I`` over QQ, sorted by dimension then canonical basis."""
    rng = random.Random(seed)
    primes = _minimal_primes(I.reduced(), rng, 0)
    return sorted(_minimalize(primes), key=_sort_key)


def _minimal_primes(I, rng, depth):
    if depth > 60:
        raise UndecomposedRemainderError("splitting recursion too deep", remainder=I)
    if I.is_unit():
        return []
    gens = I.groebner_basis()
    if not gens:
        return [I]
    for g in gens:
        facs = factor(g)
        if len(facs) > 1 or facs[0][1] > 1:
            out = []
            for p, _ in facs:
                out.extend(_minimal_primes((I + Ideal([p.to_ring(I.ring)], I.ring)).reduced(), rng, depth + 1))
            return _minimalize(out)
    if len(gens) == 1 or all(g.total_degree() <= 1 for g in gens):
        return [I]
    k = dimension_degree(I, "affine").dim
    if k == 0:
        return _zero_dim_primes(I, rng)
    P = _positive_dim_prime(I, rng)
    if P is None:
        raise UndecomposedRemainderError(
            "could not isolate a component over QQ", remainder=I
        )
    rest = saturation(I, P)
    return _minimalize([P] + _minimal_primes(rest.reduced(), rng, depth + 1))


def radical(I, seed=0):
    """Radical of ``I``: squarefree part for principal ideals, otherwise via minimal primes."""
    I = I.reduced()
    gens = I.groebner_basis()
    if I.is_unit() or not gens:
        return I
    if len(gens) == 1:
        return Ideal([squarefree_part(gens[0])], I.ring).reduced()
    if dimension_degree(I, "affine").dim == 0:
        return seidenberg_radical(I)
    primes = minimal_primes(I, seed)
    out = primes[0]
    for P in primes[1:]:
        out = intersect(out, P)
    return out.reduced()


def is_prime(I, seed=0):
    ps = minimal_primes(I, seed)
    return len(ps) == 1 and ps[0].contains_ideal(I) and I.contains_ideal(ps[0])
