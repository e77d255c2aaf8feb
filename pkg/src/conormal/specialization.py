"""Specialization of relative conormal varieties as Lagrangian cycles.

The fibre of the relative conormal over ``s = s0`` is split into conormal
varieties ``Lambda_Z``.  Each multiplicity is the length of the fibre at the
generic point of ``Lambda_Z``, measured on a random slice: the slice cuts
``Lambda_Z`` in finitely many reduced points and the fibre's length at those
points, divided by their number, is the multiplicity.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from .algebra import PrimeField, random_rational
from .errors import (
    AmbiguousMultiplicityError,
    DegenerateChoiceError,
    DomainError,
    NotZeroDimensionalError,
    UndecomposedRemainderError,
)
from .geometry import (
    MAX_RETRIES,
    FamilySpec,
    conormal_ideal,
    conormal_of_prime,
    two_agreeing,
    relative_conormal_ideal,
    singular_locus,
)
from .groebner import (
    Ideal,
    dimension_degree,
    eliminate,
    radical_membership,
    saturation,
    zero_dim_colength,
)
from .primes import minimal_primes


@dataclass
class CycleComponent:
    """``multiplicity * Lambda_Z``; ``base`` is the prime of ``Z`` in the position ring."""

    support: Ideal
    base: Ideal
    multiplicity: int
    base_dim: int

    def label(self):
        return "(" + ", ".join(self.base.canonical_strings()) + ")"

    def support_strings(self):
        return self.support.canonical_strings()


@dataclass
class LagrangianCycle:
    ambient: object
    components: list
    multidegree: list = field(default_factory=list)
    seed: int = 0

    def sorted_components(self):
        return sorted(self.components, key=lambda c: (-c.base_dim, c.label()))

    def multiplicity_of(self, base):
        for c in self.components:
            if c.base.contains_ideal(base) and base.contains_ideal(c.base):
                return c.multiplicity
        return 0

    def is_effective(self):
        return all(c.multiplicity >= 1 for c in self.components)

    def __str__(self):
        parts = [f"{c.multiplicity}*Lambda{c.label()}" for c in self.sorted_components()]
        return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# slices
#
# Slice lengths are computed over GF(p) for a random prime p of about 31 bits:
# over QQ the random slice coefficients make the zero-dimensional bases
# explode.  A length mod p equals the rational one for all but finitely many
# primes, and every answer must be reproduced by a second independent draw
# (fresh prime, fresh slice).


def _random_prime(rng):
    return int(sympy.nextprime(rng.randrange(1 << 30, 1 << 31)))


def _mod_p(I, field):
    ring = I.ring.with_field(field)
    return Ideal([g.to_ring(ring) for g in I.groebner_basis()], ring)


def _slice(ring, ambient, k, rng):
    """``k`` affine hyperplanes in ``x``, ``n-1-k`` linear forms in ``xi`` and ``l(xi) = 1``."""
    n = ambient.n
    eqs = []
    for _ in range(k):
        h = ring.constant(random_rational(rng))
        for v in ambient.positions:
            h = h + ring.gen(v) * random_rational(rng)
        eqs.append(h)
    for _ in range(n - 1 - k):
        h = ring.zero
        for v in ambient.covectors:
            h = h + ring.gen(v) * random_rational(rng)
        eqs.append(h)
    h = ring.constant(-1)
    for v in ambient.covectors:
        h = h + ring.gen(v) * random_rational(rng)
    eqs.append(h)
    return Ideal(eqs, ring)


def _colength(I):
    try:
        return zero_dim_colength(I)
    except NotZeroDimensionalError:
        return None


def local_multiplicity(K, Lam, ambient, base_dim, seed=0, retries=MAX_RETRIES):
    """Length of ``K`` at the generic point of the conormal ``Lam`` (localized slice count).

    On a slice ``S`` cutting ``Lam`` in finitely many reduced points, the
    answer is ``(len(K + S) - len((K + S) : (Lam + S)^oo)) / len(Lam + S)``.
    """
    rng = random.Random(seed)

    def draw():
        try:
            field = PrimeField(_random_prime(rng))
            Kp, Lp = _mod_p(K, field), _mod_p(Lam, field)
        except DomainError:
            return None
        S = _slice(Kp.ring, ambient, base_dim, rng)
        pts = _colength(Lp + S)
        if not pts:
            return None
        KS = Kp + S
        total = _colength(KS)
        if total is None:
            return None
        away = _colength(saturation(KS, Lp + S))
        num = None if away is None else total - away
        if num is None or num % pts:
            return None
        return num // pts

    try:
        return two_agreeing(draw, retries)
    except DegenerateChoiceError:
        raise AmbiguousMultiplicityError("slices never produced two agreeing integral local lengths") from None


def multidegree_vector(I, ambient, seed=0):
    """Colengths of ``I`` cut by the slice with ``k`` position hyperplanes, ``k = 0..n-1``, over GF(p)."""
    rng = random.Random(seed)
    field = PrimeField(_random_prime(rng))
    Ip = _mod_p(I, field)
    out = []
    for k in range(ambient.n):
        c = _colength(Ip + _slice(Ip.ring, ambient, k, rng))
        if c is None:
            raise DegenerateChoiceError("slice did not cut a finite set")
        out.append(c)
    return out


# ---------------------------------------------------------------------------
# decomposition


def _same(a, b):
    return a.contains_ideal(b) and b.contains_ideal(a)


def decompose_cycle(K, ambient, seed=0):
    """Split the ``n``-dimensional part of ``K`` (in ``(x, xi)``) into ``sum m_Z Lambda_Z``.

    Repeatedly: project the remainder to positions, take the minimal primes
    ``Z`` there, keep those whose conormal contains the remainder, measure their
    multiplicities in ``K`` and saturate them away.  Raises
    ``UndecomposedRemainderError`` when an ``n``-dimensional remainder has no
    recognizable conormal component.
    """
    n = ambient.n
    ring = K.ring
    R = K.reduced()
    comps = []
    guard = 0
    while not R.is_unit() and dimension_degree(R, "affine").dim == n:
        guard += 1
        if guard > 20:
            raise UndecomposedRemainderError("decomposition did not terminate", remainder=R)
        E = eliminate(R, list(ambient.covectors))
        found = []
        for Z in minimal_primes(E, seed):
            if any(_same(Z, c.base.to_ring(Z.ring)) for c in comps):
                continue
            Lam = conormal_of_prime(Z, ambient).to_ring(ring)
            if Lam.contains_ideal(R):
                found.append((Z, Lam))
        if not found:
            raise UndecomposedRemainderError(
                "an n-dimensional piece is not a union of conormal varieties over QQ", remainder=R
            )
        for Z, Lam in found:
            zdim = dimension_degree(Z, "affine").dim
            m = local_multiplicity(K, Lam, ambient, zdim, seed=seed + len(comps))
            if m < 1:
                raise AmbiguousMultiplicityError(f"non-positive multiplicity over {Z}")
            comps.append(CycleComponent(Lam, Z, m, zdim))
            R = saturation(R, Lam)
    cycle = LagrangianCycle(ambient, comps, seed=seed)
    _check_multidegree(K, cycle, seed)
    return cycle


def _check_multidegree(K, cycle, seed):
    """The slice counts of ``K`` equal the multiplicity-weighted counts of the components."""
    if not cycle.components:
        return
    amb = cycle.ambient
    total = multidegree_vector(K, amb, seed + 7919)
    acc = [0] * amb.n
    for c in cycle.components:
        v = multidegree_vector(c.support, amb, seed + 7919)
        acc = [a + c.multiplicity * b for a, b in zip(acc, v)]
    cycle.multidegree = total
    if acc != total:
        raise AmbiguousMultiplicityError(
            f"multidegree mismatch: fibre {total} vs weighted components {acc}"
        )


def fiber_ideal(K, F, s0):
    """Substitute ``s = s0`` in the relative conormal ideal; result lives in ``(x, xi)``."""
    target = F.ambient.without_parameter().cotangent_ring()
    s = F.parameter
    gens = [g.subs({s: s0}).to_ring(target) for g in K.groebner_basis()]
    return Ideal(gens, target)


def specialize_cycle(F, s0, seed=0, relative_conormal=None):
    """The Lagrangian cycle underlying the fibre of the relative conormal at ``s0``."""
    if F.parameter is None:
        raise DomainError("specialization needs a family with a parameter")
    s0 = Fraction(s0)
    K = relative_conormal if relative_conormal is not None else relative_conormal_ideal(F)
    fib = fiber_ideal(K, F, s0)
    if fib.is_unit():
        raise DomainError(f"the fibre over s = {s0} is empty")
    F.check_generically_reduced(s0)
    return decompose_cycle(fib, F.ambient.without_parameter(), seed)


# ---------------------------------------------------------------------------
# structural checks


def fiber_components(F, s0, seed=0):
    """Minimal primes of the fibre ``X_{s0}`` in the position ring."""
    fam = F.fiber(s0)
    return minimal_primes(fam.ideal(), seed)


def is_fiber_component(cycle_comp, fiber_primes):
    Z = cycle_comp.base
    return any(_same(Z, P.to_ring(Z.ring)) for P in fiber_primes)


def extras_in_singular_locus(F, s0, cycle):
    """Every extra component lies over ``Sing(X_{s0})``."""
    fam = F.fiber(s0)
    sing = singular_locus(fam)
    prim = fiber_components(F, s0, cycle.seed)
    for c in cycle.components:
        if is_fiber_component(c, prim):
            continue
        Z = c.base
        if not all(radical_membership(g.to_ring(Z.ring), Z) for g in sing.gens):
            return False
    return True


def contains_fiber_conormal(F, s0, cycle):
    """``Lambda_{X_{s0}}`` computed directly equals the union of the fibre-component supports."""
    lam = conormal_ideal(F.fiber(s0))
    prim = fiber_components(F, s0, cycle.seed)
    supports = [c for c in cycle.components if is_fiber_component(c, prim)]
    if len(supports) != len(prim):
        return False
    ring = lam.ring
    for c in supports:
        if not c.support.to_ring(ring).contains_ideal(lam):
            return False
    # every point of Lambda_{X_s0} lies on one of the supports: product of supports in radical
    prod = supports[0].support.to_ring(ring)
    for c in supports[1:]:
        prod = prod * c.support.to_ring(ring)
    return all(radical_membership(g, lam) for g in prod.gens)


@dataclass
class ConservationReport:
    samples: list
    totals: list
    details: list
    route: str
    verdict: bool


def check_degree_conservation(F, samples, seed=0, mode=None):
    """Total degree of the specialized cycle at each sample parameter, and whether they agree."""
    from .degrees import component_degree

    mode = mode or F.ambient.mode
    K = relative_conormal_ideal(F)
    totals, details = [], []
    route = None
    for s0 in samples:
        cyc = specialize_cycle(F, s0, seed, relative_conormal=K)
        rep = component_degree(cyc, mode, seed=seed, family=F, s0=s0)
        route = rep.route
        totals.append(rep.total)
        details.append(rep)
    return ConservationReport(
        [Fraction(s) for s in samples], totals, details, route, len(set(totals)) <= 1
    )


@dataclass
class JumpReport:
    applicable: bool
    s0: Fraction
    jump_components: list       # [(label, multiplicity)] for components of Sing(X/S) in the fibre
    extra_components: list      # [(label, multiplicity)] for every extra cycle component
    verdict: bool
    message: str


def check_jump_criterion(F, s0, seed=0):
    """If ``Sing(X/S)`` has a component inside the fibre over ``s0``, its conormal must appear."""
    if F.codim != 1:
        raise DomainError("the jump criterion is implemented for divisors (one generator)")
    s0 = Fraction(s0)
    s = F.parameter
    if s is None:
        raise DomainError("the jump criterion needs a family with a parameter")
    sing = singular_locus(F, relative=True)
    ring = sing.ring
    inside = []
    for P in minimal_primes(sing, seed):
        if P.contains(ring.gen(s) - s0):
            inside.append(P)
    if not inside:
        return JumpReport(False, s0, [], [], True, "criterion not applicable")
    cyc = specialize_cycle(F, s0, seed)
    prim = fiber_components(F, s0, seed)
    pos_ring = F.ambient.without_parameter().base_ring()
    hits, ok = [], True
    for P in inside:
        Z = eliminate(P, [s]).to_ring(pos_ring)
        Zr = Z.reduced()
        m = cyc.multiplicity_of(Zr)
        label = "(" + ", ".join(Zr.canonical_strings()) + ")"
        hits.append((label, m))
        if m < 1:
            ok = False
    extras = [
        (c.label(), c.multiplicity) for c in cyc.sorted_components() if not is_fiber_component(c, prim)
    ]
    msg = "criterion holds" if ok else "criterion violated"
    return JumpReport(True, s0, hits, extras, ok, msg)
