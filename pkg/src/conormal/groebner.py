"""Buchberger kernel and the ideal calculus built on it.

The kernel works on ``{packed_monomial: coefficient}`` dictionaries (see
``algebra``).  Pairs are handled with the Gebauer-Moeller update, which applies
both the product (coprime leading terms) and the chain criterion, and the next
pair is the one of least sugar degree, ties broken by the smallest lcm.

Every computation runs under a :class:`Budget`; exceeding it raises
:class:`BudgetExceededError` instead of returning a truncated basis.
"""

from __future__ import annotations

import contextlib
import contextvars
import heapq
from dataclasses import dataclass
from itertools import combinations

from .algebra import MonomialOrder, Polynomial, PolynomialRing, exact_quotient
from .errors import (
    BudgetExceededError,
    DomainError,
    NonHomogeneousError,
    NotZeroDimensionalError,
    RingMismatchError,
)

# ---------------------------------------------------------------------------
# Resource budget


class Budget:
    """Caps on reduction steps (shared by everything run under it) and basis degree."""

    def __init__(self, max_steps=None, max_degree=2000):
        self.max_steps = max_steps
        self.max_degree = max_degree
        self.steps = 0

    def charge(self, n):
        self.steps += n
        if self.max_steps is not None and self.steps > self.max_steps:
            raise BudgetExceededError("steps", self.max_steps, self.steps)

    def check_degree(self, d):
        if self.max_degree is not None and d > self.max_degree:
            raise BudgetExceededError("degree", self.max_degree, d)


_BUDGET = contextvars.ContextVar("conormal_budget", default=None)


def current_budget():
    b = _BUDGET.get()
    if b is None:
        b = Budget()
        _BUDGET.set(b)
    return b


@contextlib.contextmanager
def budget(max_steps=None, max_degree=2000):
    """Run the enclosed computations under fresh caps."""
    token = _BUDGET.set(Budget(max_steps, max_degree))
    try:
        yield _BUDGET.get()
    finally:
        _BUDGET.reset(token)


# ---------------------------------------------------------------------------
# Kernel


class _Elem:
    __slots__ = ("lm", "lp", "tail", "sugar", "deg")

    def __init__(self, ring, terms, sugar):
        # terms: dict, nonzero; stored monic and sorted descending
        lm = max(terms)
        inv = 1 / terms[lm]
        self.lm = lm
        self.lp = lm & ring._mask
        self.tail = [(m, terms[m] * inv) for m in sorted(terms, reverse=True) if m != lm]
        self.deg = ring.monomial_degree(lm)
        self.sugar = max(sugar, self.deg)

    def as_dict(self, one):
        d = {self.lm: one}
        d.update(self.tail)
        return d


def _reduce(ring, f, basis, budget_):
    """Full reduction of the dict ``f`` (consumed) by ``basis``; returns the remainder dict."""
    if not f or not basis:
        return f
    mask, guard = ring._mask, ring._guard
    divs = [(e.lp, e) for e in basis]
    heap = [-m for m in f]
    heapq.heapify(heap)
    rem = {}
    steps = 0
    pop, push, get = heapq.heappop, heapq.heappush, f.get
    while heap:
        m = -pop(heap)
        c = get(m)
        if c is None:
            continue
        del f[m]
        mp = (m & mask) + guard
        for lp, e in divs:
            if (mp - lp) & guard == guard:
                break
        else:
            rem[m] = c
            continue
        steps += 1
        shift = m - e.lm
        for gm, gc in e.tail:
            nm = gm + shift
            v = get(nm)
            if v is None:
                f[nm] = -c * gc
                push(heap, -nm)
            else:
                v = v - c * gc
                if v:
                    f[nm] = v
                else:
                    del f[nm]
        if steps >= 256:
            budget_.charge(steps)
            steps = 0
    budget_.charge(steps)
    return rem


def _lcm(ring, a, b):
    ea, eb = ring.decode(a), ring.decode(b)
    return ring.encode(tuple(x if x > y else y for x, y in zip(ea, eb)))


def _spoly(e1, e2, lcm):
    s1, s2 = lcm - e1.lm, lcm - e2.lm
    out = {m + s1: c for m, c in e1.tail}
    for m, c in e2.tail:
        nm = m + s2
        v = out.get(nm)
        if v is None:
            out[nm] = -c
        else:
            v = v - c
            if v:
                out[nm] = v
            else:
                del out[nm]
    return out


def _buchberger(ring, polys):
    """Reduced Groebner basis of the dicts ``polys``; returns sorted ``_Elem`` list."""
    budget_ = current_budget()
    md = ring.monomial_degree
    elems = []      # every element ever added
    active = []     # indices forming the current basis
    pairs = []      # (sugar, lcm, i, j)

    def add(h_dict, sugar):
        h = _Elem(ring, h_dict, sugar)
        budget_.check_degree(h.deg)
        if h.lm == 0:
            return True
        k = len(elems)
        elems.append(h)
        # Gebauer-Moeller update
        C = []
        for i in active:
            lcm = _lcm(ring, elems[i].lm, h.lm)
            C.append((i, lcm, lcm == elems[i].lm + h.lm))
        D = []
        while C:
            i, lcm, coprime = C.pop()
            if coprime or not any(ring.divides(l2, lcm) for _, l2, _ in C + D):
                D.append((i, lcm, coprime))
        kept = D
        new_pairs = []
        hp = h.lm
        for p in pairs:
            s, lcm, i, j = p
            if (
                ring.divides(hp, lcm)
                and _lcm(ring, elems[i].lm, hp) != lcm
                and _lcm(ring, elems[j].lm, hp) != lcm
            ):
                continue
            new_pairs.append(p)
        for i, lcm, coprime in kept:
            if coprime:
                continue
            g = elems[i]
            dl = md(lcm)
            sugar_ = max(g.sugar + dl - g.deg, h.sugar + dl - h.deg)
            new_pairs.append((sugar_, lcm, i, k))
        pairs[:] = new_pairs
        active[:] = [i for i in active if not ring.divides(hp, elems[i].lm)] + [k]
        return False

    one = None
    for f in sorted(polys, key=lambda d: max(d)):
        if one is None and f:
            one = next(iter(f.values())) ** 0
        sugar = max(md(m) for m in f) if f else 0
        h = _reduce(ring, dict(f), [elems[i] for i in active], budget_)
        if h:
            if add(h, sugar):
                return [_Elem(ring, {0: one}, 0)]

    while pairs:
        best = min(range(len(pairs)), key=lambda t: (pairs[t][0], pairs[t][1]))
        sugar, lcm, i, j = pairs.pop(best)
        s = _spoly(elems[i], elems[j], lcm)
        h = _reduce(ring, s, [elems[a] for a in active], budget_)
        if h:
            if add(h, sugar):
                return [_Elem(ring, {0: one}, 0)]

    # minimize then interreduce
    basis = [elems[i] for i in active]
    basis = [
        e
        for e in basis
        if not any(o is not e and ring.divides(o.lm, e.lm) and (o.lm != e.lm or id(o) < id(e)) for o in basis)
    ]
    basis.sort(key=lambda e: e.lm)
    out = []
    for e in basis:
        others = [o for o in basis if o is not e]
        tail = _reduce(ring, dict(e.tail), others, budget_)
        tail[e.lm] = one
        out.append(_Elem(ring, tail, e.sugar))
    return out


def _to_dicts(polys, ring):
    out = []
    for p in polys:
        if p.ring != ring:
            p = p.to_ring(ring)
        if p:
            out.append(dict(p._t))
    return out


def _elems_to_polys(ring, elems):
    one = ring.field.one
    return [Polynomial(ring, e.as_dict(one)) for e in elems]


def s_polynomial_check(basis):
    """True iff every S-polynomial of ``basis`` reduces to zero modulo ``basis``."""
    basis = [b for b in basis if b]
    if not basis:
        return True
    ring = basis[0].ring
    elems = [_Elem(ring, dict(b._t), 0) for b in basis]
    b_ = current_budget()
    for e1, e2 in combinations(elems, 2):
        lcm = _lcm(ring, e1.lm, e2.lm)
        if _reduce(ring, _spoly(e1, e2, lcm), elems, b_):
            return False
    return True


def is_reduced_basis(basis):
    """Leading coefficients 1 and no term divisible by another element's leading term."""
    for b in basis:
        if b.leading_coefficient() != 1:
            return False
    elems = [(b, max(b._t)) for b in basis]
    ring = basis[0].ring if basis else None
    for b, _ in elems:
        for o, lm in elems:
            if o is b:
                continue
            if any(ring.divides(lm, m) for m in b._t):
                return False
    return True


# ---------------------------------------------------------------------------
# Ideals


def _order_of(ring, order):
    if order is None:
        return ring.order
    if isinstance(order, str):
        return MonomialOrder(order)
    return order


class Ideal:
    """Generators in a fixed ring plus lazily computed reduced Groebner bases per order."""

    def __init__(self, gens, ring=None):
        gens = list(gens)
        if ring is None:
            if not gens:
                raise DomainError("an empty generator list needs an explicit ring")
            ring = gens[0].ring
        clean = []
        for g in gens:
            if not isinstance(g, Polynomial):
                g = ring.constant(g)
            if g.ring != ring:
                raise RingMismatchError(f"generator {g} not in {ring!r}")
            if g:
                clean.append(g)
        self.ring = ring
        self.gens = tuple(clean)
        self._gb = {}
        self._facts = {}

    # -- Groebner data ------------------------------------------------------
    def _kernel(self, order=None):
        order = _order_of(self.ring, order)
        hit = self._gb.get(order)
        if hit is None:
            oring = self.ring.with_order(order)
            elems = _buchberger(oring, _to_dicts(self.gens, oring))
            hit = (oring, elems)
            self._gb[order] = hit
        return hit

    def groebner_basis(self, order=None):
        """Reduced basis, sorted by increasing leading monomial, in the ring carrying ``order``."""
        oring, elems = self._kernel(order)
        return _elems_to_polys(oring, elems)

    def reduced(self):
        """The same ideal generated by its reduced basis in the ring's own order."""
        out = Ideal(self.groebner_basis(), self.ring)
        out._gb[self.ring.order] = self._gb[self.ring.order]
        return out

    def normal_form(self, f, order=None):
        oring, elems = self._kernel(order)
        if isinstance(f, Polynomial) and f.ring.variables != self.ring.variables:
            raise RingMismatchError(f"{f} not in {self.ring!r}")
        f = oring(f)
        rem = _reduce(oring, dict(f._t), elems, current_budget())
        return Polynomial(oring, rem).to_ring(self.ring)

    def contains(self, f):
        return not self.normal_form(f)

    def __contains__(self, f):
        return self.contains(f)

    def contains_ideal(self, other):
        self._check(other)
        return all(self.contains(g) for g in other.gens)

    def is_unit(self):
        _, elems = self._kernel()
        return len(elems) == 1 and elems[0].lm == 0

    def is_zero(self):
        return not self.gens

    def is_homogeneous(self):
        if "homogeneous" not in self._facts:
            self._facts["homogeneous"] = all(g.is_homogeneous() for g in self.gens) or all(
                g.is_homogeneous() for g in self.groebner_basis()
            )
        return self._facts["homogeneous"]

    def _check(self, other):
        if other.ring.variables != self.ring.variables or other.ring.field != self.ring.field:
            raise RingMismatchError(f"ideals live in different rings: {self.ring!r} / {other.ring!r}")

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        if other.ring.variables != self.ring.variables:
            return False
        return self.contains_ideal(other) and other.contains_ideal(self)

    __hash__ = None

    def __add__(self, other):
        if isinstance(other, Polynomial):
            other = Ideal([other], self.ring)
        self._check(other)
        return Ideal(self.gens + tuple(other.to_ring(self.ring).gens), self.ring)

    def __mul__(self, other):
        self._check(other)
        other = other.to_ring(self.ring)
        return Ideal([a * b for a in self.gens for b in other.gens], self.ring)

    def to_ring(self, ring):
        if ring == self.ring:
            return self
        return Ideal([g.to_ring(ring) for g in self.gens], ring)

    def variables_used(self):
        used = set()
        for g in self.gens:
            used.update(g.variables())
        return used

    def __repr__(self):
        return "Ideal(" + ", ".join(str(g) for g in self.gens) + ")"

    def canonical_strings(self):
        """Reduced basis as strings: the canonical printed form of the ideal."""
        return [str(g) for g in self.groebner_basis()]

    # -- derived operations (thin wrappers) ---------------------------------
    def eliminate(self, drop, keep_ring=False):
        return eliminate(self, drop, keep_ring=keep_ring)

    def saturate(self, other, method="auto"):
        return saturate(self, other, method=method)

    def quotient(self, other):
        return ideal_quotient(self, other)

    def intersect(self, other):
        return intersect(self, other)

    def dimension_degree(self, convention="auto"):
        return dimension_degree(self, convention)

    def dimension(self):
        return dimension_degree(self, "affine").dim

    def colength(self):
        return zero_dim_colength(self)


def ideal(*gens, ring=None):
    if len(gens) == 1 and not isinstance(gens[0], Polynomial) and ring is None:
        gens = tuple(gens[0])
    return Ideal(gens, ring)


def groebner_basis(I, order=None):
    return I.groebner_basis(order)


def normal_form(f, I, order=None):
    return I.normal_form(f, order)


def is_groebner(I, order=None):
    return s_polynomial_check(I.groebner_basis(order))


# ---------------------------------------------------------------------------
# Elimination, saturation, quotients, intersections


def eliminate(I, drop, keep_ring=False):
    """``I`` intersected with the subring without ``drop`` (block order, dropped block first)."""
    ring = I.ring
    drop = [drop] if isinstance(drop, str) else list(drop)
    for v in drop:
        ring.index(v)
    drop = [v for v in ring.variables if v in set(drop)]
    keep = [v for v in ring.variables if v not in set(drop)]
    target = ring if keep_ring else PolynomialRing(keep, "grevlex", ring.field)
    if not drop:
        return I.to_ring(target)
    if not keep:
        return Ideal([target.one] if I.is_unit() else [], target)
    bring = PolynomialRing(drop + keep, MonomialOrder.block(len(drop), len(keep)), ring.field)
    elems = _buchberger(bring, _to_dicts(I.gens, bring))
    nkeep_mask = 0
    for v in drop:
        nkeep_mask |= ((1 << 15) - 1) << (16 * bring.index(v))
    kept = [p for p, e in zip(_elems_to_polys(bring, elems), elems) if not (e.lm & nkeep_mask)]
    out = Ideal([p.to_ring(target) for p in kept], target)
    return out


def _extend_ideal(I, names, front=True):
    ring = I.ring.extend(names, front=front)
    return ring, Ideal([g.to_ring(ring) for g in I.gens], ring)


def saturate_element(I, f):
    """``I : f^oo`` by adding ``1 - t f`` and eliminating ``t``."""
    ring = I.ring
    if f.ring.variables != ring.variables:
        raise RingMismatchError("saturating element is not in the ideal's ring")
    f = f.to_ring(ring)
    if not f:
        return Ideal([ring.one], ring)
    if f.is_constant():
        return I
    t = ring.fresh_name("t_")
    ering, E = _extend_ideal(I, [t])
    E = E + Ideal([ering.one - ering.gen(t) * f.to_ring(ering)], ering)
    return eliminate(E, [t]).to_ring(ring)


def _element_exponent(I, sat, f):
    e, power = 0, I.ring.one
    while True:
        if all(I.contains(power * g) for g in sat.gens):
            return e
        e += 1
        power = power * f


def saturate(I, J, method="auto", want_exponent=True):
    """``(I : J^oo, e)`` where ``e`` is the least exponent with ``(I : J^oo) J^e`` inside ``I``.

    ``method`` is ``quotient`` (iterate ``I : J`` until stable), ``elements``
    (intersect the saturations by each generator of ``J``) or ``auto``, which
    uses the single-element route when ``J`` is principal and iterated quotients
    otherwise.
    """
    if isinstance(J, Polynomial):
        J = Ideal([J], I.ring)
    I._check(J)
    J = J.to_ring(I.ring)
    if not J.gens:
        # I : 0^oo is the whole ring
        return Ideal([I.ring.one], I.ring), (1 if not I.is_unit() else 0)
    if method == "auto":
        method = "element" if len(J.gens) == 1 else "quotient"
    if method == "element" and len(J.gens) == 1:
        sat = saturate_element(I, J.gens[0])
        return sat, (_element_exponent(I, sat, J.gens[0]) if want_exponent else None)
    if method == "elements":
        parts = [saturate_element(I, g) for g in J.gens]
        sat = parts[0]
        for p in parts[1:]:
            sat = intersect(sat, p)
        sat = sat.reduced()
        if not want_exponent:
            return sat, None
        cur, e = I, 0
        while not cur.contains_ideal(sat):
            cur = ideal_quotient(cur, J)
            e += 1
        return sat, e
    if method != "quotient":
        raise DomainError(f"unknown saturation method {method!r}")
    cur, e = I, 0
    while True:
        nxt = ideal_quotient(cur, J)
        if cur.contains_ideal(nxt):
            return cur.reduced(), e
        cur, e = nxt, e + 1


def saturation(I, J, method="auto"):
    """``I : J^oo`` without computing the stabilization exponent."""
    return saturate(I, J, method=method, want_exponent=False)[0]


def ideal_quotient(I, J):
    """``I : J = {g : g J inside I}``; ``J`` may be an ideal or a single polynomial."""
    if isinstance(J, Polynomial):
        J = Ideal([J], I.ring)
    I._check(J)
    J = J.to_ring(I.ring)
    if not J.gens:
        return Ideal([I.ring.one], I.ring)
    parts = []
    for g in J.gens:
        if g.is_constant():
            parts.append(I)
            continue
        inter = intersect(I, Ideal([g], I.ring))
        parts.append(Ideal([exact_quotient(h, g) for h in inter.gens], I.ring))
    out = parts[0]
    for p in parts[1:]:
        out = intersect(out, p)
    return out.reduced()


def intersect(I, J):
    """``I`` intersected with ``J`` via ``t I + (1 - t) J`` and elimination of ``t``."""
    I._check(J)
    ring = I.ring
    J = J.to_ring(ring)
    if I.is_zero() or J.is_zero():
        return Ideal([], ring)
    t = ring.fresh_name("t_")
    ering = ring.extend([t], front=True)
    tv = ering.gen(t)
    gens = [tv * g.to_ring(ering) for g in I.gens]
    gens += [(ering.one - tv) * g.to_ring(ering) for g in J.gens]
    return eliminate(Ideal(gens, ering), [t]).to_ring(ring).reduced()


def radical_membership(f, I):
    """True iff ``f`` vanishes on ``V(I)``: ``1`` lies in ``I + (1 - t f)``."""
    ring = I.ring
    f = f.to_ring(ring)
    if not f:
        return True
    t = ring.fresh_name("t_")
    ering, E = _extend_ideal(I, [t])
    E = E + Ideal([ering.one - ering.gen(t) * f.to_ring(ering)], ering)
    return E.is_unit()


def radical_contains(I, J):
    """True iff ``V(I)`` lies inside ``V(J)``, i.e. every generator of ``J`` is in the radical of ``I``."""
    return all(radical_membership(g, I) for g in J.gens)


def same_radical(I, J):
    return radical_contains(I, J) and radical_contains(J, I)


# ---------------------------------------------------------------------------
# Hilbert series, dimension and degree


def _minimalize(monos):
    monos = sorted(set(monos), key=sum)
    out = []
    for m in monos:
        if not any(all(a <= b for a, b in zip(o, m)) for o in out):
            out.append(m)
    return out


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_add(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def hilbert_numerator(monos, nvars):
    """Numerator ``N(t)`` of the Hilbert series ``N(t)/(1-t)^n`` of ``k[x]/(monos)``.

    Coefficient list, lowest degree first.  Recursion ``N(M) = N(M + x) + t N(M : x)``
    on a variable shared by two generators; coprime generators are the base case.
    """
    gens = _minimalize(monos)
    if any(sum(m) == 0 for m in gens):
        return [0]
    counts = [0] * nvars
    for m in gens:
        for i, e in enumerate(m):
            if e:
                counts[i] += 1
    pivot = max(range(nvars), key=lambda i: counts[i]) if nvars else 0
    if not gens or counts[pivot] <= 1:
        out = [1]
        for m in gens:
            d = sum(m)
            out = _poly_mul(out, [1] + [0] * (d - 1) + [-1])
        return out
    unit = tuple(int(j == pivot) for j in range(nvars))
    plus = hilbert_numerator([m for m in gens if not m[pivot]] + [unit], nvars)
    colon = hilbert_numerator(
        [tuple(e - 1 if j == pivot and e else e for j, e in enumerate(m)) for m in gens], nvars
    )
    return _poly_add(plus, [0] + colon)


def _divide_one_minus_t(coeffs):
    """Divide by ``1 - t``; returns ``None`` when ``t = 1`` is not a root."""
    if sum(coeffs) != 0:
        return None
    out, acc = [], 0
    for c in coeffs[:-1]:
        acc += c
        out.append(acc)
    return out or [0]


@dataclass(frozen=True)
class DimensionDegree:
    """Dimension and degree; ``convention`` says whether they are projective or affine."""

    dim: int
    degree: int
    convention: str

    def __iter__(self):
        return iter((self.dim, self.degree))


def _krull_and_multiplicity(I):
    """Krull dimension of ``R/I`` and the leading Hilbert-polynomial coefficient from a grevlex basis."""
    n = I.ring.nvars
    basis = I.groebner_basis("grevlex")
    monos = [b.leading_monomial() for b in basis]
    num = hilbert_numerator(monos, n)
    if not any(num):
        return -1, 0
    k = 0
    q = num
    while True:
        nxt = _divide_one_minus_t(q)
        if nxt is None:
            break
        q, k = nxt, k + 1
    return n - k, sum(q)


def dimension_degree(I, convention="auto"):
    """Dimension and degree read off the grevlex leading-term ideal.

    ``projective``: ``I`` must be homogeneous; returns the projective dimension
    (Krull dimension minus one) and degree, with ``(-1, 0)`` for the empty scheme.
    ``affine``: Krull dimension of ``R/I`` and the degree of the projective
    closure, ``(-1, 0)`` for the unit ideal.  ``auto`` picks projective for
    homogeneous input and affine otherwise.
    """
    homog = I.is_homogeneous()
    if convention == "auto":
        convention = "projective" if homog else "affine"
    if convention == "projective" and not homog:
        raise NonHomogeneousError("projective dimension needs a homogeneous ideal")
    if convention not in ("projective", "affine"):
        raise DomainError(f"unknown convention {convention!r}")
    D, deg = _krull_and_multiplicity(I)
    if convention == "projective":
        if D <= 0:
            return DimensionDegree(-1, 0, convention)
        return DimensionDegree(D - 1, deg, convention)
    return DimensionDegree(D, deg, convention)


def zero_dim_colength(I):
    """``dim_k R/I`` for a zero-dimensional ideal (number of standard monomials)."""
    D, deg = _krull_and_multiplicity(I)
    if D == -1:
        return 0
    if D != 0:
        raise NotZeroDimensionalError(f"ideal has dimension {D}, colength undefined")
    return deg


def standard_monomials(I, limit=100000):
    """Enumerate the standard monomials of a zero-dimensional ideal (used as an oracle)."""
    basis = I.groebner_basis()
    lms = [b.leading_monomial() for b in basis]
    n = I.ring.nvars
    if I.is_unit():
        return []
    for i in range(n):
        if not any(m[i] > 0 and sum(m) == m[i] for m in lms):
            raise NotZeroDimensionalError("no pure power for some variable")
    out, frontier, seen = [], [tuple([0] * n)], set()
    while frontier:
        m = frontier.pop()
        if m in seen:
            continue
        seen.add(m)
        if any(all(a <= b for a, b in zip(lm, m)) for lm in lms):
            continue
        out.append(m)
        if len(out) > limit:
            raise DomainError("too many standard monomials")
        for i in range(n):
            frontier.append(tuple(e + (j == i) for j, e in enumerate(m)))
    return sorted(out)
