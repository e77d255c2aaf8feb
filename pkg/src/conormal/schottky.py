"""Closed-form Gauss degrees and intersection-cohomology Euler characteristics for ppav.

These are reference numbers, not computed from geometry: Gauss-map degrees of
theta divisors for Jacobians, hyperelliptic Jacobians and Pryms, the degree of
the rank-at-most-three locus of quadrics, and the IC Euler characteristics of
theta divisors with a few nodes.  The determinantal degree is the one entry
with an independent check (see ``determinantal_oracle``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .errors import DomainError

QUADRIC_CHI_IC = {"smooth": 4, "cone": 3, "two-planes": 6}


def _need(cond, msg):
    if not cond:
        raise DomainError(msg)


def jacobian_gauss_degree(g):
    """Gauss degree of the theta divisor of a Jacobian of genus ``g``: ``C(2g-2, g-1)``."""
    _need(isinstance(g, int) and g >= 2, "genus must be an integer >= 2")
    return comb(2 * g - 2, g - 1)


def hyperelliptic_gauss_degree(g):
    _need(isinstance(g, int) and g >= 2, "genus must be an integer >= 2")
    return 2 ** (g - 1)


def symmetric_determinantal_degree(m, r):
    """Degree of the locus of symmetric ``m x m`` matrices of rank at most ``r``.

    ``prod_{a=0}^{m-r-1} C(m+a, m-r-a) / C(2a+1, a)``, computed exactly.
    """
    _need(isinstance(m, int) and isinstance(r, int) and 1 <= r <= m, "need 1 <= r <= m")
    val = Fraction(1)
    for a in range(m - r):
        val *= Fraction(comb(m + a, m - r - a), comb(2 * a + 1, a))
    if val.denominator != 1:
        raise ArithmeticError(f"non-integral determinantal degree for ({m}, {r})")
    return int(val)


def rank3_quadric_degree(g):
    """Degree of the quadrics of rank at most three in ``P^{g-1}``."""
    _need(isinstance(g, int) and g >= 3, "genus must be an integer >= 3")
    return symmetric_determinantal_degree(g, 3)


def prym_gauss_degree(g):
    _need(isinstance(g, int) and g >= 3, "genus must be an integer >= 3")
    return rank3_quadric_degree(g) + 2 ** (g - 3)


def nodal_theta_chi_ic(g, k):
    """IC Euler characteristic of a theta divisor with ``k`` ordinary double points."""
    _need(isinstance(g, int) and g >= 2, "genus must be an integer >= 2")
    _need(isinstance(k, int) and k >= 0, "node count must be a nonnegative integer")
    if k == 0:
        return factorial(g)
    return factorial(g) - (2 * k if g % 2 == 0 else k)


def n0_threshold(g):
    _need(isinstance(g, int) and g >= 2, "genus must be an integer >= 2")
    return factorial(g) - (2 if g % 2 == 0 else 1)


def quadric_chi_ic(kind):
    try:
        return QUADRIC_CHI_IC[kind]
    except KeyError:
        raise DomainError(f"unknown quadric type {kind!r}; expected one of {sorted(QUADRIC_CHI_IC)}") from None


@dataclass(frozen=True)
class SchottkyRow:
    genus: int
    jacobian_degree: int
    hyperelliptic_degree: int
    prym_degree: int
    d_value: int
    n0_threshold: int
    chi_ic: tuple          # k = 0, 1, 2 nodes

    def as_dict(self):
        return {
            "genus": self.genus,
            "jacobian_degree": self.jacobian_degree,
            "hyperelliptic_degree": self.hyperelliptic_degree,
            "prym_degree": self.prym_degree,
            "D": self.d_value,
            "n0_threshold": self.n0_threshold,
            "chi_ic": list(self.chi_ic),
        }


def schottky_row(g):
    """One table row.  Pryms need ``g >= 3``, so the genus-two row leaves those entries empty."""
    return SchottkyRow(
        g,
        jacobian_gauss_degree(g),
        hyperelliptic_gauss_degree(g),
        prym_gauss_degree(g) if g >= 3 else None,
        rank3_quadric_degree(g) if g >= 3 else None,
        n0_threshold(g),
        tuple(nodal_theta_chi_ic(g, k) for k in (0, 1, 2)),
    )


def schottky_table(g_max):
    _need(isinstance(g_max, int) and g_max >= 2, "g_max must be an integer >= 2")
    return [schottky_row(g) for g in range(2, g_max + 1)]


# IC Euler characteristic of the theta divisor of a hyperelliptic Jacobian of
# genus four (reference value; its singular locus is a curve, not nodes)
HYPERELLIPTIC_G4_CHI_IC = 14


def theta_with_nodes_g4(nodes):
    """Genus-4 theta divisor whose singular locus is ``nodes`` ordinary double points.

    Returns ``(deg gamma, chi_IC)``; both equal ``4! - 2 * nodes``.
    """
    _need(isinstance(nodes, int) and 0 <= nodes <= 10, "node count must be in 0..10")
    val = factorial(4) - 2 * nodes
    return val, val


def hyperelliptic_g4_pair():
    """``(deg gamma_Theta, chi_IC)`` for a hyperelliptic Jacobian of genus four."""
    return hyperelliptic_gauss_degree(4), HYPERELLIPTIC_G4_CHI_IC


def determinantal_oracle(m, r):
    """Degree of the rank ``<= r`` symmetric locus from a Groebner basis of its minors ideal."""
    from .algebra import PolynomialRing
    from .geometry import minors
    from .groebner import Ideal, dimension_degree

    names = [f"a{i}{j}" for i in range(m) for j in range(i, m)]
    R = PolynomialRing(names)

    def entry(i, j):
        i, j = min(i, j), max(i, j)
        return R.gen(f"a{i}{j}")

    M = [[entry(i, j) for j in range(m)] for i in range(m)]
    if r >= m:
        return 1
    I = Ideal(minors(M, r + 1), R)
    return dimension_degree(I, "projective").degree
