"""Exact algebra for conormal varieties and their specializations in families.

Polynomials over QQ with Groebner bases, elimination and saturation; conormal
and relative conormal ideals; the Lagrangian cycle obtained by specializing a
family; degrees of conic Lagrangian cycles; and closed-form Gauss degrees for
theta divisors.
"""

__version__ = "0.1.0"

from .algebra import QQ, MonomialOrder, Polynomial, PolynomialRing, PrimeField, make_ring
from .degrees import (
    DegreeReport,
    component_degree,
    family_degree,
    gauss_degree_trivialized,
    plane_curve_report,
    singularity_profile,
)
from .errors import (
    AmbiguousMultiplicityError,
    BudgetExceededError,
    ConormalError,
    DegenerateChoiceError,
    DomainError,
    NonHomogeneousError,
    NotZeroDimensionalError,
    ParseError,
    RingMismatchError,
    UndecomposedRemainderError,
    UnknownVariableError,
    UnsupportedSingularityError,
)
from .geometry import (
    AmbientSpec,
    FamilySpec,
    conormal_ideal,
    gauss_map_plucker,
    incidence_cover,
    relative_conormal_ideal,
    singular_locus,
)
from .groebner import (
    Ideal,
    budget,
    dimension_degree,
    eliminate,
    groebner_basis,
    ideal_quotient,
    intersect,
    saturate,
    saturation,
)
from .parsing import parse_input, parse_polynomial
from .primes import factor, minimal_primes
from .schottky import schottky_row, schottky_table
from .specialization import (
    LagrangianCycle,
    check_degree_conservation,
    check_jump_criterion,
    specialize_cycle,
)

__all__ = [name for name in dir() if not name.startswith("_")]
