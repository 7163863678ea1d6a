"""Pareto set reduction workbench for a three-criterion CES economy.

The workbench evaluates a constant-elasticity-of-substitution technology
under three money criteria, narrows the Pareto set with crisp and fuzzy
quanta of information about decision-maker preferences, and reconciles
the closed-form ray solutions with a brute-force dominance oracle.
"""

__version__ = "0.1.0"

from .ces import (
    CesDomainError,
    CesParams,
    CriteriaVector,
    EconomicProblem,
    Prices,
    ResourceBundle,
    cobb_douglas_limit,
    criteria,
    marginal_products,
    output,
    validate_params,
)
from .fuzzy import FuzzyScenario, MembershipMap, Tier, build_membership, classify_point, verify_nesting
from .pareto import (
    AggregateCoefficients,
    CriteriaKind,
    DomainFailure,
    GridSpec,
    NoInteriorRay,
    RayFamily,
    SimplexWeights,
    SweepSpec,
    compare_formulas,
    dominates,
    nondominated_filter,
    oracle_pareto,
    ray_family_sweep,
    scalarization,
    stationary_ray_derived,
    stationary_ray_reference,
)
from .quanta import (
    ConsistencyError,
    ConsistencyStatus,
    PreferencePair,
    Quantum,
    build_fbar,
    build_fhat,
    build_g,
    check_consistency,
    check_natural_compromise,
    quantum_vector,
)

__all__ = [
    "__version__",
    "CesDomainError",
    "CesParams",
    "CriteriaVector",
    "EconomicProblem",
    "Prices",
    "ResourceBundle",
    "cobb_douglas_limit",
    "criteria",
    "marginal_products",
    "output",
    "validate_params",
    "ConsistencyError",
    "ConsistencyStatus",
    "PreferencePair",
    "Quantum",
    "build_fbar",
    "build_fhat",
    "build_g",
    "check_consistency",
    "check_natural_compromise",
    "quantum_vector",
    "AggregateCoefficients",
    "CriteriaKind",
    "DomainFailure",
    "GridSpec",
    "NoInteriorRay",
    "RayFamily",
    "SimplexWeights",
    "SweepSpec",
    "compare_formulas",
    "dominates",
    "nondominated_filter",
    "oracle_pareto",
    "ray_family_sweep",
    "scalarization",
    "stationary_ray_derived",
    "stationary_ray_reference",
    "FuzzyScenario",
    "MembershipMap",
    "Tier",
    "build_membership",
    "classify_point",
    "verify_nesting",
]
