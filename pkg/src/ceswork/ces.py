"""CES production technology and the three-criterion economic model.

A capital/labor bundle (K, L) maps to output through a production function
with constant elasticity of substitution.  On top of the technology sit
three money criteria, all oriented so that more is better: negated capital
cost, negated labor cost, and revenue.

Everything here is a pure function of its inputs.  The numeric kernels are
written against numpy and accept scalars or arrays alike; the engine
modules evaluate them over whole grids.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "CesDomainError",
    "CesParams",
    "Prices",
    "ResourceBundle",
    "CriteriaVector",
    "EconomicProblem",
    "ValidationReport",
    "validate_params",
    "output",
    "output_values",
    "cobb_douglas_limit",
    "criteria",
    "criteria_values",
    "marginal_products",
    "marginal_values",
    "unit_output",
    "unit_marginals",
]


class CesDomainError(ValueError):
    """The CES form is undefined at r = 0; use the Cobb-Douglas limit."""


@dataclass(frozen=True)
class CesParams:
    """CES technology parameters.

    ``F`` is total factor productivity, ``a`` the capital share and ``r``
    the substitution parameter; the elasticity of substitution between
    capital and labor is 1/(1+r).  A neoclassical technology requires
    F > 0, 0 < a < 1 and r > -1, all strict.  Construction does not
    enforce these so that :func:`validate_params` can report violations;
    the evaluation operations assume a valid parameter set.
    """

    F: float
    a: float
    r: float

    @property
    def elasticity_of_substitution(self) -> float:
        return 1.0 / (1.0 + self.r)


@dataclass(frozen=True)
class Prices:
    """Unit prices of capital, labor and output.  All must be positive."""

    pK: float
    pL: float
    pQ: float


@dataclass(frozen=True)
class ResourceBundle:
    """A point (K, L) of the feasible set, the open positive quadrant."""

    K: float
    L: float

    def __post_init__(self) -> None:
        if not (self.K > 0.0 and self.L > 0.0):
            raise ValueError(f"resource bundle must be strictly positive, got ({self.K}, {self.L})")


@dataclass(frozen=True)
class CriteriaVector:
    """The three criteria at a bundle: f1, f2 are negated resource costs,
    f3 is revenue.  For any valid bundle f1 < 0, f2 < 0 and f3 > 0."""

    f1: float
    f2: float
    f3: float

    def as_array(self) -> np.ndarray:
        return np.array([self.f1, self.f2, self.f3], dtype=float)


@dataclass(frozen=True)
class EconomicProblem:
    """A CES technology together with the prices that define the criteria."""

    params: CesParams
    prices: Prices


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of the neoclassicity and price checks.

    ``violations`` lists each failed inequality by name; ``notes`` carries
    advisories that are not violations (currently only the r = 0 case,
    which is valid but requires the Cobb-Douglas limit operation).
    """

    ok: bool
    violations: tuple[str, ...]
    notes: tuple[str, ...] = ()


def validate_params(params: CesParams, prices: Prices) -> ValidationReport:
    """Check the neoclassicity conditions on the technology and the price signs."""
    violations = []
    if not params.F > 0.0:
        violations.append("F > 0")
    if not params.a > 0.0:
        violations.append("0 < a")
    if not params.a < 1.0:
        violations.append("a < 1")
    if not params.r > -1.0:
        violations.append("r > -1")
    if not prices.pK > 0.0:
        violations.append("pK > 0")
    if not prices.pL > 0.0:
        violations.append("pL > 0")
    if not prices.pQ > 0.0:
        violations.append("pQ > 0")
    notes = []
    if params.r == 0.0:
        notes.append("r == 0: direct CES evaluation is undefined, use cobb_douglas_limit")
    return ValidationReport(ok=not violations, violations=tuple(violations), notes=tuple(notes))


def unit_output(a: float, r: float, k, l):
    """CES aggregate (a*k^-r + (1-a)*l^-r)^(-1/r) without the productivity factor.

    Evaluated through exp/log so extreme k/l ratios or large ``|r|`` cannot
    overflow the way a direct ``k**(-r)`` would.
    """
    lk = np.log(k)
    ll = np.log(l)
    s = np.logaddexp(np.log(a) - r * lk, np.log1p(-a) - r * ll)
    return np.exp(-s / r)


def unit_marginals(a: float, r: float, k, l):
    """Partial derivatives of :func:`unit_output` with respect to k and l."""
    lk = np.log(k)
    ll = np.log(l)
    # a*(a + (1-a)(l/k)^-r)^(-(1+r)/r)  and  (1-a)*(a(k/l)^-r + (1-a))^(-(1+r)/r)
    sk = np.logaddexp(np.log(a), np.log1p(-a) - r * (ll - lk))
    sl = np.logaddexp(np.log(a) - r * (lk - ll), np.log1p(-a))
    c = -(1.0 + r) / r
    return a * np.exp(c * sk), (1.0 - a) * np.exp(c * sl)


def _require_nonzero_r(params: CesParams) -> None:
    if params.r == 0.0:
        raise CesDomainError("CES output is undefined at r = 0; call cobb_douglas_limit")


def output(params: CesParams, x: ResourceBundle) -> float:
    """Output quantity Q = F*(a*K^-r + (1-a)*L^-r)^(-1/r)."""
    _require_nonzero_r(params)
    return float(params.F * unit_output(params.a, params.r, x.K, x.L))


def output_values(params: CesParams, k, l):
    """Vectorized :func:`output` over arrays of capital and labor."""
    _require_nonzero_r(params)
    return params.F * unit_output(params.a, params.r, k, l)


def cobb_douglas_limit(params: CesParams, x: ResourceBundle) -> float:
    """The r -> 0 limit F*K^a*L^(1-a) of the CES form."""
    return float(params.F * np.exp(params.a * np.log(x.K) + (1.0 - params.a) * np.log(x.L)))


def criteria(problem: EconomicProblem, x: ResourceBundle) -> CriteriaVector:
    """The criterion vector (-pK*K, -pL*L, pQ*Q) at a bundle."""
    q = output(problem.params, x)
    return CriteriaVector(
        f1=float(-problem.prices.pK * x.K),
        f2=float(-problem.prices.pL * x.L),
        f3=float(problem.prices.pQ * q),
    )


def criteria_values(problem: EconomicProblem, k, l) -> np.ndarray:
    """Vectorized criteria: stacked (..., 3) array over arrays of k, l."""
    q = output_values(problem.params, k, l)
    f1 = -problem.prices.pK * np.asarray(k, dtype=float)
    f2 = -problem.prices.pL * np.asarray(l, dtype=float)
    f3 = problem.prices.pQ * q
    return np.stack([f1, f2, f3], axis=-1)


def marginal_products(params: CesParams, x: ResourceBundle) -> tuple[float, float]:
    """Marginal products (dQ/dK, dQ/dL); both strictly positive."""
    _require_nonzero_r(params)
    mk, ml = unit_marginals(params.a, params.r, x.K, x.L)
    return float(params.F * mk), float(params.F * ml)


def marginal_values(params: CesParams, k, l):
    """Vectorized marginal products over arrays of k, l."""
    _require_nonzero_r(params)
    mk, ml = unit_marginals(params.a, params.r, k, l)
    return params.F * mk, params.F * ml
