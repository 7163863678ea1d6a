"""Fuzzy membership maps from confidence-weighted preference quanta.

With a degree of confidence attached to each quantum, narrowing the
Pareto set becomes a three-stage procedure: solve three nested crisp
problems and assign each grid node a membership value according to the
innermost Pareto set it still belongs to.  The stage order depends on
which confidence is larger:

* mu1 >= mu2: plain criteria, then the quantum-1 family (FBAR4), then
  the combined family (G4); nodes dropped at the second stage get
  1 - mu1, nodes dropped at the third get 1 - mu2.
* mu1 <  mu2: plain criteria, then the quantum-2 family (FHAT3), then
  the combined family; the dropped-node values are 1 - mu2 and 1 - mu1.

Either way the combined family keeps membership 1 and the smaller
confidence labels the middle tier, so values never increase from CORE
outwards.  The plain three-criterion Pareto set equals the whole feasible
set for this model, which build_membership takes as given; verify_nesting
recomputes it by brute force along with the inclusion chain.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .ces import EconomicProblem, ResourceBundle
from .pareto import GridSpec, OracleResult, oracle_pareto
from .quanta import (
    ConsistencyError,
    CriteriaKind,
    PreferencePair,
    check_natural_compromise,
)

__all__ = [
    "Tier",
    "FuzzyScenario",
    "MembershipMap",
    "ClassifiedPoint",
    "NestingReport",
    "build_membership",
    "classify_point",
    "verify_nesting",
]


class Tier(Enum):
    CORE = "CORE"
    MID = "MID"
    OUTER = "OUTER"


@dataclass(frozen=True)
class FuzzyScenario:
    """A problem, a confidence-carrying preference pair, and a grid window."""

    problem: EconomicProblem
    pair: PreferencePair
    grid: GridSpec

    def __post_init__(self) -> None:
        if self.pair.p1.confidence is None or self.pair.p2.confidence is None:
            raise ValueError("fuzzy reduction needs a confidence on both quanta")
        violations = check_natural_compromise(self.pair)
        if violations:
            raise ConsistencyError(
                "fuzzy reduction requires the natural-compromise inequalities",
                violations=violations,
            )

    @property
    def mu1(self) -> float:
        return float(self.pair.p1.confidence)

    @property
    def mu2(self) -> float:
        return float(self.pair.p2.confidence)

    @property
    def stage2_kind(self) -> CriteriaKind:
        """Which family defines the middle Pareto set; equal confidences
        fall into the first branch."""
        return CriteriaKind.FBAR4 if self.mu1 >= self.mu2 else CriteriaKind.FHAT3

    @property
    def branch(self) -> str:
        return "mu1>=mu2" if self.mu1 >= self.mu2 else "mu1<mu2"

    def tier_values(self) -> dict[Tier, float]:
        mu_small = min(self.mu1, self.mu2)
        mu_large = max(self.mu1, self.mu2)
        return {Tier.CORE: 1.0, Tier.MID: 1.0 - mu_small, Tier.OUTER: 1.0 - mu_large}


@dataclass(frozen=True)
class MembershipMap:
    """Per-node membership values and tier labels over a grid.

    ``tiers`` and ``values`` align with the grid's flat node order.
    CORE nodes (the combined-family Pareto set) carry value 1; MID carries
    1 minus the smaller confidence; OUTER 1 minus the larger.
    """

    grid: GridSpec
    branch: str
    tiers: tuple[Tier, ...]
    values: np.ndarray
    tier_values: dict[Tier, float]

    def tier_counts(self) -> dict[Tier, int]:
        counts = {tier: 0 for tier in Tier}
        for t in self.tiers:
            counts[t] += 1
        return counts

    def core_indices(self) -> frozenset[int]:
        return frozenset(i for i, t in enumerate(self.tiers) if t is Tier.CORE)


def _tiers_from_oracles(
    grid: GridSpec, core: OracleResult, stage2: OracleResult
) -> tuple[Tier, ...]:
    tiers = []
    for i in range(grid.node_count):
        if i in core.kept:
            tiers.append(Tier.CORE)
        elif i in stage2.kept:
            tiers.append(Tier.MID)
        else:
            tiers.append(Tier.OUTER)
    return tuple(tiers)


def build_membership(
    scenario: FuzzyScenario,
    *,
    core: OracleResult | None = None,
    stage2: OracleResult | None = None,
) -> MembershipMap:
    """Run the two informative stages and assemble the membership map.

    The first stage (plain criteria) keeps every node, so only the
    second-stage and combined-family oracles are computed.  Precomputed
    oracles may be passed to avoid duplicate grid scans.
    """
    if core is None:
        core = oracle_pareto(CriteriaKind.G4, scenario.pair, scenario.problem, scenario.grid)
    if stage2 is None:
        stage2 = oracle_pareto(
            scenario.stage2_kind, scenario.pair, scenario.problem, scenario.grid
        )
    tiers = _tiers_from_oracles(scenario.grid, core, stage2)
    tv = scenario.tier_values()
    values = np.array([tv[t] for t in tiers], dtype=float)
    return MembershipMap(
        grid=scenario.grid,
        branch=scenario.branch,
        tiers=tiers,
        values=values,
        tier_values=tv,
    )


@dataclass(frozen=True)
class ClassifiedPoint:
    """Tier and membership of the grid node nearest to a queried bundle."""

    tier: Tier
    value: float
    node_index: int
    node_k: float
    node_l: float
    snap_distance: float


def classify_point(
    scenario: FuzzyScenario,
    x: ResourceBundle,
    membership: MembershipMap | None = None,
) -> ClassifiedPoint:
    """Snap a bundle to its nearest grid node and report that node's tier.

    Raises ValueError when the bundle lies outside the grid window.  Pass
    a prebuilt membership map to avoid recomputing the oracles per query.
    """
    if membership is None:
        membership = build_membership(scenario)
    idx = scenario.grid.nearest_index(x.K, x.L)
    nodes = scenario.grid.nodes()
    node_k, node_l = float(nodes[idx, 0]), float(nodes[idx, 1])
    distance = float(np.hypot(node_k - x.K, node_l - x.L))
    return ClassifiedPoint(
        tier=membership.tiers[idx],
        value=float(membership.values[idx]),
        node_index=idx,
        node_k=node_k,
        node_l=node_l,
        snap_distance=distance,
    )


@dataclass(frozen=True)
class NestingReport:
    """Brute-force verification of the three-stage inclusion chain."""

    branch: str
    stage2_kind: CriteriaKind
    full_cardinality: int
    stage2_cardinality: int
    core_cardinality: int
    node_count: int
    core_within_stage2: bool
    stage2_within_full: bool
    full_is_whole_grid: bool
    membership_bounded: bool
    core_is_unit_level_set: bool
    tier_counts: dict[Tier, int]

    @property
    def chain_holds(self) -> bool:
        return (
            self.core_within_stage2
            and self.stage2_within_full
            and self.full_is_whole_grid
            and self.membership_bounded
            and self.core_is_unit_level_set
        )

    def to_dict(self) -> dict:
        return {
            "branch": self.branch,
            "stage2Kind": self.stage2_kind.value,
            "cardinalities": {
                "full": self.full_cardinality,
                "stage2": self.stage2_cardinality,
                "core": self.core_cardinality,
                "grid": self.node_count,
            },
            "coreWithinStage2": self.core_within_stage2,
            "stage2WithinFull": self.stage2_within_full,
            "fullIsWholeGrid": self.full_is_whole_grid,
            "membershipBounded": self.membership_bounded,
            "coreIsUnitLevelSet": self.core_is_unit_level_set,
            "chainHolds": self.chain_holds,
            "tierCounts": {t.value: c for t, c in self.tier_counts.items()},
        }


def verify_nesting(
    scenario: FuzzyScenario,
    *,
    full: OracleResult | None = None,
    stage2: OracleResult | None = None,
    core: OracleResult | None = None,
) -> NestingReport:
    """Recompute all three oracle sets and check the inclusion chain and
    the membership upper bound; violations are reported, not raised."""
    if full is None:
        full = oracle_pareto(CriteriaKind.F3, scenario.pair, scenario.problem, scenario.grid)
    if stage2 is None:
        stage2 = oracle_pareto(
            scenario.stage2_kind, scenario.pair, scenario.problem, scenario.grid
        )
    if core is None:
        core = oracle_pareto(CriteriaKind.G4, scenario.pair, scenario.problem, scenario.grid)
    tiers = _tiers_from_oracles(scenario.grid, core, stage2)
    tv = scenario.tier_values()
    values = np.array([tv[t] for t in tiers], dtype=float)
    unit_level = frozenset(np.flatnonzero(values == 1.0).tolist())
    # a zero confidence makes an outer tier value equal to 1, so the unit
    # level set can only be required to match CORE when both drops are real
    if tv[Tier.MID] < 1.0 and tv[Tier.OUTER] < 1.0:
        core_is_unit_level = unit_level == core.kept
    else:
        core_is_unit_level = core.kept <= unit_level
    counts = {tier: 0 for tier in Tier}
    for t in tiers:
        counts[t] += 1
    return NestingReport(
        branch=scenario.branch,
        stage2_kind=scenario.stage2_kind,
        full_cardinality=full.cardinality,
        stage2_cardinality=stage2.cardinality,
        core_cardinality=core.cardinality,
        node_count=scenario.grid.node_count,
        core_within_stage2=core.kept <= stage2.kept,
        stage2_within_full=stage2.kept <= full.kept,
        full_is_whole_grid=full.cardinality == scenario.grid.node_count,
        membership_bounded=bool(np.all(values <= 1.0)),
        core_is_unit_level_set=core_is_unit_level,
        tier_counts=counts,
    )
