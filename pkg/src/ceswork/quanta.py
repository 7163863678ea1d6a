"""Preference quanta and the recombined criterion families they induce.

A quantum of information states that one group of criteria is more
important than another, with explicit trade-off weights and, optionally,
a degree of confidence.  The workbench uses exactly two opposing quanta:
resource costs over revenue (quantum 1) and revenue over resource costs
(quantum 2).  Consistent quanta let the Pareto set be narrowed by moving
to a recombined criterion vector; this module builds those recombinations.
"""

from __future__ import annotations

from collections.abc import Callable, Mapping
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .ces import EconomicProblem, criteria_values

__all__ = [
    "ConsistencyError",
    "ConsistencyStatus",
    "CriteriaKind",
    "Quantum",
    "PreferencePair",
    "DerivedComponent",
    "DerivedCriteria",
    "CONSISTENCY_INEQUALITIES",
    "NATURAL_COMPROMISE_INEQUALITIES",
    "quantum_vector",
    "check_consistency",
    "check_natural_compromise",
    "build_g",
    "build_fbar",
    "build_fhat",
    "derived_table",
]

# Canonical inequality names surfaced in reports and API error payloads.
CONSISTENCY_INEQUALITIES = (
    "w1(1)/w3(1) > w1(2)/w3(2)",
    "w2(1)/w3(1) > w2(2)/w3(2)",
)
NATURAL_COMPROMISE_INEQUALITIES = (
    "w1(1) > w3(1)",
    "w2(1) > w3(1)",
    "w3(2) > w1(2)",
    "w3(2) > w2(2)",
)


class ConsistencyError(ValueError):
    """A preference pair failed the checks the reduction pipeline requires."""

    def __init__(self, message: str, violations: tuple[str, ...]):
        super().__init__(message)
        self.violations = violations


class ConsistencyStatus(Enum):
    """Which of the two cross-quantum trade-off inequalities hold."""

    BOTH_HOLD = "bothHold"
    FIRST_ONLY = "firstOnly"
    SECOND_ONLY = "secondOnly"
    INCONSISTENT = "inconsistent"

    @property
    def is_consistent(self) -> bool:
        """At least one inequality holds."""
        return self is not ConsistencyStatus.INCONSISTENT


class CriteriaKind(Enum):
    """The criterion families the engine can filter and scalarize.

    F3 is the plain three-criterion vector; G4 recombines with both
    quanta; FBAR4 recombines with quantum 1 only; FHAT3 with quantum 2
    only.
    """

    F3 = "f3"
    G4 = "g4"
    FBAR4 = "fbar4"
    FHAT3 = "fhat3"

    @property
    def component_count(self) -> int:
        return {"f3": 3, "g4": 4, "fbar4": 4, "fhat3": 3}[self.value]


@dataclass(frozen=True)
class Quantum:
    """One quantum of information about the decision maker's preferences.

    Criteria in ``important`` gain weight ``weights[i]`` while criteria in
    ``less_important`` may lose ``weights[j]``; ``confidence`` is the
    optional degree of confidence in the compromise.  Indices are 1-based
    over the criterion vector.
    """

    important: frozenset[int]
    less_important: frozenset[int]
    weights: Mapping[int, float]
    confidence: float | None = None

    def __post_init__(self) -> None:
        if not self.important:
            raise ValueError("important group must be nonempty")
        if not self.less_important:
            raise ValueError("less-important group must be nonempty")
        if self.important & self.less_important:
            raise ValueError("important and less-important groups must be disjoint")
        members = self.important | self.less_important
        missing = members - set(self.weights)
        if missing:
            raise ValueError(f"weights missing for indices {sorted(missing)}")
        for i, w in self.weights.items():
            if i not in members:
                raise ValueError(f"weight given for index {i} outside both groups")
            if not w > 0.0:
                raise ValueError(f"weight for index {i} must be strictly positive, got {w}")
        if self.confidence is not None and not 0.0 <= self.confidence <= 1.0:
            raise ValueError(f"confidence must lie in [0, 1], got {self.confidence}")


def quantum_vector(q: Quantum, m: int) -> np.ndarray:
    """The preferred-direction vector in R^m induced by a quantum.

    Entry i is +w_i on the important group, -w_j on the less-important
    group and 0 elsewhere.
    """
    members = q.important | q.less_important
    if any(i < 1 or i > m for i in members):
        raise IndexError(f"criterion indices {sorted(members)} out of range 1..{m}")
    y = np.zeros(m, dtype=float)
    for i in q.important:
        y[i - 1] = q.weights[i]
    for j in q.less_important:
        y[j - 1] = -q.weights[j]
    return y


@dataclass(frozen=True)
class PreferencePair:
    """The two opposing quanta used throughout the workbench.

    ``p1`` must state {1, 2} over {3} (costs over revenue) and ``p2``
    must state {3} over {1, 2}.  Consistency and natural-compromise
    checks are deliberately separate operations so a UI can display a
    violating configuration instead of refusing to construct it.
    """

    p1: Quantum
    p2: Quantum

    def __post_init__(self) -> None:
        if self.p1.important != frozenset({1, 2}) or self.p1.less_important != frozenset({3}):
            raise ValueError("quantum 1 must state {1,2} more important than {3}")
        if self.p2.important != frozenset({3}) or self.p2.less_important != frozenset({1, 2}):
            raise ValueError("quantum 2 must state {3} more important than {1,2}")

    @classmethod
    def from_weights(
        cls,
        w1: tuple[float, float, float],
        w2: tuple[float, float, float],
        mu1: float | None = None,
        mu2: float | None = None,
    ) -> "PreferencePair":
        """Build the pair from the two weight triples (w1, w2, w3)."""
        p1 = Quantum(
            important=frozenset({1, 2}),
            less_important=frozenset({3}),
            weights={1: w1[0], 2: w1[1], 3: w1[2]},
            confidence=mu1,
        )
        p2 = Quantum(
            important=frozenset({3}),
            less_important=frozenset({1, 2}),
            weights={1: w2[0], 2: w2[1], 3: w2[2]},
            confidence=mu2,
        )
        return cls(p1=p1, p2=p2)

    @property
    def weights1(self) -> tuple[float, float, float]:
        return (self.p1.weights[1], self.p1.weights[2], self.p1.weights[3])

    @property
    def weights2(self) -> tuple[float, float, float]:
        return (self.p2.weights[1], self.p2.weights[2], self.p2.weights[3])


def check_consistency(pair: PreferencePair) -> ConsistencyStatus:
    """Evaluate the two cross-quantum trade-off inequalities.

    The pair is consistent when at least one holds; the reduction
    pipeline additionally requires both.
    """
    w11, w21, w31 = pair.weights1
    w12, w22, w32 = pair.weights2
    first = w11 / w31 > w12 / w32
    second = w21 / w31 > w22 / w32
    if first and second:
        return ConsistencyStatus.BOTH_HOLD
    if first:
        return ConsistencyStatus.FIRST_ONLY
    if second:
        return ConsistencyStatus.SECOND_ONLY
    return ConsistencyStatus.INCONSISTENT


def check_natural_compromise(pair: PreferencePair) -> tuple[str, ...]:
    """Check that each quantum's gain exceeds its loss.

    Returns the violated inequalities by name; an empty tuple means all
    four hold, which implies both consistency inequalities.
    """
    w11, w21, w31 = pair.weights1
    w12, w22, w32 = pair.weights2
    checks = (w11 > w31, w21 > w31, w32 > w12, w32 > w22)
    return tuple(
        name for name, ok in zip(NATURAL_COMPROMISE_INEQUALITIES, checks) if not ok
    )


@dataclass(frozen=True)
class DerivedComponent:
    """One recombined criterion: revenue_coef * f3 + resource_coef * (f1 or f2).

    ``resource`` names which resource cost the component touches ("K" maps
    to f1, "L" to f2, None for a pure revenue component).  Stored
    coefficients are the positive quantum weights before the criterion
    signs are applied; structural zeros are allowed but not negatives.
    """

    name: str
    revenue_coef: float
    resource_coef: float
    resource: str | None

    def __post_init__(self) -> None:
        if self.revenue_coef < 0.0 or self.resource_coef < 0.0:
            raise ValueError(f"component {self.name}: coefficients must be nonnegative")
        if self.revenue_coef == 0.0 and self.resource_coef == 0.0:
            raise ValueError(f"component {self.name}: at least one coefficient must be positive")
        if self.resource not in (None, "K", "L"):
            raise ValueError(f"component {self.name}: resource must be 'K', 'L' or None")
        if self.resource is None and self.resource_coef != 0.0:
            raise ValueError(f"component {self.name}: resource coefficient without a resource")

    @property
    def row(self) -> tuple[float, float, float]:
        """Coefficients on (f1, f2, f3)."""
        c1 = self.resource_coef if self.resource == "K" else 0.0
        c2 = self.resource_coef if self.resource == "L" else 0.0
        return (c1, c2, self.revenue_coef)


@dataclass(frozen=True)
class DerivedCriteria:
    """A recombined criterion vector as a linear map on (f1, f2, f3)."""

    kind: CriteriaKind
    components: tuple[DerivedComponent, ...]

    def __post_init__(self) -> None:
        if len(self.components) != self.kind.component_count:
            raise ValueError(
                f"{self.kind.value} needs {self.kind.component_count} components, "
                f"got {len(self.components)}"
            )

    @property
    def matrix(self) -> np.ndarray:
        """(n_components, 3) matrix M such that derived = M @ f."""
        return np.array([c.row for c in self.components], dtype=float)

    def apply(self, f) -> np.ndarray:
        """Recombine raw criterion values; f has shape (..., 3)."""
        return np.asarray(f, dtype=float) @ self.matrix.T

    def evaluator(self, problem: EconomicProblem) -> Callable[..., np.ndarray]:
        """Vectorized map (k, l) -> derived criterion values of shape (..., n)."""
        matrix_t = self.matrix.T

        def evaluate(k, l) -> np.ndarray:
            return criteria_values(problem, k, l) @ matrix_t

        return evaluate


_F3_COMPONENTS = (
    DerivedComponent("f1", revenue_coef=0.0, resource_coef=1.0, resource="K"),
    DerivedComponent("f2", revenue_coef=0.0, resource_coef=1.0, resource="L"),
    DerivedComponent("f3", revenue_coef=1.0, resource_coef=0.0, resource=None),
)


def derived_table(kind: CriteriaKind, pair: PreferencePair | None) -> DerivedCriteria:
    """The recombination table for any criteria kind (identity for F3).

    G4 requires both trade-off inequalities: with only one (or none) the
    reduction theorem behind that family does not apply.
    """
    if kind is CriteriaKind.F3:
        return DerivedCriteria(kind=CriteriaKind.F3, components=_F3_COMPONENTS)
    if pair is None:
        raise ValueError(f"{kind.value} requires a preference pair")
    w11, w21, w31 = pair.weights1
    w12, w22, w32 = pair.weights2
    if kind is CriteriaKind.G4:
        status = check_consistency(pair)
        if status is not ConsistencyStatus.BOTH_HOLD:
            held = (w11 / w31 > w12 / w32, w21 / w31 > w22 / w32)
            violated = tuple(
                name for name, ok in zip(CONSISTENCY_INEQUALITIES, held) if not ok
            )
            raise ConsistencyError(
                f"recombination requires both trade-off inequalities, status is {status.value}",
                violations=violated,
            )
        components = (
            DerivedComponent("g13", revenue_coef=w11, resource_coef=w31, resource="K"),
            DerivedComponent("g23", revenue_coef=w21, resource_coef=w31, resource="L"),
            DerivedComponent("g31", revenue_coef=w12, resource_coef=w32, resource="K"),
            DerivedComponent("g32", revenue_coef=w22, resource_coef=w32, resource="L"),
        )
    elif kind is CriteriaKind.FBAR4:
        components = (
            DerivedComponent("f1", revenue_coef=0.0, resource_coef=1.0, resource="K"),
            DerivedComponent("f2", revenue_coef=0.0, resource_coef=1.0, resource="L"),
            DerivedComponent("g13", revenue_coef=w11, resource_coef=w31, resource="K"),
            DerivedComponent("g23", revenue_coef=w21, resource_coef=w31, resource="L"),
        )
    elif kind is CriteriaKind.FHAT3:
        components = (
            DerivedComponent("g31", revenue_coef=w12, resource_coef=w32, resource="K"),
            DerivedComponent("g32", revenue_coef=w22, resource_coef=w32, resource="L"),
            DerivedComponent("f3", revenue_coef=1.0, resource_coef=0.0, resource=None),
        )
    else:
        raise ValueError(f"unknown criteria kind {kind!r}")
    return DerivedCriteria(kind=kind, components=components)


def build_g(
    pair: PreferencePair, problem: EconomicProblem
) -> tuple[DerivedCriteria, Callable[..., np.ndarray]]:
    """The four-component recombination using both quanta."""
    table = derived_table(CriteriaKind.G4, pair)
    return table, table.evaluator(problem)


def build_fbar(
    pair: PreferencePair, problem: EconomicProblem
) -> tuple[DerivedCriteria, Callable[..., np.ndarray]]:
    """The four-component family (f1, f2, g13, g23) using quantum 1 only."""
    table = derived_table(CriteriaKind.FBAR4, pair)
    return table, table.evaluator(problem)


def build_fhat(
    pair: PreferencePair, problem: EconomicProblem
) -> tuple[DerivedCriteria, Callable[..., np.ndarray]]:
    """The three-component family (g31, g32, f3) using quantum 2 only."""
    table = derived_table(CriteriaKind.FHAT3, pair)
    return table, table.evaluator(problem)
