import numpy as np
import pytest

from ceswork import (
    ConsistencyError,
    PreferencePair,
    ResourceBundle,
    build_membership,
    classify_point,
    verify_nesting,
)
from ceswork.fuzzy import FuzzyScenario, Tier
from ceswork.pareto import CriteriaKind, GridSpec, oracle_pareto


def scenario_for(problem, pair, n=15):
    return FuzzyScenario(
        problem=problem, pair=pair, grid=GridSpec(0.1, 10.0, 0.1, 10.0, n, n, "log")
    )


class TestScenario:
    def test_requires_both_confidences(self, unit_problem):
        pair = PreferencePair.from_weights((2, 2, 1), (2, 2, 3), mu1=0.8, mu2=None)
        with pytest.raises(ValueError):
            scenario_for(unit_problem, pair)

    def test_requires_natural_compromise(self, unit_problem):
        pair = PreferencePair.from_weights((1, 2, 1), (1, 1, 3), mu1=0.8, mu2=0.5)
        with pytest.raises(ConsistencyError) as err:
            scenario_for(unit_problem, pair)
        assert "w1(1) > w3(1)" in err.value.violations

    def test_branch_selection(self, unit_problem):
        high_first = PreferencePair.from_weights((2, 2, 1), (2, 2, 3), mu1=0.8, mu2=0.5)
        assert scenario_for(unit_problem, high_first).stage2_kind is CriteriaKind.FBAR4
        low_first = PreferencePair.from_weights((2, 2, 1), (2, 2, 3), mu1=0.5, mu2=0.8)
        assert scenario_for(unit_problem, low_first).stage2_kind is CriteriaKind.FHAT3
        # equal confidences stay in the first branch
        equal = PreferencePair.from_weights((2, 2, 1), (2, 2, 3), mu1=0.6, mu2=0.6)
        assert scenario_for(unit_problem, equal).stage2_kind is CriteriaKind.FBAR4

    def test_tier_values(self, unit_problem):
        pair = PreferencePair.from_weights((2, 2, 1), (2, 2, 3), mu1=0.8, mu2=0.5)
        values = scenario_for(unit_problem, pair).tier_values()
        assert values == {Tier.CORE: 1.0, Tier.MID: 0.5, Tier.OUTER: pytest.approx(0.2)}


class TestBuildMembership:
    def test_partition_and_core_identity(self, unit_problem, reducing_pair):
        scenario = scenario_for(unit_problem, reducing_pair)
        membership = build_membership(scenario)
        counts = membership.tier_counts()
        assert sum(counts.values()) == scenario.grid.node_count
        core = oracle_pareto(
            CriteriaKind.G4, reducing_pair, unit_problem, scenario.grid
        )
        assert membership.core_indices() == core.kept

    def test_values_follow_tiers(self, unit_problem, reducing_pair):
        scenario = scenario_for(unit_problem, reducing_pair)
        membership = build_membership(scenario)
        tv = membership.tier_values
        for tier, value in zip(membership.tiers, membership.values):
            assert value == tv[tier]
        assert set(np.unique(membership.values)) <= {1.0, 0.5, 1.0 - 0.8}

    def test_zero_confidence_erases_nothing(self, unit_problem):
        pair = PreferencePair.from_weights((2, 2, 1), (2, 2, 3), mu1=0.0, mu2=0.0)
        membership = build_membership(scenario_for(unit_problem, pair))
        assert np.all(membership.values == 1.0)

    def test_full_confidence_zeroes_outer_tiers(self, unit_problem):
        pair = PreferencePair.from_weights((2, 2, 1), (2, 2, 3), mu1=1.0, mu2=1.0)
        membership = build_membership(scenario_for(unit_problem, pair))
        tv = membership.tier_values
        assert tv[Tier.CORE] == 1.0 and tv[Tier.MID] == 0.0 and tv[Tier.OUTER] == 0.0
        core = membership.core_indices()
        positives = {int(i) for i in np.flatnonzero(membership.values > 0.0)}
        assert positives == core

    def test_branch_changes_middle_problem(self, unit_problem, reducing_pair):
        # crossing the confidence order swaps which family defines MID
        w1, w2 = (2, 2, 1), (2, 2, 3)
        first = build_membership(
            scenario_for(unit_problem, PreferencePair.from_weights(w1, w2, mu1=0.8, mu2=0.5))
        )
        second = build_membership(
            scenario_for(unit_problem, PreferencePair.from_weights(w1, w2, mu1=0.5, mu2=0.8))
        )
        grid = first.grid
        fbar = oracle_pareto(
            CriteriaKind.FBAR4, PreferencePair.from_weights(w1, w2), unit_problem, grid
        )
        fhat = oracle_pareto(
            CriteriaKind.FHAT3, PreferencePair.from_weights(w1, w2), unit_problem, grid
        )
        count_first = first.tier_counts()
        count_second = second.tier_counts()
        assert count_first[Tier.CORE] + count_first[Tier.MID] == fbar.cardinality
        assert count_second[Tier.CORE] + count_second[Tier.MID] == fhat.cardinality


class TestClassifyPoint:
    def test_core_node(self, unit_problem, reducing_pair):
        scenario = scenario_for(unit_problem, reducing_pair)
        membership = build_membership(scenario)
        core_idx = sorted(membership.core_indices())[0]
        node = scenario.grid.nodes()[core_idx]
        result = classify_point(
            scenario, ResourceBundle(float(node[0]), float(node[1])), membership
        )
        assert result.tier is Tier.CORE and result.value == 1.0
        assert result.snap_distance == pytest.approx(0.0)

    def test_outer_value(self, unit_problem):
        # crossed confidences put the strict FHAT3 subset in the middle, so
        # nodes outside it exist and carry 1 minus the larger confidence
        pair = PreferencePair.from_weights((2, 2, 1), (2, 2, 3), mu1=0.5, mu2=0.8)
        scenario = scenario_for(unit_problem, pair)
        membership = build_membership(scenario)
        outer = [i for i, t in enumerate(membership.tiers) if t is Tier.OUTER]
        assert outer, "expected a nonempty outer tier"
        node = scenario.grid.nodes()[outer[0]]
        result = classify_point(
            scenario, ResourceBundle(float(node[0]), float(node[1])), membership
        )
        assert result.tier is Tier.OUTER and result.value == pytest.approx(0.2)

    def test_repeat_query_identical(self, unit_problem, reducing_pair):
        scenario = scenario_for(unit_problem, reducing_pair)
        membership = build_membership(scenario)
        first = classify_point(scenario, ResourceBundle(1.3, 2.4), membership)
        second = classify_point(scenario, ResourceBundle(1.3, 2.4), membership)
        assert first == second

    def test_outside_window_rejected(self, unit_problem, reducing_pair):
        scenario = scenario_for(unit_problem, reducing_pair)
        membership = build_membership(scenario)
        with pytest.raises(ValueError):
            classify_point(scenario, ResourceBundle(50.0, 1.0), membership)


class TestVerifyNesting:
    def test_chain_holds(self, unit_problem, reducing_pair):
        report = verify_nesting(scenario_for(unit_problem, reducing_pair))
        assert report.chain_holds
        assert report.full_is_whole_grid
        assert report.core_cardinality <= report.stage2_cardinality <= report.full_cardinality

    def test_tier_partition(self, unit_problem, reducing_pair):
        scenario = scenario_for(unit_problem, reducing_pair)
        report = verify_nesting(scenario)
        assert sum(report.tier_counts.values()) == scenario.grid.node_count

    def test_confidence_swap_changes_stage2_cardinality(self, unit_problem):
        w1, w2 = (2, 2, 1), (2, 2, 3)
        r1 = verify_nesting(
            scenario_for(unit_problem, PreferencePair.from_weights(w1, w2, mu1=0.8, mu2=0.5))
        )
        r2 = verify_nesting(
            scenario_for(unit_problem, PreferencePair.from_weights(w1, w2, mu1=0.5, mu2=0.8))
        )
        assert r1.stage2_kind is CriteriaKind.FBAR4
        assert r2.stage2_kind is CriteriaKind.FHAT3
        assert r1.stage2_cardinality != r2.stage2_cardinality

    def test_report_serializes(self, unit_problem, reducing_pair):
        payload = verify_nesting(scenario_for(unit_problem, reducing_pair)).to_dict()
        assert payload["chainHolds"] is True
        assert set(payload["tierCounts"]) == {"CORE", "MID", "OUTER"}
