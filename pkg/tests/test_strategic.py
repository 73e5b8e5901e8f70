import numpy as np
import pytest
from hypothesis import given, strategies as st

from core.errors import InvalidInputError, SearchSpaceError
from core.strategic import (
    best_response, coalition_payoff, coalition_payoff_closed_form, coalition_proofness_search,
    coalition_sweep, cooperative_nash_check, dominance_sweep, payoff_branch_formula, payoff_of,
    tu_transfers
)
from schemas.mechanism_schema import AlphaRule, ClaimProfile, Entitlements

LINEAR = AlphaRule(alpha=1.0)
SQUARE = AlphaRule(alpha=2.0)


class TestPayoff:

    def test_scarcity_branch(self, ent3):
        # X_{-j} = 6, I_{-j} = 5, y = 4
        assert payoff_of(0, 14.0, [16.0, 5.0], ent3, LINEAR) == pytest.approx(12.0)
        assert payoff_branch_formula(0, 14.0, [16.0, 5.0], ent3, LINEAR) == pytest.approx(12.0)

    def test_slack_branch(self, ent3):
        assert payoff_of(0, 12.0, [10.0, 5.0], ent3, LINEAR) == 12.0

    def test_claim_at_entitlement(self, ent3):
        assert payoff_of(1, 10.0, [3.0, 19.0], ent3, SQUARE) == 10.0

    def test_wrong_number_of_others(self, ent3):
        with pytest.raises(InvalidInputError):
            payoff_of(0, 12.0, [10.0], ent3, LINEAR)

    @given(
        st.floats(0.0, 20.0),
        st.lists(st.floats(0.0, 20.0), min_size=2, max_size=2),
        st.sampled_from([0.5, 1.0, 2.0, 3.0]),
    )
    def test_branch_formula_matches_clearing(self, claim, others, alpha):
        ent = Entitlements(L=[10.0, 10.0, 10.0])
        rule = AlphaRule(alpha=alpha)
        direct = payoff_of(0, claim, others, ent, rule)
        assert payoff_branch_formula(0, claim, others, ent, rule) == pytest.approx(direct, abs=1e-9)


class TestBestResponse:

    def test_linear_rule_is_monotone(self, ent3):
        rng = np.random.default_rng(11)
        for _ in range(20):
            others = rng.uniform(0.0, 20.0, size=2)
            report = best_response(1, others, ent3, LINEAR, 201, 20.0)
            assert report.monotone
            assert report.argmax_claim == 20.0
            assert report.kink_gap == pytest.approx(0.0, abs=1e-12)

    def test_others_at_bound(self, ent3):
        report = best_response(0, [20.0, 20.0], ent3, LINEAR, 21, 20.0)
        curve = dict(zip(report.grid, report.payoff_curve))
        assert all(p == 10.0 for c, p in curve.items() if c >= 10.0)
        assert all(p == c for c, p in curve.items() if c <= 10.0)

    def test_single_player_ties_toward_bound(self):
        report = best_response(0, [], Entitlements(L=[10.0]), LINEAR, 21, 20.0)
        assert report.argmax_claim == 20.0
        assert report.payoff_curve == pytest.approx([min(c, 10.0) for c in report.grid])

    def test_square_rule_kink_violation(self, ent3):
        report = best_response(0, [12.0, 7.0], ent3, SQUARE, 201, 20.0)
        assert not report.monotone
        assert report.monotone_by_branch
        assert report.kink_claim == 11.0
        assert report.kink_gap == pytest.approx(-0.4)
        assert report.first_violation[2] == pytest.approx(0.4, abs=1e-6)
        assert report.argmax_claim == 20.0

    def test_bound_must_exceed_entitlements(self, ent3):
        with pytest.raises(InvalidInputError):
            best_response(0, [1.0, 1.0], ent3, LINEAR, 21, 10.0)

    def test_grid_too_small(self, ent3):
        with pytest.raises(InvalidInputError):
            best_response(0, [1.0, 1.0], ent3, LINEAR, 1, 20.0)


class TestDominance:

    def test_linear_rule_has_no_violations(self):
        ent = Entitlements(L=[4.0, 7.0, 10.0, 5.0])
        summary = dominance_sweep(ent, LINEAR, trials=50, grid_size=201, seed=5, M=15.0)
        assert summary.theorem_mode
        assert summary.violations == 0
        assert summary.argmax_failures == 0
        assert summary.passed

    @pytest.mark.parametrize('n', [2, 4, 6])
    def test_linear_rule_over_random_entitlements(self, n):
        rng = np.random.default_rng(40 + n)
        ent = Entitlements(L=rng.uniform(1.0, 10.0, size=n).tolist())
        summary = dominance_sweep(ent, LINEAR, trials=1000, grid_size=101, seed=n, M=max(ent.L) + 5.0)
        assert summary.evaluations == 1000 * n
        assert summary.violations == 0
        assert summary.argmax_failures == 0

    def test_claim_cost_is_only_reported(self, ent3):
        summary = dominance_sweep(ent3, LINEAR, trials=20, grid_size=41, seed=5, M=20.0, claim_cost=1.0)
        assert not summary.theorem_mode
        assert summary.argmax_failures > 0
        assert summary.passed

    def test_same_seed_same_summary(self, ent3):
        first = dominance_sweep(ent3, SQUARE, trials=10, grid_size=41, seed=9, M=20.0)
        second = dominance_sweep(ent3, SQUARE, trials=10, grid_size=41, seed=9, M=20.0)
        assert first == second


class TestCooperativeNash:

    @pytest.mark.parametrize('L', [[10.0, 10.0, 10.0], [3.0, 5.0, 8.0], [1.0]])
    def test_entitlements_are_equilibrium(self, L):
        result = cooperative_nash_check(Entitlements(L=L), 101, 2.0 * max(L))
        assert result.holds
        assert result.witness is None


class TestCoalitions:

    def test_worked_instance(self, ent3):
        profile = ClaimProfile(C=[5.0, 20.0, 20.0])
        assert coalition_payoff(profile, ent3, [0, 1]) == pytest.approx(17.5)
        assert coalition_payoff_closed_form(profile, ent3, [0, 1]) == pytest.approx(17.5)

    def test_grand_coalition_all_defect(self, ent3):
        assert coalition_payoff(ClaimProfile(C=[20.0, 20.0, 20.0]), ent3, [0, 1, 2]) == 30.0

    def test_cooperating_singleton(self, ent3):
        assert coalition_payoff(ClaimProfile(C=[10.0, 20.0, 3.0]), ent3, [0]) == 10.0

    def test_empty_coalition(self, ent3):
        with pytest.raises(InvalidInputError):
            coalition_payoff(ClaimProfile(C=[10.0, 10.0, 10.0]), ent3, [])

    def test_search_respects_bound(self, ent3):
        report = coalition_proofness_search(ent3, 20.0, [0, 1], 21)
        assert report.best_deviation_sum <= 20.0 + 1e-9
        assert report.bound_satisfied
        assert report.closed_form_check <= 1e-9
        assert report.case2_check <= 1e-9
        assert report.evaluations == 2 * 21 ** 2

    def test_search_space_cap(self, ent3):
        with pytest.raises(SearchSpaceError):
            coalition_proofness_search(ent3, 20.0, [0, 1, 2], 21, max_evaluations=1000)

    def test_slack_case_coalition_sum(self):
        # X <= I: Σ_K π = Σ_K L + X_K - I_K
        rng = np.random.default_rng(17)
        checked = 0
        while checked < 200:
            L = rng.uniform(1.0, 10.0, size=4)
            C = L * rng.uniform(0.0, 1.6, size=4)
            v = np.maximum(C - L, 0.0)
            s = np.maximum(L - C, 0.0)
            if v.sum() > s.sum():
                continue
            ent = Entitlements(L=L.tolist())
            profile = ClaimProfile(C=C.tolist())
            K = [0, 2]
            expected = L[K].sum() + v[K].sum() - s[K].sum()
            assert coalition_payoff(profile, ent, K) == pytest.approx(expected, abs=1e-9)
            assert coalition_payoff_closed_form(profile, ent, K) == pytest.approx(expected, abs=1e-9)
            checked += 1

    @pytest.mark.parametrize('n', [1, 2, 3, 4, 5])
    def test_every_coalition_over_random_entitlements(self, n):
        rng = np.random.default_rng(70 + n)
        ent = Entitlements(L=rng.uniform(1.0, 10.0, size=n).tolist())
        reports = coalition_sweep(ent, max(ent.L) + 5.0, 9)
        assert len(reports) == 2 ** n - 1
        assert all(r.bound_satisfied for r in reports)
        assert all(r.best_deviation_sum <= r.baseline_sum + 1e-9 for r in reports)
        assert max(r.closed_form_check for r in reports) <= 1e-9
        assert max(r.case2_check for r in reports) <= 1e-9

    def test_sweep_covers_every_coalition(self):
        ent = Entitlements(L=[3.0, 6.0, 9.0])
        reports = coalition_sweep(ent, 12.0, 11)
        assert len(reports) == 7
        assert all(r.bound_satisfied for r in reports)
        assert max(r.closed_form_check for r in reports) <= 1e-9


class TestTransfers:

    def test_profitable_deviation(self):
        transfers = tu_transfers([10.0, 10.0], [9.0, 12.0])
        assert transfers == pytest.approx([1.5, -1.5])
        assert sum(transfers) == pytest.approx(0.0)

    def test_no_aggregate_gain(self):
        assert tu_transfers([10.0, 10.0], [12.0, 8.0]) is None
