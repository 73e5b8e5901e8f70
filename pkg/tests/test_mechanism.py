import numpy as np
import pytest
from hypothesis import given, settings as hyp_settings, strategies as st
from pydantic import ValidationError

from core.errors import InvalidInputError
from core.mechanism import (
    budget_identity_residual, clear_alpha, clear_batch, clear_linear, decompose,
    scarcity_factor, scarcity_factors
)
from schemas.mechanism_schema import AlphaRule, ClaimProfile, Entitlements, Regime


class TestDecompose:

    def test_overages_and_slacks(self, ent3, scarce_profile):
        os = decompose(scarce_profile, ent3)
        assert os.v == [2.0, 5.0, 0.0]
        assert os.s == [0.0, 0.0, 6.0]
        assert (os.X, os.I) == (7.0, 6.0)
        assert os.defectors == [0, 1]
        assert os.cooperators == [2]

    def test_claim_equal_to_entitlement_is_cooperator(self):
        os = decompose(ClaimProfile(C=[10.0, 20.0]), Entitlements(L=[10.0, 10.0]))
        assert os.cooperators == [0]
        assert os.v == [0.0, 10.0]

    def test_cooperative_profile(self, ent3):
        os = decompose(ClaimProfile(C=ent3.L), ent3)
        assert os.X == os.I == 0.0
        assert os.cooperators == [0, 1, 2]

    def test_length_mismatch(self, ent3):
        with pytest.raises(InvalidInputError):
            decompose(ClaimProfile(C=[1.0, 2.0]), ent3)


class TestClearing:

    def test_linear_scarcity(self, ent3, scarce_profile):
        outcome = clear_linear(scarce_profile, ent3)
        assert outcome.regime == Regime.SCARCITY
        assert outcome.covered == pytest.approx([12 / 7, 30 / 7, 0.0])
        assert outcome.payoffs == pytest.approx([10 + 12 / 7, 10 + 30 / 7, 4.0])
        assert sum(outcome.payoffs) == pytest.approx(30.0)

    def test_all_defect_pays_entitlements(self, ent3):
        outcome = clear_linear(ClaimProfile(C=[20.0, 15.0, 11.0]), ent3)
        assert outcome.payoffs == ent3.L

    def test_cooperative_profile_pays_entitlements(self, ent3):
        outcome = clear_linear(ClaimProfile(C=ent3.L), ent3)
        assert outcome.payoffs == ent3.L
        assert outcome.regime == Regime.BOUNDARY

    def test_alpha_boundary_uses_slack_branch(self, ent3, kink_profile):
        outcome = clear_alpha(kink_profile, ent3, AlphaRule(alpha=2.0))
        assert outcome.regime == Regime.BOUNDARY
        assert outcome.covered == [1.0, 2.0, 0.0]

    def test_alpha_scarcity_side(self, ent3):
        outcome = clear_alpha(ClaimProfile(C=[11.0, 12.0, 7.001]), ent3, AlphaRule(alpha=2.0))
        assert outcome.regime == Regime.SCARCITY
        assert outcome.covered[:2] == pytest.approx([0.5998, 2.3992], abs=1e-12)

    def test_alpha_must_be_positive(self):
        with pytest.raises(ValidationError):
            AlphaRule(alpha=0.0)

    @given(st.lists(st.floats(0.0, 30.0), min_size=3, max_size=3))
    def test_alpha_one_matches_linear(self, claims):
        ent = Entitlements(L=[10.0, 8.0, 12.0])
        profile = ClaimProfile(C=claims)
        linear = clear_linear(profile, ent)
        alpha = clear_alpha(profile, ent, AlphaRule(alpha=1.0))
        assert alpha.payoffs == pytest.approx(linear.payoffs, abs=1e-12)

    def test_batch_matches_single(self, ent3):
        rng = np.random.default_rng(3)
        C = rng.uniform(0.0, 20.0, size=(50, 3))
        batch = clear_batch(C, ent3.L)
        for row, payoffs in zip(C, batch.payoffs):
            assert clear_linear(ClaimProfile(C=row.tolist()), ent3).payoffs == pytest.approx(payoffs.tolist())


class TestBudgetIdentity:

    def test_unused_surplus(self):
        ent = Entitlements(L=[10.0, 10.0])
        profile = ClaimProfile(C=[5.0, 10.0])
        outcome = clear_linear(profile, ent)
        assert sum(outcome.payoffs) == 15.0
        assert outcome.unused_surplus == 5.0
        assert budget_identity_residual(outcome, ent, decompose(profile, ent)) == 0.0

    def test_scarcity_residual(self, ent3, scarce_profile):
        outcome = clear_linear(scarce_profile, ent3)
        residual = budget_identity_residual(outcome, ent3, decompose(scarce_profile, ent3))
        assert residual == pytest.approx(0.0, abs=1e-12)

    @hyp_settings(max_examples=300)
    @given(
        st.lists(st.floats(0.5, 20.0), min_size=1, max_size=8).flatmap(
            lambda L: st.tuples(
                st.just(L),
                st.lists(st.floats(0.0, 40.0), min_size=len(L), max_size=len(L)),
            )
        ),
        st.sampled_from([0.5, 1.0, 2.0, 3.0]),
    )
    def test_budget_and_no_sucker_loss(self, data, alpha):
        L, C = data
        ent = Entitlements(L=L)
        profile = ClaimProfile(C=C)
        outcome = clear_alpha(profile, ent, AlphaRule(alpha=alpha))
        os = decompose(profile, ent)
        assert abs(budget_identity_residual(outcome, ent, os)) <= 1e-9 * sum(L)
        for j in os.cooperators:
            assert outcome.payoffs[j] == C[j]


class TestBatchSweep:

    ALPHAS = [0.5, 1.0, 2.0, 3.0]

    @pytest.mark.parametrize('alpha', ALPHAS)
    @pytest.mark.parametrize('n', range(1, 9))
    def test_budget_feasibility_and_no_sucker_loss(self, n, alpha):
        rng = np.random.default_rng(100 * n + int(10 * alpha))
        L = rng.uniform(0.5, 20.0, size=n)
        C = rng.uniform(0.0, 2.0, size=(10_000, n)) * L
        res = clear_batch(C, L, alpha=alpha)
        scale = L.sum()

        unused = np.maximum(res.I - res.X, 0.0)
        assert np.abs(res.payoffs.sum(axis=1) - (scale - unused)).max() <= 1e-9 * scale

        cooperators = C <= L
        assert np.array_equal(res.payoffs[cooperators], C[cooperators])

        assert np.all(res.covered >= 0.0)
        assert np.all(res.covered <= res.v + 1e-12 * scale)
        assert np.abs(res.covered.sum(axis=1) - np.minimum(res.X, res.I)).max() <= 1e-9 * scale
        assert np.all(res.v * res.s == 0.0)

    @pytest.mark.parametrize('n', range(1, 9))
    def test_all_defect_and_cooperative_pay_entitlements(self, n):
        rng = np.random.default_rng(n)
        for _ in range(100):
            L = rng.uniform(0.5, 20.0, size=n)
            C = np.vstack([L + rng.uniform(0.01, 10.0, size=n), L])
            for alpha in self.ALPHAS:
                res = clear_batch(C, L, alpha=alpha)
                np.testing.assert_array_equal(res.payoffs, np.vstack([L, L]))


class TestScarcityFactor:

    @pytest.mark.parametrize('X, I, expected', [(0.0, 5.0, 0.0), (10.0, 5.0, 0.5), (5.0, 10.0, 0.0)])
    def test_values(self, X, I, expected):
        assert scarcity_factor(X, I) == expected

    def test_vectorised(self):
        assert scarcity_factors([0.0, 10.0, 5.0], [5.0, 5.0, 10.0]).tolist() == [0.0, 0.5, 0.0]

    def test_negative_totals(self):
        with pytest.raises(InvalidInputError):
            scarcity_factor(-1.0, 2.0)


class TestSchemas:

    def test_negative_claim(self):
        with pytest.raises(ValidationError):
            ClaimProfile(C=[-1.0, 2.0])

    def test_claim_above_bound(self):
        with pytest.raises(ValidationError):
            ClaimProfile(C=[25.0], M=20.0)

    def test_empty_entitlements(self):
        with pytest.raises(ValidationError):
            Entitlements(L=[])
