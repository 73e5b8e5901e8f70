import pytest
from hypothesis import given, strategies as st

from core.boundary import boundary_jump, continuity_scan, noise_bias
from core.errors import InvalidInputError
from schemas.mechanism_schema import ClaimProfile


class TestBoundaryJump:

    def test_square_rule_jump(self):
        jump = boundary_jump([1.0, 2.0], 2.0)
        assert jump.scarcity_limit == pytest.approx([0.6, 2.4], abs=1e-12)
        assert jump.jump == pytest.approx([0.4, -0.4], abs=1e-12)
        assert jump.sup_norm == pytest.approx(0.4, abs=1e-12)

    @pytest.mark.parametrize('v', [[1.0, 2.0], [0.3, 5.0, 2.2], [7.0]])
    def test_linear_rule_is_continuous(self, v):
        assert boundary_jump(v, 1.0).sup_norm <= 1e-12

    @pytest.mark.parametrize('alpha', [0.5, 2.0, 3.0])
    def test_equal_overages_have_no_jump(self, alpha):
        assert boundary_jump([2.0, 2.0, 2.0], alpha).sup_norm <= 1e-12

    @given(st.lists(st.floats(0.01, 10.0), min_size=1, max_size=6), st.sampled_from([0.5, 1.0, 2.0, 3.0]))
    def test_jump_conserves_mass(self, v, alpha):
        jump = boundary_jump(v, alpha)
        total = sum(v)
        assert sum(jump.jump) == pytest.approx(0.0, abs=1e-9 * total)
        assert sum(jump.slack_limit) == pytest.approx(total, rel=1e-12)
        assert sum(jump.scarcity_limit) == pytest.approx(total, rel=1e-9)

    @pytest.mark.parametrize('v, alpha', [([1.0, 0.0], 2.0), ([], 2.0), ([1.0, 2.0], 0.0)])
    def test_invalid_input(self, v, alpha):
        with pytest.raises(InvalidInputError):
            boundary_jump(v, alpha)


class TestContinuityScan:

    def test_only_linear_rule_is_continuous(self):
        rows = {row.alpha: row for row in continuity_scan([0.5, 1.0, 2.0, 3.0], 10_000, 3, seed=1)}
        assert rows[1.0].continuous
        assert rows[1.0].max_sup_norm <= 1e-12
        for alpha in (0.5, 2.0, 3.0):
            assert not rows[alpha].continuous
            assert rows[alpha].min_sup_norm >= 1e-6

    def test_single_overage_never_jumps(self):
        rows = continuity_scan([0.5, 2.0], 100, 1, seed=1)
        assert all(row.max_sup_norm <= 1e-12 for row in rows)

    def test_continuity_tolerance_is_configurable(self):
        rows = {row.alpha: row for row in continuity_scan([1.0, 2.0], 500, 3, seed=1, tol=10.0)}
        assert rows[1.0].continuous
        assert rows[2.0].continuous

    def test_non_positive_alpha(self):
        with pytest.raises(InvalidInputError):
            continuity_scan([0.0], 10, 2, seed=1)


class TestNoiseBias:

    def test_square_rule_tends_to_half_jump(self, ent3, kink_profile):
        result = noise_bias(ent3, kink_profile, 2.0, 1e-3, 100_000, seed=3)
        assert result.half_jump_limit[:2] == pytest.approx([-0.2, 0.2])
        assert result.bias[0] == pytest.approx(-0.2, rel=0.2)
        assert result.scarcity_share == pytest.approx(0.5, abs=0.05)

    def test_linear_rule_bias_vanishes_with_noise(self, ent3, kink_profile):
        """O viés em α = 1 é O(ε) pela dobra do pagamento; exige-se que diminua com ε, não que fique em 3 SE."""
        coarse = noise_bias(ent3, kink_profile, 1.0, 1e-2, 20_000, seed=3)
        fine = noise_bias(ent3, kink_profile, 1.0, 1e-3, 20_000, seed=3)
        assert fine.half_jump_limit == [0.0, 0.0, 0.0]
        assert fine.bias_norm < 1e-3
        assert coarse.bias_norm > 5 * fine.bias_norm

    def test_same_seed_same_estimate(self, ent3, kink_profile):
        first = noise_bias(ent3, kink_profile, 2.0, 1e-2, 25_000, seed=8)
        second = noise_bias(ent3, kink_profile, 2.0, 1e-2, 25_000, seed=8)
        assert first.bias == second.bias

    def test_profile_off_boundary(self, ent3):
        with pytest.raises(InvalidInputError):
            noise_bias(ent3, ClaimProfile(C=[12.0, 15.0, 4.0]), 2.0, 1e-3, 100, seed=1)

    @pytest.mark.parametrize('epsilon, samples', [(0.0, 100), (1e-3, 0)])
    def test_invalid_parameters(self, ent3, kink_profile, epsilon, samples):
        with pytest.raises(InvalidInputError):
            noise_bias(ent3, kink_profile, 2.0, epsilon, samples, seed=1)
