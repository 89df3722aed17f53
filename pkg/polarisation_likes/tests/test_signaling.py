"""
Unit tests for the signaling and like-decision module.
"""

import numpy as np
import pytest

from polarisation_likes.enums import GammaMode
from polarisation_likes.signaling import (
    DEFAULT_GAMMA_SWEEP, Message, SignalingEngine, SimulationConfig
)
from polarisation_likes.spatial import Politician, SpatialEngine


@pytest.fixture
def small_config():
    """Heterogeneous configuration with few messages for fast tests."""
    return SimulationConfig(seed=42, messages_per_politician=60)


class TestPosterior:
    """Test cases for the weighted-average belief update."""

    def test_zero_weight_keeps_prior(self):
        """Test that ω = 0 ignores the signal."""
        assert SignalingEngine.posterior(2.0, 4.7, 0.0) == 2.0

    def test_equal_weights_midpoint(self):
        """Test that ω = 1 gives the midpoint."""
        assert SignalingEngine.posterior(2.0, 4.0, 1.0) == pytest.approx(3.0)

    def test_heavy_signal(self):
        """Test 2/4 + (3/4)·6 = 5."""
        assert SignalingEngine.posterior(2.0, 6.0, 3.0) == pytest.approx(5.0)

    def test_between_prior_and_signal(self):
        """Test on 10⁴ random triples that the posterior lies between μ and δ."""
        rng = np.random.default_rng(8)
        mu, delta = rng.uniform(1.0, 5.0, size=(2, 10_000))
        omega = rng.uniform(0.0, 10.0, size=10_000)
        value = SignalingEngine.posterior(mu, delta, omega)
        assert np.all(value >= np.minimum(mu, delta) - 1e-12)
        assert np.all(value <= np.maximum(mu, delta) + 1e-12)

    def test_increasing_in_signal(self):
        """Test on 10⁴ random triples that a larger δ moves the posterior up when ω > 0."""
        rng = np.random.default_rng(9)
        mu, delta = rng.uniform(1.0, 5.0, size=(2, 10_000))
        step = rng.uniform(0.01, 2.0, size=10_000)
        omega = rng.uniform(0.01, 10.0, size=10_000)
        lower = SignalingEngine.posterior(mu, delta, omega)
        higher = SignalingEngine.posterior(mu, delta + step, omega)
        assert np.all(higher > lower)
        np.testing.assert_allclose(higher - lower, omega / (1 + omega) * step)


class TestLikeDecision:
    """Test cases for the popularity/authenticity trade-off."""

    def test_gain_without_authenticity_cost(self):
        """Test a like when the update moves toward the front-runner and γ = 0."""
        liker = Politician("i", mu=2.0, sigma=1.0, gamma=0.0)
        assert SignalingEngine.like_decision(liker, Message("j", 4.0), 3.0, 1.0)

    def test_authenticity_cost_blocks_like(self):
        """Test that 1 - 0.6·2 < 0 gives no like."""
        liker = Politician("i", mu=2.0, sigma=1.0, gamma=0.6)
        assert not SignalingEngine.like_decision(liker, Message("j", 4.0), 3.0, 1.0)

    def test_indifference_is_not_a_like(self):
        """Test that ΔP = ΔA = 0 gives no like (strict inequality)."""
        liker = Politician("i", mu=3.0, sigma=1.0, gamma=0.0)
        assert not SignalingEngine.like_decision(liker, Message("j", 3.0), 3.0, 1.0)

    def test_self_like_rejected(self):
        """Test that a politician cannot judge its own message."""
        liker = Politician("i", mu=3.0, sigma=1.0)
        with pytest.raises(ValueError):
            SignalingEngine.like_decision(liker, Message("i", 3.0), 3.0, 1.0)


class TestSimulationConfig:
    """Test cases for SimulationConfig validation."""

    def test_defaults(self):
        """Test the documented defaults."""
        config = SimulationConfig()
        assert config.omega == 1.0
        assert config.messages_per_politician == 500
        assert config.gamma_mode == GammaMode.HETEROGENEOUS
        assert (config.gamma_mean, config.gamma_sd) == (0.1, 0.1)

    def test_mode_from_string(self):
        """Test that the mode accepts its string value."""
        assert SimulationConfig(gamma_mode="homogeneous").gamma_mode == GammaMode.HOMOGENEOUS

    @pytest.mark.parametrize("kwargs", [{"omega": -1.0}, {"messages_per_politician": 0}, {"gamma": -0.1}])
    def test_invalid_values(self, kwargs):
        """Test that invalid parameters are rejected."""
        with pytest.raises(ValueError):
            SimulationConfig(**kwargs)


class TestGammaAssignment:
    """Test cases for authenticity assignment."""

    def test_homogeneous(self, calibrated_politicians):
        """Test that every politician receives the same γ."""
        actors = SignalingEngine.assign_gammas(
            calibrated_politicians, SimulationConfig(gamma_mode="homogeneous", gamma=0.15)
        )
        assert {p.gamma for p in actors} == {0.15}

    def test_heterogeneous_truncated_and_reproducible(self, calibrated_politicians):
        """Test that heterogeneous draws are non-negative and seed-determined."""
        config = SimulationConfig(seed=3)
        first = SignalingEngine.assign_gammas(calibrated_politicians, config)
        second = SignalingEngine.assign_gammas(list(reversed(calibrated_politicians)), config)
        assert all(p.gamma >= 0 for p in first)
        assert [p.gamma for p in first] == [p.gamma for p in second]
        assert len({p.gamma for p in first}) > 1


class TestSimulate:
    """Test cases for the like simulation."""

    def test_reproducible(self, calibrated_politicians, electorates, small_config):
        """Test bit-identical results for a fixed seed."""
        electorate = electorates["empirical_discrete"]
        first = SignalingEngine.simulate(calibrated_politicians, electorate, small_config)
        second = SignalingEngine.simulate(calibrated_politicians, electorate, small_config)
        np.testing.assert_array_equal(first.counts, second.counts)

    def test_matrix_invariants(self, calibrated_politicians, electorates, small_config):
        """Test the zero diagonal and the 0..M range of every entry."""
        result = SignalingEngine.simulate(calibrated_politicians, electorates["empirical_discrete"],
                                          small_config)
        assert result.counts.shape == (28, 28)
        assert np.all(np.diag(result.counts) == 0)
        assert result.counts.min() >= 0
        assert result.counts.max() <= small_config.messages_per_politician
        assert result.ids == tuple(sorted(p.id for p in calibrated_politicians))

    def test_matches_scalar_decision(self, toy_politicians):
        """Test the vectorized counts against like_decision message by message."""
        electorate = SpatialEngine.make_electorate(
            "empirical_discrete", {"shares": [0.2] * 5, "null_share": 0.0}
        )
        config = SimulationConfig(seed=5, messages_per_politician=40)
        result = SignalingEngine.simulate(toy_politicians, electorate, config)
        outcome = SpatialEngine.compete(toy_politicians, electorate)
        actors = SignalingEngine.assign_gammas(toy_politicians, config)
        deltas = SignalingEngine.draw_messages(actors, config)
        for i, liker in enumerate(actors):
            for j, sender in enumerate(actors):
                if i == j:
                    continue
                expected = sum(
                    SignalingEngine.like_decision(liker, Message(sender.id, float(d)),
                                                  outcome.front_runner_mu(liker.id), config.omega)
                    for d in deltas[j]
                )
                assert result.counts[i, j] == expected

    def test_identical_politicians_never_like(self, electorates):
        """Test that no gain is possible toward an identical front-runner."""
        clones = [Politician(f"C{k}", mu=3.0, sigma=0.5) for k in range(5)]
        config = SimulationConfig(seed=1, messages_per_politician=50,
                                  gamma_mode="homogeneous", gamma=0.0)
        result = SignalingEngine.simulate(clones, electorates["empirical_discrete"], config)
        assert result.total == 0

    def test_cross_coalition_likes_without_authenticity(self, calibrated_politicians, electorates):
        """Test that γ = 0 still produces likes between opponents."""
        config = SimulationConfig(seed=42, messages_per_politician=100,
                                  gamma_mode="homogeneous", gamma=0.0)
        result = SignalingEngine.simulate(calibrated_politicians, electorates["empirical_discrete"], config)
        assert SignalingEngine.cross_coalition_share(result) > 0

    def test_dyad_table_has_all_ordered_pairs(self, calibrated_politicians, electorates, small_config):
        """Test 28² = 784 dyads with zero-like, non-opponent self pairs."""
        result = SignalingEngine.simulate(calibrated_politicians, electorates["empirical_discrete"],
                                          small_config)
        dyads = SignalingEngine.dyad_table(result)
        assert len(dyads) == 784
        self_pairs = dyads[dyads["liker_id"] == dyads["sender_id"]]
        assert (self_pairs["likes"] == 0).all()
        assert (self_pairs["opponents"] == 0).all()

    def test_symmetrized(self, calibrated_politicians, electorates, small_config):
        """Test that the undirected matrix is L + Lᵀ."""
        result = SignalingEngine.simulate(calibrated_politicians, electorates["empirical_discrete"],
                                          small_config)
        sym = result.symmetrized()
        np.testing.assert_array_equal(sym, sym.T)
        np.testing.assert_array_equal(sym, result.counts + result.counts.T)


class TestGammaSweep:
    """Test cases for homogeneous γ sweeps with common random numbers."""

    @pytest.fixture
    def sweep(self, calibrated_politicians, electorates):
        config = SimulationConfig(seed=42, messages_per_politician=200)
        return SignalingEngine.gamma_sweep(calibrated_politicians, electorates["empirical_discrete"],
                                           config, DEFAULT_GAMMA_SWEEP)

    def test_sweep_points(self, sweep):
        """Test one matrix per γ in sweep order."""
        assert list(sweep) == list(DEFAULT_GAMMA_SWEEP)

    def test_entries_nonincreasing_in_gamma(self, sweep):
        """Test that raising γ never adds a like to any dyad."""
        matrices = [m.counts for m in sweep.values()]
        for lower, higher in zip(matrices, matrices[1:]):
            assert np.all(higher <= lower)

    def test_large_default_sweep_share_nonincreasing(self, calibrated_politicians, electorates):
        """Test that the share of likes given to opponents never rises along the default sweep."""
        sweep = SignalingEngine.gamma_sweep(calibrated_politicians, electorates["empirical_discrete"],
                                            SimulationConfig(seed=42), DEFAULT_GAMMA_SWEEP)
        shares = [SignalingEngine.cross_coalition_share(m) for m in sweep.values()]
        for lower, higher in zip(shares, shares[1:]):
            assert higher <= lower
        assert shares[-1] < shares[0]
