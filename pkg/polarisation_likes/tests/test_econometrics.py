"""
Unit tests for the regression engine.
"""

import dataclasses

import numpy as np
import pandas as pd
import pytest

from polarisation_likes.calibration import default_electorates, default_politicians
from polarisation_likes.econometrics import (
    CONSTANT, TABLE_SPECIFICATIONS, PanelRow, RegressionEngine
)
from polarisation_likes.enums import CovarianceType, DependentVariable, RegressionTerm
from polarisation_likes.errors import (
    ConfigError, InsufficientData, NoVariation, RankDeficient, ZeroVariance
)
from polarisation_likes.signaling import SignalingEngine, SimulationConfig

COLUMN_9_TERMS = TABLE_SPECIFICATIONS[9][1]


def planted_frame(rows):
    return pd.DataFrame([vars(r) for r in rows])


class TestOls:
    """Test cases for the least-squares core."""

    def test_exact_fit(self):
        """Test y = 2x + 1 is recovered with zero residuals."""
        x = np.array([0.0, 1.0, 2.0, 3.0, 5.0])
        design = np.column_stack([np.ones(5), x])
        result = RegressionEngine.ols(design, 2 * x + 1, [CONSTANT, "x"])
        assert result.coefficients["x"] == pytest.approx(2.0)
        assert result.coefficients[CONSTANT] == pytest.approx(1.0)
        np.testing.assert_allclose(result.residuals, 0.0, atol=1e-10)

    def test_orthogonal_regressor(self):
        """Test a zero slope when y is orthogonal to the demeaned regressor."""
        x = np.array([-1.0, 0.0, 1.0, -1.0, 0.0, 1.0])
        y = np.array([1.0, -2.0, 1.0, 1.0, -2.0, 1.0])
        design = np.column_stack([np.ones(6), x])
        result = RegressionEngine.ols(design, y, [CONSTANT, "x"])
        assert result.coefficients["x"] == pytest.approx(0.0, abs=1e-12)

    def test_matches_normal_equations(self):
        """Test the coefficients against an explicit (X'X)⁻¹X'y solve."""
        design = np.array([
            [1.0, 2.0, 0.5],
            [1.0, -1.0, 1.5],
            [1.0, 0.0, -2.0],
            [1.0, 3.0, 1.0],
            [1.0, 1.0, 0.0],
        ])
        y = np.array([1.0, 4.0, -2.0, 3.5, 0.25])
        expected = np.linalg.solve(design.T @ design, design.T @ y)
        result = RegressionEngine.ols(design, y, [CONSTANT, "a", "b"])
        np.testing.assert_allclose(list(result.coefficients.values()), expected, atol=1e-10)

    def test_classical_standard_errors(self):
        """Test the classical covariance s²(X'X)⁻¹."""
        rng = np.random.default_rng(1)
        design = np.column_stack([np.ones(30), rng.normal(size=30)])
        y = design @ np.array([0.5, -1.0]) + rng.normal(size=30)
        result = RegressionEngine.ols(design, y, [CONSTANT, "x"])
        s2 = result.residuals @ result.residuals / (30 - 2)
        expected = np.sqrt(np.diag(s2 * np.linalg.inv(design.T @ design)))
        np.testing.assert_allclose([result.std_errors[CONSTANT], result.std_errors["x"]], expected)

    def test_residuals_orthogonal_to_design(self):
        """Test X'e = 0."""
        rng = np.random.default_rng(2)
        design = np.column_stack([np.ones(40), rng.normal(size=(40, 2))])
        y = rng.normal(size=40)
        result = RegressionEngine.ols(design, y)
        np.testing.assert_allclose(design.T @ result.residuals, 0.0, atol=1e-9)

    def test_constant_shift(self):
        """Test that shifting y moves only the intercept."""
        rng = np.random.default_rng(3)
        design = np.column_stack([np.ones(25), rng.normal(size=25)])
        y = rng.normal(size=25)
        base = RegressionEngine.ols(design, y, [CONSTANT, "x"])
        shifted = RegressionEngine.ols(design, y + 7.0, [CONSTANT, "x"])
        assert shifted.coefficients["x"] == pytest.approx(base.coefficients["x"])
        assert shifted.coefficients[CONSTANT] == pytest.approx(base.coefficients[CONSTANT] + 7.0)

    def test_robust_differs_from_classical(self):
        """Test that HC1 errors are used under heteroskedasticity."""
        rng = np.random.default_rng(4)
        x = rng.uniform(0, 5, size=200)
        design = np.column_stack([np.ones(200), x])
        y = 1 + x + rng.normal(size=200) * x
        classical = RegressionEngine.ols(design, y, [CONSTANT, "x"])
        robust = RegressionEngine.ols(design, y, [CONSTANT, "x"], cov_type="robust")
        assert robust.cov_type == CovarianceType.ROBUST
        assert robust.coefficients["x"] == pytest.approx(classical.coefficients["x"])
        assert robust.std_errors["x"] != pytest.approx(classical.std_errors["x"])

    def test_rank_deficient(self):
        """Test that a duplicated column is reported by name."""
        x = np.arange(6, dtype=float)
        design = np.column_stack([np.ones(6), x, 2 * x])
        with pytest.raises(RankDeficient) as info:
            RegressionEngine.ols(design, x ** 2, [CONSTANT, "x", "twice"])
        assert info.value.column == 2
        assert info.value.name == "twice"

    def test_too_few_rows(self):
        """Test that fewer rows than parameters is rejected."""
        with pytest.raises(InsufficientData):
            RegressionEngine.ols(np.ones((1, 2)), np.ones(1))

    def test_to_frame(self):
        """Test the exported table layout."""
        x = np.array([0.0, 1.0, 2.0, 4.0])
        result = RegressionEngine.ols(np.column_stack([np.ones(4), x]), x + 1, [CONSTANT, "x"])
        frame = result.to_frame()
        assert list(frame.columns) == ["term", "coef", "se", "tstat"]
        assert list(frame["term"]) == [CONSTANT, "x", "n_obs", "adj_r2"]
        assert frame.loc[2, "coef"] == 4


class TestSimulatedRegression:
    """Test cases for likes ~ opponents on simulated dyads."""

    @staticmethod
    def dyads(likes, opponents):
        return pd.DataFrame({"liker_id": [f"L{k}" for k in range(len(likes))],
                             "sender_id": "S", "likes": likes, "opponents": opponents})

    def test_constant_likes(self):
        """Test β = 0 and α = the constant when every dyad has the same likes."""
        result = RegressionEngine.simulated_regression(self.dyads([4] * 6, [0, 1, 0, 1, 1, 0]))
        assert result.coefficients["opponents"] == pytest.approx(0.0, abs=1e-12)
        assert result.coefficients[CONSTANT] == pytest.approx(4.0)

    def test_intercept_is_non_opponent_mean(self):
        """Test that α is the mean over allies and α + β the mean over opponents."""
        likes = [10, 12, 14, 1, 3]
        result = RegressionEngine.simulated_regression(self.dyads(likes, [0, 0, 0, 1, 1]))
        assert result.coefficients[CONSTANT] == pytest.approx(12.0)
        assert result.coefficients["opponents"] == pytest.approx(-10.0)

    def test_constant_opponents(self):
        """Test that an all-ally sample cannot identify β."""
        with pytest.raises(NoVariation):
            RegressionEngine.simulated_regression(self.dyads([1, 2, 3], [0, 0, 0]))

    def test_too_few_dyads(self):
        """Test the minimum sample size."""
        with pytest.raises(InsufficientData):
            RegressionEngine.simulated_regression(self.dyads([1, 2], [0, 1]))

    def test_large_default_simulation_opponent_penalty(self):
        """Test a significant negative opponent coefficient on 784 dyads."""
        politicians = default_politicians()
        electorate = default_electorates()["empirical_discrete"]
        likes = SignalingEngine.simulate(politicians, electorate, SimulationConfig(seed=42))
        result = RegressionEngine.simulated_regression(SignalingEngine.dyad_table(likes))
        assert result.n_obs == 784
        assert result.coefficients["opponents"] < 0
        assert result.tstats["opponents"] < -2.58

    def test_large_seed_sweep_opponent_penalty(self):
        """Test β < 0, t < -2.58 and α > 0 in at least 95 of 100 seeded runs."""
        politicians = default_politicians()
        electorate = default_electorates()["empirical_discrete"]
        hits = 0
        for seed in range(100):
            likes = SignalingEngine.simulate(politicians, electorate, SimulationConfig(seed=seed))
            result = RegressionEngine.simulated_regression(SignalingEngine.dyad_table(likes))
            hits += (result.coefficients["opponents"] < 0
                     and result.tstats["opponents"] < -2.58
                     and result.coefficients[CONSTANT] > 0)
        assert hits >= 95


class TestSpecification:
    """Test cases for panel specification checks."""

    def test_table_columns(self):
        """Test the nine reference columns."""
        assert sorted(TABLE_SPECIFICATIONS) == list(range(1, 10))
        for dependent, terms in TABLE_SPECIFICATIONS.values():
            RegressionEngine.validate_spec(dependent, terms)

    @pytest.mark.parametrize("dependent, terms", [
        ("votes", ["likes_sq"]),
        ("votes", ["likes", "likes_sq_x_opp"]),
        ("likes", ["opponents", "likes"]),
        ("votes", []),
        ("votes", ["opponents", "opponents"]),
        ("votes", ["distance"]),
        ("shares", ["opponents"]),
    ])
    def test_invalid_specifications(self, dependent, terms):
        """Test hierarchy, duplicate, unknown and self-explaining specifications."""
        with pytest.raises(ConfigError):
            RegressionEngine.validate_spec(dependent, terms)

    def test_normalized_values(self):
        """Test that names are turned into enumerations."""
        dependent, terms = RegressionEngine.validate_spec("votes", ["likes", "likes_x_opp"])
        assert dependent == DependentVariable.VOTES
        assert terms == (RegressionTerm.LIKES, RegressionTerm.LIKES_X_OPP)


class TestPanelRegression:
    """Test cases for the two-way fixed-effects panel regression."""

    def test_planted_coefficients(self, planted_panel):
        """Test exact recovery of the generating coefficients."""
        result = RegressionEngine.panel_fe_regression(planted_panel, "votes", COLUMN_9_TERMS)
        expected = {"opponents": 2.0, "following": 1.0, "likes": -0.3, "likes_x_opp": 1.5,
                    "likes_sq": 0.01, "likes_sq_x_opp": -0.02}
        for term, value in expected.items():
            assert result.coefficients[term] == pytest.approx(value, abs=1e-8)
        assert result.terms[0] == CONSTANT
        assert result.n_obs == len(planted_panel)
        assert any(name.startswith("alpha_i") for name in result.absorbed)

    def test_entity_effects_only(self, planted_panel):
        """Test zero slopes when the outcome is a pure entity effect."""
        rows = [dataclasses.replace(r, votes=int(r.i[1:]) * 3) for r in planted_panel]
        result = RegressionEngine.panel_fe_regression(rows, "votes", COLUMN_9_TERMS)
        for term in COLUMN_9_TERMS:
            assert result.coefficients[term.value] == pytest.approx(0.0, abs=1e-8)

    def test_row_order_invariance(self, planted_panel):
        """Test that shuffling the panel rows changes nothing."""
        frame = planted_frame(planted_panel)
        shuffled = frame.sample(frac=1.0, random_state=3)
        first = RegressionEngine.panel_fe_regression(frame, "votes", ["opponents", "likes"])
        second = RegressionEngine.panel_fe_regression(shuffled, "votes", ["opponents", "likes"])
        assert first.coefficients == second.coefficients
        assert first.std_errors == second.std_errors

    def test_within_matches_dummies(self, planted_panel):
        """Test that double demeaning reproduces the dummy-variable slopes and errors."""
        frame = planted_frame(planted_panel)
        rng = np.random.default_rng(8)
        frame["votes"] = frame["votes"] + rng.normal(size=len(frame))
        terms = ["opponents", "following", "likes"]
        dummies = RegressionEngine.panel_fe_regression(frame, "votes", terms)
        within = RegressionEngine.within_fe_regression(frame, "votes", terms)
        for term in terms:
            assert within.coefficients[term] == pytest.approx(dummies.coefficients[term], abs=1e-8)
            assert within.std_errors[term] == pytest.approx(dummies.std_errors[term], rel=1e-6)
        np.testing.assert_allclose(within.residuals, dummies.residuals, atol=1e-8)

    def test_collinear_following(self, planted_panel):
        """Test that a constant following flag is reported by name."""
        rows = [dataclasses.replace(r, following=1) for r in planted_panel]
        with pytest.raises(RankDeficient) as info:
            RegressionEngine.panel_fe_regression(rows, "likes", ["following"])
        assert info.value.name == "following"

    def test_single_period(self, planted_panel):
        """Test that one period cannot carry period effects."""
        rows = [r for r in planted_panel if r.t == "t1"]
        with pytest.raises(InsufficientData):
            RegressionEngine.panel_fe_regression(rows, "votes", ["opponents"])

    def test_table_regressions(self, planted_panel):
        """Test that all nine columns are estimated."""
        results = RegressionEngine.table_regressions(planted_panel)
        assert sorted(results) == list(range(1, 10))
        assert results[9].coefficients["likes_x_opp"] == pytest.approx(1.5, abs=1e-8)
        assert "likes" not in results[1].coefficients

    def test_panel_row_validation(self):
        """Test that indicators must be 0 or 1."""
        with pytest.raises(ValueError):
            PanelRow(i="a", j="b", t="t", likes=1, votes=1, opponents=2, following=0)


class TestPrincipalComponent:
    """Test cases for the first principal component."""

    def test_identical_variables(self):
        """Test ys = xs: full variance on the diagonal direction."""
        xs = np.array([1.0, 2.0, 4.0, 8.0])
        loadings, share = RegressionEngine.principal_axis(xs, xs)
        np.testing.assert_allclose(loadings, [1 / np.sqrt(2), 1 / np.sqrt(2)])
        assert share == pytest.approx(1.0)
        standardized = (xs - xs.mean()) / xs.std()
        np.testing.assert_allclose(RegressionEngine.pc1(xs, xs), np.sqrt(2) * standardized)

    def test_equal_weight_loadings(self):
        """Test loadings of magnitude 1/√2 for weakly correlated variables."""
        xs = np.array([1.0, 2.0, 3.0, 4.0, 5.0, 6.0])
        ys = np.array([2.0, 1.0, 4.0, 3.0, 6.0, 1.0])
        loadings, _ = RegressionEngine.principal_axis(xs, ys)
        np.testing.assert_allclose(np.abs(loadings), [1 / np.sqrt(2)] * 2)
        assert loadings[0] > 0

    def test_uncorrelated_variables(self):
        """Test the diagonal axis and half the variance when r = 0."""
        xs = np.array([1.0, -1.0, 1.0, -1.0])
        ys = np.array([1.0, 1.0, -1.0, -1.0])
        loadings, share = RegressionEngine.principal_axis(xs, ys)
        np.testing.assert_allclose(loadings, [1 / np.sqrt(2), 1 / np.sqrt(2)])
        assert share == pytest.approx(0.5)
        np.testing.assert_allclose(RegressionEngine.pc1(xs, ys), (xs + ys) / np.sqrt(2))

    def test_four_point_oracle(self):
        """Test the scores against an explicit 2×2 eigen-decomposition."""
        xs = np.array([0.0, 1.0, 3.0, 4.0])
        ys = np.array([4.0, 2.0, 1.0, 0.5])
        data = np.column_stack([xs, ys])
        z = (data - data.mean(axis=0)) / data.std(axis=0)
        values, vectors = np.linalg.eigh(np.corrcoef(xs, ys))
        axis = vectors[:, np.argmax(values)]
        axis = axis if axis[0] > 0 else -axis
        np.testing.assert_allclose(RegressionEngine.pc1(xs, ys), z @ axis, atol=1e-12)

    def test_zero_variance(self):
        """Test that a constant variable is rejected."""
        with pytest.raises(ZeroVariance):
            RegressionEngine.pc1([1.0, 2.0, 3.0], [0.1, 0.1, 0.1])

    def test_length_mismatch(self):
        """Test that xs and ys must have the same length."""
        with pytest.raises(ValueError):
            RegressionEngine.pc1([1.0, 2.0], [1.0, 2.0, 3.0])
