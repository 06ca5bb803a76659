"""Margin transform, orthant error curves, and assumption classification."""

import numpy as np
import pytest
from scipy import stats

from ensemblelab import classification as cl
from ensemblelab import curves as cv
from ensemblelab import distributions as ds
from ensemblelab import ensembles as es
from ensemblelab.losses import zero_one_error

# margin variance 1 with correlated scores
S2 = np.array([[1.0, 0.5], [0.5, 1.0]])
MODEL_POS = cl.MarginModel(ds.MultivariateGaussian([0.75, 0.25], S2), 0)
MODEL_NEG = cl.MarginModel(ds.MultivariateGaussian([0.25, 0.75], S2), 0)
MODEL3 = cl.MarginModel(ds.MultivariateGaussian([0.55, 0.25, 0.20], 0.04 * np.eye(3)), 0)


class TestMarginTransform:
    def test_binary_example(self):
        np.testing.assert_allclose(cl.margin_transform([0.7, 0.3], 0), [0.4])

    def test_three_class_example(self):
        np.testing.assert_allclose(cl.margin_transform([0.2, 0.5, 0.3], 0), [-0.3, -0.1])

    def test_wrong_class_permutation_equivariance(self):
        a = cl.margin_transform([0.2, 0.5, 0.3], 0)
        b = cl.margin_transform([0.2, 0.3, 0.5], 0)
        assert sorted(a.tolist()) == sorted(b.tolist())

    def test_positive_margins_iff_strict_win(self):
        rng = np.random.default_rng(0)
        scores = rng.normal(size=(500, 4))
        margins = cl.margin_transform(scores, 2)
        err = zero_one_error(scores, 2)
        np.testing.assert_array_equal((margins > 0).all(axis=-1), err == 0.0)

    def test_margin_draws_match_scores_coordinatewise(self):
        scores = MODEL3.score_distribution.sample(200, 3)
        A = MODEL3.margin_matrix
        np.testing.assert_allclose(scores @ A.T, cl.margin_transform(scores, 0), atol=1e-12)

    def test_expected_margins_match_mc(self):
        eps = MODEL3.expected_margins()
        x = MODEL3.score_distribution.sample(10**5, 1)
        emp = cl.margin_transform(x, 0).mean(axis=0)
        se = np.sqrt(np.diag(np.atleast_2d(MODEL3.margin_distribution.cov)) / 10**5)
        np.testing.assert_array_less(np.abs(emp - eps), 4 * se)


class TestBivariateNormalCdf:
    def test_zero_zero_closed_form(self):
        for rho in (-0.9, -0.3, 0.0, 0.4, 0.85):
            ref = 0.25 + np.arcsin(rho) / (2 * np.pi)
            assert cl.bivariate_normal_cdf(0.0, 0.0, rho) == pytest.approx(ref, abs=1e-14)

    def test_independence_factorizes(self):
        assert cl.bivariate_normal_cdf(0.3, -0.7, 0.0) == pytest.approx(
            stats.norm.cdf(0.3) * stats.norm.cdf(-0.7), abs=1e-14)

    def test_matches_scipy_integrator(self):
        rng = np.random.default_rng(3)
        for _ in range(25):
            h, k = rng.normal(size=2) * 1.5
            rho = rng.uniform(-0.95, 0.95)
            ref = stats.multivariate_normal([0, 0], [[1, rho], [rho, 1]]).cdf([h, k])
            assert cl.bivariate_normal_cdf(h, k, rho) == pytest.approx(ref, abs=5e-7)

    def test_zero_edges(self):
        for h, k, rho in [(0.0, 0.7, 0.5), (0.7, 0.0, -0.4), (0.0, -0.3, 0.8)]:
            ref = stats.multivariate_normal([0, 0], [[1, rho], [rho, 1]]).cdf([h, k])
            assert cl.bivariate_normal_cdf(h, k, rho) == pytest.approx(ref, abs=5e-7)

    def test_degenerate_correlations(self):
        assert cl.bivariate_normal_cdf(0.4, 1.0, 1.0) == pytest.approx(stats.norm.cdf(0.4))
        assert cl.bivariate_normal_cdf(0.4, -0.2, -1.0) == pytest.approx(
            max(0.0, stats.norm.cdf(0.4) + stats.norm.cdf(-0.2) - 1), abs=1e-14)


class TestErrorCurves:
    def test_exact_two_class_phi_curve(self):
        cur = cl.error_curve(MODEL_POS, 9, method="exact_gaussian")
        np.testing.assert_allclose(cur.value, stats.norm.cdf(-0.5 * np.sqrt(np.arange(1, 10))),
                                   atol=1e-12)
        assert cur.value[0] == pytest.approx(0.308538, abs=1e-6)
        assert cur.value[3] == pytest.approx(0.158655, abs=1e-6)
        assert np.all(np.diff(cur.value) < 0)

    def test_exact_wrong_model_increases_to_one(self):
        cur = cl.error_curve(MODEL_NEG, 9, method="exact_gaussian")
        np.testing.assert_allclose(cur.value, stats.norm.cdf(0.5 * np.sqrt(np.arange(1, 10))),
                                   atol=1e-12)
        assert np.all(np.diff(cur.value) > 0)

    def test_zero_margin_flat_half(self):
        model = cl.MarginModel(ds.MultivariateGaussian([0.5, 0.5], S2), 0)
        cur = cl.error_curve(model, 6, method="exact_gaussian")
        np.testing.assert_allclose(cur.value, 0.5, atol=1e-14)

    def test_three_class_exact_matches_mc(self):
        exact = cl.error_curve(MODEL3, 10, method="exact_gaussian")
        mc = cl.error_curve(MODEL3, 10, method="mc", R=10**5, seed=11)
        z = np.abs(mc.value - exact.value) / np.maximum(mc.std_err, 1e-12)
        assert np.all(z < 4.0)

    def test_mc_matches_margin_side_estimator(self):
        """Eq-chain identity: score-side 0/1 error equals the margin-side
        estimate 1 - 1(all prefix-mean margins > 0), on common draws."""
        R, kmax = 4 * 10**4, 8
        curve = cl.error_curve(MODEL3, kmax, method="mc", R=R, seed=17, chunk=R)
        draws = MODEL3.score_distribution.sample(R * kmax, 17, 0).reshape(R, kmax, 3)
        margins = cl.margin_transform(es.prefix_means_batch(draws), 0)
        direct = 1.0 - (margins > 0).all(axis=-1).mean(axis=0)
        np.testing.assert_allclose(curve.value, direct, atol=1e-12)

    def test_exact_on_non_gaussian_rejected(self):
        base = ds.ProductDistribution([ds.Bernoulli(0.7), ds.Bernoulli(0.3)])
        with pytest.raises(ValueError):
            cl.error_curve(cl.MarginModel(base, 0), 5, method="exact_gaussian")

    def test_four_class_exact_unsupported(self):
        model = cl.MarginModel(ds.MultivariateGaussian([0.4, 0.2, 0.2, 0.2], 0.01 * np.eye(4)), 0)
        with pytest.raises(ValueError):
            cl.error_curve(model, 5, method="exact_gaussian")


class TestAssumptionClassify:
    def test_correct_model(self):
        rep = cl.assumption_classify(MODEL_POS)
        assert rep.verdict == "correct"
        assert rep.univariate.verdict == "eventually_decreasing"

    def test_completely_incorrect_three_class(self):
        rep = cl.assumption_classify(
            cl.MarginModel(ds.MultivariateGaussian([0.2, 0.5, 0.3], 0.01 * np.eye(3)), 0))
        assert rep.verdict == "completely_incorrect"

    def test_mixed_three_class(self):
        rep = cl.assumption_classify(
            cl.MarginModel(ds.MultivariateGaussian([0.4, 0.5, 0.1], 0.01 * np.eye(3)), 0))
        assert rep.verdict == "mixed"
        assert rep.notes

    def test_multiclass_cone_reported(self):
        rep = cl.assumption_classify(MODEL3)
        assert rep.verdict == "correct" and rep.cone is not None

    def test_consistency_with_asymptotic_loss(self):
        # correct prediction: the infinite ensemble has zero error; incorrect: one
        assert zero_one_error(MODEL_POS.score_distribution.mean, 0) == 0.0
        assert zero_one_error(MODEL_NEG.score_distribution.mean, 0) == 1.0

    def test_mc_curve_direction_matches_verdicts(self):
        mc = cl.error_curve(MODEL3, 12, method="mc", R=10**5, seed=23)
        rep = cv.monotonicity_report(mc)
        assert rep.verdict in ("decreasing", "eventually_decreasing")
        assert rep.K0 is not None
