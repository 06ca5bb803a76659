"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Every tolerance is pinned here; run with `pytest tests/test_acceptance.py -v -s`.
"""

import time
from contextlib import contextmanager

import numpy as np
import pytest
from scipy import stats

from ensemblelab import classification as cl
from ensemblelab import curves as cv
from ensemblelab import delta as dl
from ensemblelab import distributions as ds
from ensemblelab import ensembles as es
from ensemblelab import ldp
from ensemblelab import losses as ls
from ensemblelab.cli import generate_items, synthetic_split


@contextmanager
def criterion(num, description, limit_s):
    t0 = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"FAIL  criterion {num:2d}: {description}")
        raise
    dt = time.perf_counter() - t0
    print(f"PASS  criterion {num:2d}: {description}  [{dt:.2f}s < {limit_s}s]")
    assert dt < limit_s, f"criterion {num} exceeded its runtime budget ({dt:.2f}s)"


def test_criterion_01_exact_convex_monotonicity():
    with criterion(1, "exact 1/K curve and tight strong-convexity bound", 1.0):
        cur = cv.exact_curve(ls.make_loss("squared", y=0.0), es.iid(ds.Gaussian(0, 1), 100), 100)
        ref = 1.0 / np.arange(1, 101)
        assert np.all(np.abs(cur.value - ref) <= 1e-12 * ref)
        rows = cv.strong_bound_check(cur, mu_modulus=1.0, tr_sigma=1.0, rho=0.0)
        assert all(abs(r.slack) <= 1e-12 for r in rows)
        assert all(r.satisfied for r in rows)


def test_criterion_02_theorem1_by_enumeration():
    with criterion(2, "50 random lists x convex catalog: non-increasing, zero tolerance", 10.0):
        rng = np.random.default_rng(12021)
        losses_scalar = [ls.make_loss(n) for n in ("squared", "absolute", "huber")]
        losses_simplex = [ls.make_loss(n, true_class=0, n_classes=2)
                          for n in ("cross_entropy", "brier")]
        ce_logits = ls.make_loss("cross_entropy_logits", true_class=0, n_classes=2)
        for trial in range(50):
            xs = rng.normal(size=6)
            ps = rng.uniform(0.05, 0.95, size=6)
            simplex = [np.array([p, 1.0 - p]) for p in ps]
            logits = list(rng.normal(size=(6, 2)))
            for loss in losses_scalar:
                vals = cv.exact_curve(loss, es.randomly_reordered(xs), 6).value
                assert np.all(np.diff(vals) <= 0.0), (loss.name, trial)
            for loss in losses_simplex:
                vals = cv.exact_curve(loss, es.randomly_reordered(simplex), 6).value
                assert np.all(np.diff(vals) <= 0.0), (loss.name, trial)
            vals = cv.exact_curve(ce_logits, es.randomly_reordered(logits), 6).value
            assert np.all(np.diff(vals) <= 0.0), ("cross_entropy_logits", trial)


def test_criterion_03_duplicate_counterexample():
    with criterion(3, "duplicate third member: 0.5 then 5/9 exactly", 1.0):
        cur = cv.exact_curve(ls.make_loss("squared", y=0.0),
                             es.duplicate_third(ds.Gaussian(0, 1)), 3)
        assert abs(cur.value[1] - 0.5) <= 1e-12
        assert abs(cur.value[2] - 5.0 / 9.0) <= 1e-12
        assert cur.value[1] < cur.value[2]


def test_criterion_04_mc_convex_monotonicity():
    with criterion(4, "cross-entropy paired MC, R=1e6, 20 seeds: <1% flagged steps", 120.0):
        ce = ls.make_loss("cross_entropy", true_class=0, n_classes=2)
        base = ds.two_class_simplex(ds.FiniteLattice(0.2, 0.15, [0.25] * 4))
        spec = es.iid(base, 20)
        flagged = total = 0
        for seed in range(20):
            cur = cv.estimate_curve_mc(ce, spec, 20, 10**6, seed=seed)
            d = np.diff(cur.value)
            flagged += int(np.sum(d > 3.0 * cur.diff_std_err))
            total += d.size
        assert flagged / total < 0.01, f"{flagged}/{total} steps flagged increasing"


def test_criterion_05_delta_method():
    with criterion(5, "sigmoid delta expansion: remainder order and direction verdicts", 30.0):
        sig = ls.make_loss("sigmoid", label=0, s=0.1)
        exp = dl.delta_expansion(sig, ds.Gaussian(0.3, 0.01))
        Ks = np.arange(10, 201)
        quad = cv.exact_curve(sig, es.iid(ds.Gaussian(0.3, 0.01), 200), 200,
                              quad_tol=1e-12).value
        scaled = np.abs(dl.delta_predict(exp, Ks) - quad[9:200]) * Ks**2.5
        assert scaled.max() / scaled.min() < 5.0

        for mu, want_dir, want_sign in ((0.3, "eventually_better", -1),
                                        (0.7, "eventually_worse", +1)):
            assert dl.hessian_direction(sig, mu) == want_dir
            cur = cv.exact_curve(sig, es.iid(ds.Gaussian(mu, 0.01), 60), 60)
            rep = cv.monotonicity_report(cur)
            assert rep.K0 is not None
            tail = np.diff(cur.value)[rep.K0 - 1:]
            assert np.all(np.sign(tail) == want_sign)


def test_criterion_06_condorcet_non_monotonicity():
    with criterion(6, "binomial staircase: exact start values, non-monotone, odd slice down", 1.0):
        seq = ldp.bernoulli_sequence(0.35, 0.15, 201)
        assert np.allclose(seq.values[1:4], [0.5775, 0.28175, 0.43701875], rtol=0, atol=1e-12)
        votes = ds.AffineTransform(ds.Bernoulli(0.35), np.array([[-1.0], [1.0]]),
                                   np.array([1.0, 0.0]))
        cur = cv.exact_curve(ls.make_loss("zero_one", true_class=0, n_classes=2),
                             es.iid(votes, 40), 40)
        np.testing.assert_allclose(cur.value[1:4], [0.5775, 0.28175, 0.43701875], atol=1e-12)
        assert cv.monotonicity_report(cur).verdict == "non_monotone"
        odd = seq.values[0::2]  # n = 1, 3, 5, ..., 201
        assert np.all(np.diff(odd) < 0)


def test_criterion_07_mass_restoration():
    with criterion(7, "atom at the threshold: strict decrease beyond K0, lattice prefactor 10%", 30.0):
        summ = ldp.mass_restoration_summary(0.55, 0.1, nmax=2000)
        seq = summ["sequence"]
        assert summ["verdict"].verdict == "eventually_decreasing"
        k0 = seq.first_strict_decrease_onset()
        assert k0 < 2000
        assert np.all(np.diff(seq.values[k0 - 1:]) < 0.0)
        sol = ldp.solve_tilt(summ["lattice"], summ["threshold"])
        for n in range(400, 2001, 100):
            ratio = ldp.petrov_asymptote(sol, n, "lattice_geq") / seq.values[n - 1]
            assert 0.9 <= ratio <= 1.1, (n, ratio)


def test_criterion_08_stable_counterexamples():
    with criterion(8, "levy grows, cauchy constant 1/4, gaussian shrinks", 1.0):
        lv = ldp.stable_counterexample("levy", 1.0, 50)
        assert abs(lv.values[0] - (2 * stats.norm.cdf(1.0) - 1.0)) <= 1e-9
        assert abs(lv.values[3] - (2 * stats.norm.cdf(2.0) - 1.0)) <= 1e-9
        assert np.all(np.diff(lv.values) > 0)
        cc = ldp.stable_counterexample("cauchy", 1.0, 50)
        assert np.all(np.abs(cc.values - 0.25) <= 1e-12)
        gg = ldp.stable_counterexample("gaussian", 1.0, 50)
        assert np.all(np.diff(gg.values) < 0)


def test_criterion_09_petrov_ratio_law():
    with criterion(9, "20 random feasible tilts: p(n+1)/p(n) = rho sqrt(n/(n+1)) to 1e-12", 5.0):
        rng = np.random.default_rng(424242)
        checked = 0
        while checked < 20:
            if checked % 2 == 0:
                dist = ds.Gaussian(rng.uniform(-1, 1), rng.uniform(0.3, 2.0))
                c = dist.mean + rng.uniform(0.2, 1.5)
                variant = "nonlattice"
            else:
                lat = ds.FiniteLattice(0.0, 0.25, rng.dirichlet(np.ones(6)))
                above = np.nonzero(lat.support > lat.mean)[0]
                if above.size < 2:
                    continue
                c, variant = float(lat.support[above[0]]), "lattice_geq"
                if not lat.mean < c < lat.support_sup:
                    continue
                dist = lat
            sol = ldp.solve_tilt(dist, c)
            assert sol.rho < 1.0
            n = int(rng.integers(4, 80))
            lhs = ldp.petrov_asymptote(sol, n + 1, variant) / ldp.petrov_asymptote(sol, n, variant)
            rhs = sol.rho * np.sqrt(n / (n + 1.0))
            assert abs(lhs - rhs) <= 1e-12 * rhs
            checked += 1


def test_criterion_10_multivariate_gaussian_ld():
    with criterion(10, "bivariate rate/prefactor vs product oracle; tau-positivity error", 10.0):
        ld, asym50 = ldp.gaussian_multivariate_ld([0, 0], np.eye(2), [1, 1], 50)
        np.testing.assert_allclose(ld.tau, [1.0, 1.0], atol=1e-14)
        assert ld.rate == pytest.approx(1.0, abs=1e-14)
        assert abs(asym50 / stats.norm.sf(np.sqrt(50)) ** 2 - 1) <= 0.10
        _, asym200 = ldp.gaussian_multivariate_ld([0, 0], np.eye(2), [1, 1], 200)
        assert abs(asym200 / stats.norm.sf(np.sqrt(200)) ** 2 - 1) <= 0.04
        with pytest.raises(ldp.TauSignError):
            ldp.gaussian_multivariate_ld([0, 0], [[1, 0.9], [0.9, 1]], [1, 0.05], 50)


def test_criterion_11_classification_error_directions():
    with criterion(11, "margin +/-0.5 exact Phi curves; 3-class MC vs bivariate oracle", 60.0):
        pos = cl.MarginModel(ds.MultivariateGaussian([0.75, 0.25], [[1, 0.5], [0.5, 1]]), 0)
        neg = cl.MarginModel(ds.MultivariateGaussian([0.25, 0.75], [[1, 0.5], [0.5, 1]]), 0)
        Ks = np.arange(1, 31)
        cur_pos = cl.error_curve(pos, 30, method="exact_gaussian")
        cur_neg = cl.error_curve(neg, 30, method="exact_gaussian")
        np.testing.assert_allclose(cur_pos.value, stats.norm.cdf(-0.5 * np.sqrt(Ks)), atol=1e-12)
        np.testing.assert_allclose(cur_neg.value, stats.norm.cdf(+0.5 * np.sqrt(Ks)), atol=1e-12)
        assert np.all(np.diff(cur_pos.value) < 0)  # Theorem-7 direction at every K
        assert np.all(np.diff(cur_neg.value) > 0)

        model3 = cl.MarginModel(ds.MultivariateGaussian([0.55, 0.25, 0.20], 0.04 * np.eye(3)), 0)
        assert cl.assumption_classify(model3).verdict == "correct"
        R = 2 * 10**5
        mc = cl.error_curve(model3, 25, method="mc", R=R, seed=20260810)
        rep = cv.monotonicity_report(mc)
        assert rep.verdict in ("decreasing", "eventually_decreasing")
        assert rep.K0 is not None
        oracle = cl.error_curve(model3, 25, method="exact_gaussian")
        # known-truth z-test: binomial standard error at the oracle value
        # (the empirical se collapses to 0 once no replicate errs at large K)
        se = np.sqrt(oracle.value * (1.0 - oracle.value) / R)
        z = np.abs(mc.value - oracle.value) / se
        assert np.all(z <= 3.0)


def test_criterion_12_synthetic_split_surrogate():
    with criterion(12, "100 synthetic items: correct panel down, incorrect up, xent down", 120.0):
        items = generate_items(100, 80, seed=2026)
        result = synthetic_split(items, kmax=40, method="mc", reps=2000, seed=2026)
        assert {k: len(v) for k, v in result["buckets"].items()} == {
            "correct": 80, "incorrect": 20, "mixed": 0}
        panels = result["panels"]

        err_c = panels["error_correct"]
        rep = cv.monotonicity_report(err_c)
        assert rep.verdict in ("decreasing", "eventually_decreasing")
        assert np.all(np.diff(err_c.value) <= 3.0 * err_c.diff_std_err)

        err_i = panels["error_incorrect"]
        rep = cv.monotonicity_report(err_i)
        assert rep.verdict in ("increasing", "eventually_increasing")
        assert np.all(np.diff(err_i.value) >= -3.0 * err_i.diff_std_err)

        for name in ("xent_overall", "xent_correct", "xent_incorrect"):
            panel = panels[name]
            assert np.all(np.diff(panel.value) <= 3.0 * panel.diff_std_err), name
            rep = cv.monotonicity_report(panel)
            assert rep.verdict in ("decreasing", "eventually_decreasing"), name
