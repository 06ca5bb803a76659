"""Margin-vector view of the multiclass 0/1 error and its eventual direction.

A score vector errs exactly when some margin (true-class score minus a wrong
class score) fails to be strictly positive, so the expected error of a mean
of K score vectors is an orthant tail probability of the mean margin vector.
For Gaussian score models this is a normal CDF (2 classes) or a bivariate
orthant probability (3 classes) in closed form; otherwise Monte Carlo.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import stats
from scipy.special import owens_t

from .curves import LossCurve, estimate_curve_mc
from .distributions import Gaussian, MultivariateGaussian
from .ensembles import EnsembleSpec
from .ldp import ConeCheck, cone_condition, eventual_decrease_verdict
from .losses import ZeroOneLoss

__all__ = [
    "MarginModel",
    "margin_transform",
    "bivariate_normal_cdf",
    "error_curve",
    "AssumptionReport",
    "assumption_classify",
]


def margin_transform(scores, true_class):
    """Margins of a score vector: true-class score minus each wrong score.

    Output dimension is n_classes - 1; all entries positive exactly when the
    true class wins strictly.  Vectorized over leading axes."""
    s = np.asarray(scores, dtype=float)
    n_cl = s.shape[-1]
    if n_cl < 2:
        raise ValueError("need at least 2 classes")
    if not 0 <= true_class < n_cl:
        raise ValueError("invalid class index")
    others = np.delete(s, true_class, axis=-1)
    return s[..., true_class, None] - others


def _margin_matrix(n_classes, true_class):
    rows = []
    for c in range(n_classes):
        if c == true_class:
            continue
        r = np.zeros(n_classes)
        r[true_class] = 1.0
        r[c] = -1.0
        rows.append(r)
    return np.array(rows)


@dataclass
class MarginModel:
    """Score distribution over R^{n_classes} plus the index of the true class."""

    score_distribution: object
    true_class: int = 0

    def __post_init__(self):
        self.n_classes = self.score_distribution.dim
        if self.n_classes < 2:
            raise ValueError("score distribution must have dimension >= 2")
        if not 0 <= self.true_class < self.n_classes:
            raise ValueError("invalid class index")

    @property
    def margin_matrix(self):
        return _margin_matrix(self.n_classes, self.true_class)

    @property
    def margin_distribution(self):
        """Law of the margin vector; Gaussian scores stay Gaussian."""
        sd = self.score_distribution
        A = self.margin_matrix
        if isinstance(sd, MultivariateGaussian):
            return sd.affine(A)
        from .distributions import AffineTransform

        return AffineTransform(sd, A)

    def expected_margins(self, mc_samples=10**5, seed=0):
        m = self.margin_distribution.mean
        if m is not None:
            return np.atleast_1d(np.asarray(m, dtype=float))
        x = self.score_distribution.sample(mc_samples, seed)
        return margin_transform(x, self.true_class).mean(axis=0)


# ---------------------------------------------------------------------------
# bivariate normal CDF (deterministic, via Owen's T)
# ---------------------------------------------------------------------------


def bivariate_normal_cdf(h, k, rho):
    """P(Z1 <= h, Z2 <= k) for standard normals with correlation rho.

    Owen's T-function formula; absolute accuracy ~1e-14."""
    if not -1.0 <= rho <= 1.0:
        raise ValueError("rho must be in [-1, 1]")
    if rho == 1.0:
        return float(stats.norm.cdf(min(h, k)))
    if rho == -1.0:
        return float(max(0.0, stats.norm.cdf(h) + stats.norm.cdf(k) - 1.0))
    if abs(rho) < 1e-15:
        return float(stats.norm.cdf(h) * stats.norm.cdf(k))
    s = math.sqrt(1.0 - rho * rho)
    if h == 0.0 and k == 0.0:
        return 0.25 + math.asin(rho) / (2.0 * math.pi)
    if h == 0.0:
        h, k = k, h
    if k == 0.0:
        # limit of Owen's formula: Phi2(h, 0) = Phi(h)/2 + T(h, rho/sqrt(1-rho^2))
        return float(0.5 * stats.norm.cdf(h) + owens_t(h, rho / s))
    ah = (k - rho * h) / (h * s)
    ak = (h - rho * k) / (k * s)
    val = 0.5 * (stats.norm.cdf(h) + stats.norm.cdf(k)) - float(owens_t(h, ah)) - float(owens_t(k, ak))
    if h * k < 0.0:
        val -= 0.5
    return float(val)


def _gaussian_error_value(eps, cov, K):
    """Exact error 1 - P(all margins of the K-mean > 0) for Gaussian margins."""
    d = eps.size
    sd = np.sqrt(np.diag(cov) / K)
    z = eps / sd
    if d == 1:
        return float(stats.norm.cdf(-z[0]))
    if d == 2:
        r = cov[0, 1] / math.sqrt(cov[0, 0] * cov[1, 1])
        # P(m1 > 0, m2 > 0) = Phi2(z1, z2, r) by central symmetry
        return 1.0 - bivariate_normal_cdf(z[0], z[1], r)
    raise ValueError("exact Gaussian error curves cover 2 or 3 classes only")


def error_curve(model, Kmax, method="mc", R=10**5, seed=0, chunk=65536):
    """Curve K -> P(0/1 error of the mean of K score vectors).

    method "exact_gaussian" needs a Gaussian score model with 2 or 3 classes;
    "mc" works for any score distribution and pairs draws across K."""
    if method == "mc":
        loss = ZeroOneLoss(model.true_class, model.n_classes)
        spec = EnsembleSpec(model.score_distribution, "iid", Kmax)
        curve = estimate_curve_mc(loss, spec, Kmax, R, seed, chunk)
        curve.meta["true_class"] = model.true_class
        return curve
    if method != "exact_gaussian":
        raise ValueError("method must be 'mc' or 'exact_gaussian'")
    if not isinstance(model.score_distribution, MultivariateGaussian):
        raise ValueError("exact_gaussian requires a Gaussian score model")
    mdist = model.margin_distribution
    eps = np.atleast_1d(mdist.mean)
    cov = np.atleast_2d(mdist.cov)
    Ks = np.arange(1, Kmax + 1)
    vals = np.array([_gaussian_error_value(eps, cov, int(K)) for K in Ks])
    meta = {"true_class": model.true_class, "method": "exact_gaussian"}
    return LossCurve(Ks, vals, np.zeros(Kmax), ["exact_closed_form"] * Kmax, meta)


# ---------------------------------------------------------------------------
# assumption classification (correct / completely incorrect / mixed)
# ---------------------------------------------------------------------------


@dataclass
class AssumptionReport:
    """Sign verdict on the expected margins plus regularity diagnostics.

    For Gaussian 2-class models the univariate tail conditions are checked on
    the relevant signed margin; for Gaussian multiclass models the spectral
    cone conditions are reported.  Other models carry a note instead."""

    verdict: str  # "correct" | "completely_incorrect" | "mixed"
    expected_margins: np.ndarray
    univariate: object = None
    cone: ConeCheck = None
    notes: list = field(default_factory=list)


def assumption_classify(model, mc_samples=10**5, seed=0):
    eps = model.expected_margins(mc_samples, seed)
    if np.all(eps > 0):
        verdict = "correct"
    elif np.all(eps < 0):
        verdict = "completely_incorrect"
    else:
        verdict = "mixed"
    report = AssumptionReport(verdict, eps)

    if verdict == "mixed":
        report.notes.append("mixed margin signs: no eventual-direction theorem applies")
        return report

    gauss = isinstance(model.score_distribution, MultivariateGaussian)
    if not gauss:
        report.notes.append("non-Gaussian score model: regularity checked by MC only")
        return report

    mdist = model.margin_distribution
    cov = np.atleast_2d(mdist.cov)
    if model.n_classes == 2:
        sig2 = float(cov[0, 0])
        e = abs(float(eps[0]))
        # conditions apply to -X (correct) or X (incorrect); both are Gaussian
        mean = -e
        report.univariate = eventual_decrease_verdict(Gaussian(mean, sig2), e)
    else:
        eig = np.linalg.eigvalsh(cov)
        if eig.min() <= 0:
            report.notes.append("margin covariance not positive definite")
        else:
            report.cone = cone_condition(np.abs(eps), float(eig.min()), float(eig.max()))
    return report
