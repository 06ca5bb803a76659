"""Expected-loss curves K -> E[L(mean of K predictions)].

Curves come from two routes that cross-check each other: a paired Monte
Carlo estimator (common draws across all K, so step differences carry far
less noise than the values), and exact computations in four regimes:

  (a) quadratic losses with known mean/covariance (closed form),
  (b) smooth univariate losses with a Gaussian base (Gauss-Hermite),
  (c) lattice bases (exact convolution of the sum law),
  (d) fixed lists in random order (subset enumeration).

Regime (d) evaluates piecewise-rational losses in exact rational arithmetic,
so the non-increase guaranteed for convex losses survives with zero
tolerance instead of drowning in float noise on flat stretches.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from .distributions import (
    AffineTransform,
    Bernoulli,
    FiniteLattice,
    Gaussian,
    iter_sum_distributions,
)
from .ensembles import EnsembleSpec, prefix_means_batch, sample_ensembles
from .losses import BrierLoss, DomainError, SquaredLoss

__all__ = [
    "LossCurve",
    "MonotonicityReport",
    "NoExactRegimeError",
    "QuadratureError",
    "estimate_curve_mc",
    "exact_curve",
    "exchangeable_squared_curve",
    "gauss_hermite_expectation",
    "strong_bound_check",
    "classify_sequence",
    "monotonicity_report",
    "leave_one_out_bound",
    "warmup_chain",
]


class NoExactRegimeError(ValueError):
    """No exact computation applies; callers fall back to Monte Carlo."""


class QuadratureError(RuntimeError):
    """Gauss-Hermite node doubling failed to converge."""


@dataclass
class LossCurve:
    """Per-K expected-loss records with uncertainty and provenance.

    ``std_err`` is zero for exact entries.  For Monte Carlo curves,
    ``diff_std_err[i]`` is the paired standard error of
    value(K[i+1]) - value(K[i]) computed from common draws."""

    K: np.ndarray
    value: np.ndarray
    std_err: np.ndarray
    method: list
    meta: dict = field(default_factory=dict)
    diff_std_err: np.ndarray = None

    def __post_init__(self):
        self.K = np.asarray(self.K, dtype=int)
        self.value = np.asarray(self.value, dtype=float)
        self.std_err = np.asarray(self.std_err, dtype=float)
        if np.any(np.diff(self.K) <= 0):
            raise ValueError("K must be strictly increasing")
        if np.any(self.std_err < 0):
            raise ValueError("std_err must be nonnegative")

    def __len__(self):
        return self.K.size

    def to_csv_string(self):
        lines = ["K,value,std_err,method"]
        for k, v, s, m in zip(self.K, self.value, self.std_err, self.method):
            lines.append(f"{k},{v:.17g},{s:.17g},{m}")
        return "\n".join(lines) + "\n"

    def save_csv(self, path):
        with open(path, "w") as fh:
            fh.write(self.to_csv_string())


@dataclass
class MonotonicityReport:
    """Direction classification of a curve, with per-step evidence.

    evidence rows are (K_right, difference, diff_std_err, sign) where the
    difference is value(K_right) - value(previous K)."""

    verdict: str
    K0: int = None
    evidence: list = field(default_factory=list)


# ---------------------------------------------------------------------------
# Monte Carlo estimator (paired across K by construction)
# ---------------------------------------------------------------------------


def estimate_curve_mc(loss, spec, Kmax, R, seed, chunk=65536):
    """Paired Monte Carlo curve: every replicate contributes L at all K.

    Replicates are processed in fixed-size chunks on separate RNG streams
    and merged by chunk index, so results do not depend on scheduling."""
    if R < 100:
        raise ValueError("R must be >= 100")
    spec_k = EnsembleSpec(spec.base, spec.structure, Kmax, spec.fixed) \
        if spec.K != Kmax else spec
    sums = np.zeros(Kmax)
    sqs = np.zeros(Kmax)
    dsums = np.zeros(Kmax - 1)
    dsqs = np.zeros(Kmax - 1)
    done = 0
    stream = 0
    while done < R:
        r = min(chunk, R - done)
        draws = sample_ensembles(spec_k, r, seed, stream)
        means = prefix_means_batch(draws)
        try:
            vals = np.asarray(loss(means), dtype=float)
        except DomainError as e:
            raise DomainError(f"{e} (replicates {done}..{done + r - 1})") from e
        if vals.shape != (r, Kmax):
            raise ValueError("loss did not vectorize to one value per prefix mean")
        sums += vals.sum(axis=0)
        sqs += (vals * vals).sum(axis=0)
        d = np.diff(vals, axis=1)
        dsums += d.sum(axis=0)
        dsqs += (d * d).sum(axis=0)
        done += r
        stream += 1
    value = sums / R
    var = np.maximum(sqs / R - value**2, 0.0) * (R / (R - 1))
    dmean = dsums / R
    dvar = np.maximum(dsqs / R - dmean**2, 0.0) * (R / (R - 1))
    meta = {"loss": loss.descriptor(), "structure": spec.structure, "R": R,
            "seed": seed, "chunk": chunk}
    return LossCurve(np.arange(1, Kmax + 1), value, np.sqrt(var / R),
                     ["mc"] * Kmax, meta, np.sqrt(dvar / R))


# ---------------------------------------------------------------------------
# exact regimes
# ---------------------------------------------------------------------------


def exchangeable_squared_curve(bias2, tr_sigma, rho, Ks):
    """Quadratic-loss curve under exchangeability:
    value(K) = ||mean - target||^2 + tr(Sigma) (1 + (K-1) rho) / K."""
    Ks = np.asarray(Ks, dtype=float)
    return bias2 + tr_sigma * (1.0 + (Ks - 1.0) * rho) / Ks


_HERMGAUSS_CACHE = {}


def _hermgauss(n):
    # scipy's Golub-Welsch nodes stay accurate at counts where numpy's
    # hermgauss recurrence overflows to NaN (n >= 512)
    if n not in _HERMGAUSS_CACHE:
        from scipy.special import roots_hermite

        _HERMGAUSS_CACHE[n] = roots_hermite(n)
    return _HERMGAUSS_CACHE[n]


def gauss_hermite_expectation(f, mu, sigma2, tol=1e-10, start_nodes=64, max_nodes=4096):
    """E[f(X)] for X ~ N(mu, sigma2), doubling nodes until stable within tol.

    Node counts stay modest: hermgauss costs O(n^2) memory, and smooth
    integrands converge spectrally long before the 4096-node cap."""
    sd = math.sqrt(sigma2)
    prev = None
    n = start_nodes
    while n <= max_nodes:
        x, w = _hermgauss(n)
        val = float((w * np.asarray(f(mu + sd * math.sqrt(2.0) * x))).sum() / math.sqrt(math.pi))
        if prev is not None and abs(val - prev) < tol:
            return val
        prev = val
        n *= 2
    raise QuadratureError(f"no convergence to {tol} within {max_nodes} nodes")


def _gaussian_kinked_expectation(loss, m, s2):
    """Closed-form E[L(X)], X ~ N(m, s2), for the piecewise catalog losses.

    Gauss-Hermite converges too slowly on kinks for the 1e-10 contract, but
    absolute and Huber losses integrate exactly against phi/Phi."""
    from scipy.stats import norm
    from .losses import AbsoluteLoss, HuberLoss

    s = math.sqrt(s2)
    if isinstance(loss, AbsoluteLoss):
        mm = m - loss.y
        return float(s * math.sqrt(2.0 / math.pi) * math.exp(-mm * mm / (2 * s2))
                     + mm * (1.0 - 2.0 * norm.cdf(-mm / s)))
    if isinstance(loss, HuberLoss):
        mm = m - loss.y
        d = loss.delta
        a, b = (-d - mm) / s, (d - mm) / s
        pa, pb = norm.pdf(a), norm.pdf(b)
        ca, cb = norm.cdf(a), norm.cdf(b)
        quad_part = 0.5 * ((mm * mm + s2) * (cb - ca) + s2 * (a * pa - b * pb)
                           + 2.0 * mm * s * (pa - pb))
        right = mm * (1.0 - cb) + s * pb
        left = -mm * ca + s * pa
        lin_part = d * (right + left - 0.5 * d * (1.0 - cb + ca))
        return float(quad_part + lin_part)
    return None


def _quadratic_loss_data(loss, base):
    """(bias^2, tr Sigma) for squared/Brier losses, or None."""
    if isinstance(loss, SquaredLoss):
        mu, var = base.mean, base.variance
        if mu is None or var is None:
            return None
        return (float(mu) - loss.y) ** 2, float(var)
    if isinstance(loss, BrierLoss):
        mu = np.atleast_1d(base.mean)
        cov = np.atleast_2d(base.variance)
        target = np.zeros(loss.arity)
        target[loss.true_class] = 1.0
        if mu.size != loss.arity:
            return None
        return float(((mu - target) ** 2).sum()), float(np.trace(cov))
    return None


def _duplicate_weights(K):
    # mean of (y1, y2, y1) prefixes: K=1 -> y1, K=2 -> (y1+y2)/2, K=3 -> (2 y1 + y2)/3
    return {1: (1.0, 0.0), 2: (0.5, 0.5), 3: (2.0 / 3.0, 1.0 / 3.0)}[K]


def _lattice_core(base):
    """(lattice, transform) when the base is a lattice up to an affine map."""
    if isinstance(base, (FiniteLattice, Bernoulli)):
        return base, None
    if isinstance(base, AffineTransform) and isinstance(base.base, (FiniteLattice, Bernoulli)):
        return base.base, base
    return None, None


def exact_curve(loss, spec, Kmax, quad_tol=1e-10):
    """Exact curve in one of the regimes above; std_err is identically 0.

    Raises NoExactRegimeError when nothing applies."""
    Ks = np.arange(1, Kmax + 1)
    meta = {"loss": loss.descriptor(), "structure": spec.structure}

    if spec.structure == "randomly_reordered":
        if math.factorial(spec.K) > 720:
            raise NoExactRegimeError("fixed list too long for full enumeration")
        kmax = min(Kmax, spec.K)
        vals = _enumerated_curve(loss, spec.fixed, kmax)
        return LossCurve(np.arange(1, kmax + 1), vals, np.zeros(kmax),
                         ["exact_enumeration"] * kmax, meta)

    if spec.structure == "duplicate_third":
        kmax = min(Kmax, 3)
        Ks = np.arange(1, kmax + 1)
        qd = _quadratic_loss_data(loss, spec.base)
        if qd is not None:
            b2, tr = qd
            vals = np.array([b2 + tr * sum(w * w for w in _duplicate_weights(int(K))) for K in Ks])
            return LossCurve(Ks, vals, np.zeros(kmax), ["exact_closed_form"] * kmax, meta)
        if isinstance(spec.base, Gaussian) and loss.arity == 1:
            mu, s2 = spec.base.mu, spec.base.sigma2
            factors = [s2 * sum(w * w for w in _duplicate_weights(int(K))) for K in Ks]
            curve = _gaussian_univariate_curve(loss, mu, factors, Ks, meta, quad_tol)
            if curve is not None:
                return curve
        raise NoExactRegimeError("duplicate_third is exact only for quadratic losses or Gaussian bases")

    # i.i.d. structures
    base = spec.base
    qd = _quadratic_loss_data(loss, base)
    if qd is not None:
        b2, tr = qd
        vals = exchangeable_squared_curve(b2, tr, 0.0, Ks)
        return LossCurve(Ks, vals, np.zeros(Kmax), ["exact_closed_form"] * Kmax, meta)

    lat, transform = _lattice_core(base)
    if lat is not None:
        vals = _lattice_curve(loss, lat, transform, Kmax)
        return LossCurve(Ks, vals, np.zeros(Kmax), ["exact_enumeration"] * Kmax, meta)

    if isinstance(base, Gaussian) and loss.arity == 1:
        variances = [base.sigma2 / K for K in Ks]
        curve = _gaussian_univariate_curve(loss, base.mu, variances, Ks, meta, quad_tol)
        if curve is not None:
            return curve

    raise NoExactRegimeError(
        f"no exact regime for loss {loss.name!r} with base {getattr(base, 'family', None)!r}"
    )


def _gaussian_univariate_curve(loss, mu, variances, Ks, meta, quad_tol):
    """Exact values of E[L(N(mu, v))] over a variance schedule, or None."""
    n = len(variances)
    if _gaussian_kinked_expectation(loss, mu, variances[0]) is not None:
        vals = np.array([_gaussian_kinked_expectation(loss, mu, v) for v in variances])
        return LossCurve(Ks, vals, np.zeros(n), ["exact_closed_form"] * n, meta)
    if loss.smoothness_order >= 2:
        vals = np.array([gauss_hermite_expectation(loss, mu, v, quad_tol) for v in variances])
        return LossCurve(Ks, vals, np.zeros(n), ["quadrature"] * n, meta)
    return None


def _lattice_curve(loss, lat, transform, Kmax):
    """E[L(mean of K lattice draws)], exactly, for K = 1..Kmax."""
    if isinstance(lat, Bernoulli):
        lat = lat.as_lattice()
    vals = np.empty(Kmax)
    for K, sum_law in iter_sum_distributions(lat, Kmax):
        xs, ms = sum_law.atoms
        pts = xs / K
        if transform is not None:
            A = transform.A.reshape(-1)
            pts = pts[:, None] * A[None, :] + np.asarray(transform.b)
        vals[K - 1] = float((ms * np.asarray(loss(pts))).sum())
    return vals


def _enumerated_curve(loss, values, Kmax):
    """Average loss of k-subset means of a fixed list, k = 1..Kmax.

    Random reordering makes every k-subset equally likely as the first k
    elements, so averaging over subsets equals averaging over all orderings.
    Piecewise-rational losses run in Fraction arithmetic."""
    n = len(values)
    vec = np.ndim(values[0]) > 0
    if loss.supports_exact:
        if vec:
            frs = [tuple(Fraction(float(c)) for c in v) for v in values]
        else:
            frs = [(Fraction(float(v)),) for v in values]
        out = np.empty(Kmax)
        for k in range(1, Kmax + 1):
            total = Fraction(0)
            for idx in combinations(range(n), k):
                mean = tuple(sum(frs[i][c] for i in idx) / k for c in range(len(frs[0])))
                total += loss.eval_exact(mean)
            out[k - 1] = float(total / math.comb(n, k))
        return out
    arr = np.asarray(values, dtype=float)
    out = np.empty(Kmax)
    for k in range(1, Kmax + 1):
        terms = [float(loss(arr[list(idx)].mean(axis=0))) for idx in combinations(range(n), k)]
        out[k - 1] = math.fsum(terms) / math.comb(n, k)
    return out


# ---------------------------------------------------------------------------
# strong-convexity improvement bound
# ---------------------------------------------------------------------------


@dataclass
class StrongBoundRow:
    K: int
    lhs: float
    rhs: float
    satisfied: bool
    slack: float


def strong_bound_check(curve, mu_modulus, tr_sigma, rho):
    """Check value(K) <= value(K-1) - mu (1-rho) tr(Sigma) / (K (K-1)).

    Requires consecutive K entries; the loss must be mu-strongly convex and
    the ensemble exchangeable with correlation coefficient rho."""
    if mu_modulus < 0 or not 0.0 <= rho <= 1.0:
        raise ValueError("need mu >= 0 and rho in [0, 1]")
    if tr_sigma is None:
        raise ValueError("missing covariance data (tr Sigma)")
    rows = []
    for i in range(1, len(curve)):
        K_prev, K = int(curve.K[i - 1]), int(curve.K[i])
        if K != K_prev + 1:
            raise ValueError("strong bound couples consecutive K; curve has gaps")
        lhs = float(curve.value[i])
        rhs = float(curve.value[i - 1]) - mu_modulus * (1.0 - rho) * tr_sigma / (K * (K - 1))
        slack = rhs - lhs
        tol = 1e-12 * max(1.0, abs(rhs)) + 3.0 * (curve.std_err[i] + curve.std_err[i - 1])
        rows.append(StrongBoundRow(K, lhs, rhs, slack >= -tol, slack))
    return rows


# ---------------------------------------------------------------------------
# monotonicity classification
# ---------------------------------------------------------------------------


def classify_sequence(values, tol=0.0, min_tail_steps=3, min_tail_frac=0.25):
    """Sign-pattern classification of an exact sequence.

    Returns (verdict, onset_index): verdict in {"decreasing", "increasing",
    "flat", "non_monotone", "eventually_decreasing", "eventually_increasing"};
    onset_index is the 0-based position from which the tail is monotone.
    Eventual verdicts require the strictly monotone tail to cover at least
    ``min_tail_steps`` steps and ``min_tail_frac`` of the observed steps,
    otherwise the window is called non_monotone."""
    v = np.asarray(values, dtype=float)
    if v.size < 2:
        raise ValueError("need at least 2 values")
    d = np.diff(v)
    signs = np.where(d > tol, 1, np.where(d < -tol, -1, 0))
    if np.all(signs == 0):
        return "flat", 0
    if np.all(signs <= 0):
        return "decreasing", 0
    if np.all(signs >= 0):
        return "increasing", 0
    last = signs[-1]
    if last != 0:
        j = len(signs) - 1
        while j >= 0 and signs[j] == last:
            j -= 1
        tail_len = len(signs) - 1 - j
        if tail_len >= max(min_tail_steps, math.ceil(min_tail_frac * len(signs))):
            verdict = "eventually_decreasing" if last < 0 else "eventually_increasing"
            return verdict, j + 1
    return "non_monotone", None


def monotonicity_report(curve, z=3.0, min_tail_steps=3, min_tail_frac=0.25):
    """Classify a curve's direction.

    Exact curves are classified by the sign of consecutive differences.
    Monte Carlo curves classify a step only when |difference| exceeds z times
    its paired standard error; with no significant step the verdict is
    undetermined."""
    if len(curve) < 3:
        raise ValueError("need at least 3 curve entries")
    d = np.diff(curve.value)
    is_mc = any(m == "mc" for m in curve.method)
    if not is_mc:
        verdict, onset = classify_sequence(curve.value, 0.0, min_tail_steps, min_tail_frac)
        ses = np.zeros(d.size)
        signs = np.where(d > 0, 1, np.where(d < 0, -1, 0))
    else:
        ses = curve.diff_std_err
        if ses is None:
            ses = curve.std_err[1:] + curve.std_err[:-1]
        signs = np.where(d > z * ses, 1, np.where(d < -z * ses, -1, 0))
        verdict, onset = _mc_verdict(signs, min_tail_steps, min_tail_frac)
    evidence = [
        (int(curve.K[i + 1]), float(d[i]), float(ses[i]), int(signs[i]))
        for i in range(d.size)
    ]
    if verdict == "flat":
        verdict, onset = "undetermined", None
    K0 = int(curve.K[onset]) if onset is not None else None
    return MonotonicityReport(verdict, K0, evidence)


def _mc_verdict(signs, min_tail_steps, min_tail_frac):
    """Verdict from significant step signs; zeros are 'no signal', not ties."""
    if np.all(signs == 0):
        return "undetermined", None
    neg, pos = np.any(signs < 0), np.any(signs > 0)
    if neg and not pos:
        return "decreasing", 0
    if pos and not neg:
        return "increasing", 0
    # both directions significant: look for a clean suffix
    last = signs[np.nonzero(signs)[0][-1]]
    j = len(signs) - 1
    while j >= 0 and signs[j] != -last:
        j -= 1
    tail = signs[j + 1:]
    if np.any(tail == last) and tail.size >= max(min_tail_steps, math.ceil(min_tail_frac * len(signs))):
        verdict = "eventually_decreasing" if last < 0 else "eventually_increasing"
        return verdict, j + 1
    return "non_monotone", None


# ---------------------------------------------------------------------------
# deterministic Jensen-type checks (no distribution involved)
# ---------------------------------------------------------------------------


def leave_one_out_bound(loss, draws):
    """(L(mean of all), average of L(mean excluding j) over j).

    For convex losses the first term never exceeds the second: dropping a
    random member hurts on average."""
    x = np.asarray(draws, dtype=float)
    K = x.shape[0]
    if K < 2:
        raise ValueError("need at least 2 predictions")
    total = x.sum(axis=0)
    lhs = float(loss(total / K))
    rhs = math.fsum(float(loss((total - x[j]) / (K - 1))) for j in range(K)) / K
    return lhs, rhs


def warmup_chain(loss, draws):
    """(L(mean), mean of losses, max of losses): the two Jensen warm-ups."""
    x = np.asarray(draws, dtype=float)
    losses = np.asarray(loss(x), dtype=float)
    return float(loss(x.mean(axis=0))), float(losses.mean()), float(losses.max())
