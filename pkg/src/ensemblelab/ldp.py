"""Strong large-deviations engine for tail probabilities of sample means.

Covers: solving the tilt equation m(h) = c on the strictly increasing tilted
mean, first-order tail asymptotes with the non-lattice and lattice
prefactors, the sufficient conditions for eventual strict decrease of
P(mean >= mu + eps), the classical counterexamples (binomial staircase,
one-sided stable growth, Cauchy constancy), the three-point construction
that restores an atom at the threshold, and the closed-form multivariate
Gaussian asymptote with its tilt-positivity cone conditions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy import stats

from .distributions import (
    LATTICE_SNAP,
    Bernoulli,
    Cauchy,
    FiniteLattice,
    Gaussian,
    Levy,
    NoMgfError,
    tail_probability,
)

__all__ = [
    "TiltError",
    "NonpositiveTiltError",
    "TiltInfeasibleError",
    "TauSignError",
    "PetrovSolution",
    "MultivariateLd",
    "TailSequence",
    "DecreaseVerdict",
    "ConeCheck",
    "solve_tilt",
    "petrov_asymptote",
    "petrov_log_asymptote",
    "eventual_decrease_verdict",
    "bernoulli_sequence",
    "mass_restored_lattice",
    "mass_restoration_summary",
    "stable_counterexample",
    "gaussian_multivariate_ld",
    "cone_condition",
]


class TiltError(ValueError):
    pass


class NonpositiveTiltError(TiltError):
    """Threshold at or below the mean: the tilt would not be positive."""


class TiltInfeasibleError(TiltError):
    """Threshold at or above the reachable tilted-mean supremum A0."""


class TauSignError(ValueError):
    """Multivariate tilt leaves the positive orthant."""

    def __init__(self, coordinate, tau):
        self.coordinate = int(coordinate)
        self.tau = tau
        super().__init__(f"tilt tau = Sigma^-1 eps has nonpositive entry at coordinate {coordinate}")


@dataclass(frozen=True)
class PetrovSolution:
    """Tilt data at threshold c: rate h*c - log R(h) and per-step decay rho."""

    c: float
    h: float
    logR: float
    sigma_h: float
    rate: float
    rho: float
    lattice: tuple = None  # (span H, offset a) when the base is a lattice


@dataclass(frozen=True)
class MultivariateLd:
    tau: np.ndarray
    a: np.ndarray
    rate: float
    hessian_phi: np.ndarray
    lambda_min: float
    lambda_max: float


@dataclass
class TailSequence:
    """Exact tail probabilities p_n for n = 1..nmax, with step diagnostics."""

    n: np.ndarray
    values: np.ndarray
    meta: dict = field(default_factory=dict)

    @property
    def non_monotone_steps(self):
        """n at which p_{n+1} >= p_n (failures of strict decrease)."""
        d = np.diff(self.values)
        return self.n[:-1][d >= 0]

    def first_strict_decrease_onset(self):
        """Smallest n from which the sequence strictly decreases to the end."""
        d = np.diff(self.values)
        bad = np.nonzero(d >= 0)[0]
        return int(self.n[bad[-1] + 1]) if bad.size else int(self.n[0])


# ---------------------------------------------------------------------------
# tilt solving
# ---------------------------------------------------------------------------


def solve_tilt(dist, c, tol=1e-12, max_iter=200):
    """Positive tilt h with tilted mean m(h) = c, by bracketed Newton.

    m is strictly increasing, so the root is unique; Newton steps use
    sigma^2(h) = m'(h) and fall back to bisection whenever they leave the
    current bracket.  Requires mean < c < A0."""
    mean = dist.mean
    if mean is None:
        raise NoMgfError(f"{dist.family} has no finite mean")
    if c <= mean:
        raise NonpositiveTiltError(f"threshold {c} is at or below the mean {mean}")
    a0 = dist.tilted_mean_sup
    if c >= a0:
        raise TiltInfeasibleError(f"threshold {c} is not below the tilted-mean supremum {a0}")

    lo = 0.0
    hi = 1.0
    while dist.cgf_point(hi).m <= c:
        lo = hi
        hi *= 2.0
        if hi > 1e12:
            raise TiltInfeasibleError("tilt bracket expansion failed")
    h = 0.5 * (lo + hi)
    for _ in range(max_iter):
        cp = dist.cgf_point(h)
        f = cp.m - c
        if f > 0:
            hi = h
        else:
            lo = h
        if abs(f) <= tol * max(1.0, abs(c)):
            break
        step = f / cp.sigma2 if cp.sigma2 > 0 else None
        nxt = h - step if step is not None else None
        if nxt is None or not lo < nxt < hi:
            nxt = 0.5 * (lo + hi)
        h = nxt
    cp = dist.cgf_point(h)
    if abs(cp.m - c) > 1e-10 * max(1.0, abs(c)):
        raise TiltError(f"tilt solve stalled: |m(h)-c| = {abs(cp.m - c):.3e}")
    rate = h * c - cp.logR
    lattice = None
    if isinstance(dist, Bernoulli):
        lattice = (1.0, 0.0)
    elif isinstance(dist, FiniteLattice):
        lattice = (dist.span, dist.offset)
    return PetrovSolution(float(c), float(h), float(cp.logR), float(np.sqrt(cp.sigma2)),
                          float(rate), float(np.exp(-rate)), lattice)


# ---------------------------------------------------------------------------
# first-order tail asymptotes
# ---------------------------------------------------------------------------

VARIANTS = ("nonlattice", "lattice_geq", "lattice_strict")


def petrov_log_asymptote(sol, n, variant="nonlattice"):
    """log of the leading-order approximation of P(mean of n draws >= c)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    core = -n * sol.rate - 0.5 * math.log(2.0 * math.pi * n) - math.log(sol.sigma_h)
    if variant == "nonlattice":
        return core - math.log(sol.h)
    if sol.lattice is None:
        raise ValueError("lattice variant requires lattice metadata on the solution")
    H, a = sol.lattice
    j = n * (sol.c - a) / H
    if abs(j - round(j)) > LATTICE_SNAP * max(1.0, abs(j)):
        raise ValueError(f"n*c is not a lattice point of the n-fold sum (n={n})")
    q = -math.expm1(-H * sol.h)  # 1 - exp(-H h)
    out = core + math.log(H) - math.log(q)
    if variant == "lattice_strict":
        out += math.log1p(-q) if q < 1.0 else -math.inf  # multiply by e^{-Hh}
    return out


def petrov_asymptote(sol, n, variant="nonlattice"):
    """First-order tail approximation; see petrov_log_asymptote for the form.

    nonlattice:    exp(-n rate) / (h sigma(h) sqrt(2 pi n))
    lattice_geq:   H exp(-n rate) / (sigma(h) sqrt(2 pi n) (1 - e^{-Hh}))
    lattice_strict: the same base prefactor times (1/(1 - e^{-Hh}) - 1)."""
    return math.exp(petrov_log_asymptote(sol, n, variant))


# ---------------------------------------------------------------------------
# eventual-decrease verdict (sufficient conditions, univariate)
# ---------------------------------------------------------------------------


@dataclass
class DecreaseVerdict:
    verdict: str  # "eventually_decreasing" | "assumptions_violated"
    violated: list
    threshold: float = None
    mean: float = None

    def __bool__(self):
        return self.verdict == "eventually_decreasing"


def eventual_decrease_verdict(dist, epsilon):
    """Check the sufficient conditions for P(mean >= mu + eps) to be
    eventually strictly decreasing:

      (1) the MGF is finite on all of R,
      (2) the threshold is strictly inside the support: P(X > mu+eps) > 0,
      (3) the law is absolutely continuous, or
      (3bis) it is a lattice law with an atom exactly at mu + eps.

    The verdict lists every violated condition; it never raises."""
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    violated = []
    if dist.mgf_bound == 0.0 or dist.mean is None:
        violated.append("(1) moment generating function not finite everywhere")
        return DecreaseVerdict("assumptions_violated", violated)
    if not np.isinf(dist.mgf_bound):
        violated.append("(1) moment generating function not finite everywhere")
    t = dist.mean + epsilon
    sup = dist.support_sup
    if not sup > t + LATTICE_SNAP * max(1.0, abs(t)):
        violated.append(f"(2) no support above the threshold {t}")
    if isinstance(dist, Gaussian):
        pass  # absolutely continuous: (3) holds
    elif isinstance(dist, (Bernoulli, FiniteLattice)):
        lat = dist.as_lattice() if isinstance(dist, Bernoulli) else dist
        if lat.mass_at(t) <= 0.0:
            violated.append(f"(3bis) lattice law with no mass at the threshold {t}")
    else:
        violated.append(f"(3) family {dist.family!r} neither absolutely continuous nor lattice here")
    if violated:
        return DecreaseVerdict("assumptions_violated", violated, t, dist.mean)
    return DecreaseVerdict("eventually_decreasing", [], t, dist.mean)


# ---------------------------------------------------------------------------
# exact counterexample sequences
# ---------------------------------------------------------------------------


def bernoulli_sequence(p, epsilon, nmax):
    """Exact p_n = P(mean of n Bernoulli(p) >= p + eps) via binomial sums.

    The summation index is the snapped ceiling of n (p + eps)."""
    if not 0.0 < p < 1.0:
        raise ValueError("p must be in (0, 1)")
    if p + epsilon > 1.0 + 1e-12:
        raise ValueError("p + epsilon must not exceed 1")
    t = p + epsilon
    n = np.arange(1, nmax + 1)
    k = np.ceil(n * t - LATTICE_SNAP * np.maximum(1.0, np.abs(n * t))).astype(int)
    vals = stats.binom.sf(k - 1, n, p)
    return TailSequence(n, np.asarray(vals, dtype=float),
                        {"family": "bernoulli", "p": p, "epsilon": epsilon, "threshold": t})


def mass_restored_lattice(mu, epsilon):
    """Three-point law on {0, mu+eps, 1} with an atom at the threshold.

    Masses are eps/(2(mu+eps)-1) at mu+eps and (2mu-1)/(2(mu+eps)-1) at 1,
    remainder at 0.  Inputs are snapped to rationals so the grid span is
    exact; zero-mass grid points stay structural (they carry no atom)."""
    mu_f = Fraction(mu).limit_denominator(10**6)
    eps_f = Fraction(epsilon).limit_denominator(10**6)
    t = mu_f + eps_f
    den = 2 * t - 1
    if den <= 0:
        raise ValueError("construction needs mu + epsilon > 1/2")
    if not 0 <= t <= 1:
        raise ValueError("threshold mu + epsilon must lie in [0, 1]")
    atom = eps_f / den
    p_one = (2 * mu_f - 1) / den
    p_zero = 1 - atom - p_one
    for name, m in (("atom", atom), ("P(X=1)", p_one), ("P(X=0)", p_zero)):
        if not 0 <= m <= 1:
            raise ValueError(f"mass {name} = {float(m):.6g} outside [0, 1]")
    return FiniteLattice.from_points(
        [0.0, float(t), 1.0], [float(p_zero), float(atom), float(p_one)]
    )


def mass_restoration_summary(mu, epsilon, nmax=None):
    """Construction plus validity data: the effective (mean, atom) pair and
    the decrease verdict relative to the construction's own mean."""
    lat = mass_restored_lattice(mu, epsilon)
    t = float(Fraction(mu).limit_denominator(10**6) + Fraction(epsilon).limit_denominator(10**6))
    eff_mean = lat.mean
    eff_eps = t - eff_mean
    out = {
        "lattice": lat,
        "threshold": t,
        "atom_mass": lat.mass_at(t),
        "effective_mean": eff_mean,
        "effective_epsilon": eff_eps,
        "mean_preserved": abs(eff_mean - mu) <= 1e-12 * max(1.0, abs(mu)),
        "verdict": eventual_decrease_verdict(lat, eff_eps) if eff_eps > 0 else None,
    }
    if nmax is not None:
        out["sequence"] = lattice_tail_sequence(lat, t, nmax)
    return out


def lattice_tail_sequence(lat, threshold, nmax, strict=False):
    """Exact p_n = P(mean of n draws >= threshold) for a lattice base,
    computed incrementally with one convolution per n."""
    if isinstance(lat, Bernoulli):
        lat = lat.as_lattice()
    base = lat.masses
    vals = np.empty(nmax)
    pmf = base.copy()
    for n in range(1, nmax + 1):
        j = (n * threshold - n * lat.offset) / lat.span
        k = int(np.ceil(j - LATTICE_SNAP * max(1.0, abs(j))))
        if strict and abs(j - round(j)) <= LATTICE_SNAP * max(1.0, abs(j)):
            k = int(round(j)) + 1
        vals[n - 1] = pmf[max(k, 0):].sum() if k < pmf.size else 0.0
        if n < nmax:
            pmf = np.convolve(pmf, base)
    return TailSequence(np.arange(1, nmax + 1), vals,
                        {"family": "finite_lattice", "threshold": threshold, "strict": strict})


def stable_counterexample(family, epsilon, nmax, **params):
    """Exact p_n for the three closed-form stable families.

    levy (alpha = 1/2) increases strictly, cauchy (alpha = 1) is constant,
    gaussian (alpha = 2) decreases strictly."""
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if family == "levy":
        dist = Levy(params.pop("c", 1.0))
        loc = 0.0
    elif family == "cauchy":
        dist = Cauchy(params.pop("loc", 0.0), params.pop("scale", 1.0))
        loc = dist.loc
    elif family == "gaussian":
        dist = Gaussian(params.pop("mu", 0.0), params.pop("sigma2", 1.0))
        loc = dist.mu
    else:
        raise ValueError("family must be levy, cauchy, or gaussian")
    if params:
        raise TypeError(f"unknown parameters {sorted(params)}")
    n = np.arange(1, nmax + 1)
    vals = np.array([tail_probability(dist, int(k), loc + epsilon, strict=True) for k in n])
    return TailSequence(n, vals, {"family": family, "epsilon": epsilon})


# ---------------------------------------------------------------------------
# multivariate Gaussian closed form
# ---------------------------------------------------------------------------


def gaussian_multivariate_ld(mu, sigma, epsilon, n):
    """Closed-form strong LD data and asymptote for a Gaussian vector mean.

    With phi(t) = mu.t + t.Sigma.t/2 the tilt is tau = Sigma^-1 eps, the rate
    eps.Sigma^-1 eps / 2, and

      P(mean_n >= mu + eps) ~ exp(-n rate) / ((2 pi n)^{D/2} prod(tau_k) det(Sigma)^{1/2})

    valid when every tau_k is strictly positive (TauSignError otherwise)."""
    mu = np.asarray(mu, dtype=float).reshape(-1)
    sigma = np.asarray(sigma, dtype=float)
    eps = np.asarray(epsilon, dtype=float).reshape(-1)
    D = mu.size
    if sigma.shape != (D, D):
        raise ValueError("Sigma shape mismatch")
    if np.any(eps <= 0):
        raise ValueError("epsilon must have strictly positive entries")
    eig = np.linalg.eigvalsh(sigma)
    if eig.min() <= 0:
        raise ValueError("Sigma must be positive definite")
    tau = np.linalg.solve(sigma, eps)
    bad = np.nonzero(tau <= 0)[0]
    if bad.size:
        raise TauSignError(bad[0], tau)
    rate = 0.5 * float(eps @ tau)
    ld = MultivariateLd(tau, mu + eps, rate, sigma, float(eig.min()), float(eig.max()))
    log_asym = -n * rate - 0.5 * D * math.log(2.0 * math.pi * n) \
        - float(np.log(tau).sum()) - 0.5 * float(np.linalg.slogdet(sigma)[1])
    return ld, math.exp(log_asym)


@dataclass(frozen=True)
class ConeCheck:
    """Two tilt-positivity conditions, reported side by side.

    appendix_version tests min_i eps_i/||eps|| > sqrt(2 (1 - sqrt(lmin/lmax)))
    and is the one that guarantees tau stays in the positive orthant;
    main_text_version tests the same ratio < sqrt(lmin/lmax).  They disagree,
    so both are exposed."""

    appendix_version: bool
    main_text_version: bool
    min_ratio: float
    appendix_rhs: float
    main_text_rhs: float


def cone_condition(epsilon, lambda_min, lambda_max):
    eps = np.asarray(epsilon, dtype=float).reshape(-1)
    if not 0 < lambda_min <= lambda_max:
        raise ValueError("need 0 < lambda_min <= lambda_max")
    if np.all(eps == 0):
        raise ValueError("epsilon must be nonzero")
    ratio = float(eps.min() / np.linalg.norm(eps))
    root = math.sqrt(lambda_min / lambda_max)
    appendix_rhs = math.sqrt(2.0 * (1.0 - root))
    return ConeCheck(ratio > appendix_rhs, ratio < root, ratio, appendix_rhs, root)
