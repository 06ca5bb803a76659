"""Prediction distributions: samplers plus the analytic structure
(moments, exponential-tilting data, CDFs, lattice descriptors) that the
curve, expansion, and tail machinery consumes.

RNG contract: every sampler takes (seed, stream) and derives its generator
as ``default_rng(SeedSequence(entropy=seed, spawn_key=(stream,)))``.  Draws
are a pure function of (distribution, n, seed, stream); different streams of
the same seed are statistically independent.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import stats
from scipy.special import erf

__all__ = [
    "NoMgfError",
    "CgfPoint",
    "Distribution",
    "Gaussian",
    "Bernoulli",
    "FiniteLattice",
    "Cauchy",
    "Levy",
    "MultivariateGaussian",
    "ProductDistribution",
    "AffineTransform",
    "point_mass",
    "two_class_simplex",
    "stream_rng",
    "cgf_point",
    "exact_sum_distribution",
    "iter_sum_distributions",
    "tail_probability",
    "distribution_from_descriptor",
]

# relative tolerance snapping lattice thresholds onto atoms; float thresholds
# within this window of a support point count as sitting on it
LATTICE_SNAP = 1e-9


class NoMgfError(ValueError):
    """Moment generating function does not exist (or h outside its domain)."""


def stream_rng(seed, stream=0):
    """Deterministic per-stream generator derived from (seed, stream)."""
    return np.random.default_rng(np.random.SeedSequence(entropy=int(seed), spawn_key=(int(stream),)))


@dataclass(frozen=True)
class CgfPoint:
    """Exponential-tilt data at tilt h: log MGF, tilted mean, tilted variance."""

    h: float
    logR: float
    m: float
    sigma2: float


class Distribution:
    """Base interface; scalar families have dim == 1."""

    dim = 1
    family = "distribution"

    # analytic descriptors; subclasses override what they have
    @property
    def mean(self):
        raise NotImplementedError

    @property
    def variance(self):
        raise NotImplementedError

    def central_moment(self, order):
        """Central moment of the given order (2, 3 or 4); None if infinite."""
        raise NotImplementedError

    # extended-real structure for large deviations
    @property
    def mgf_bound(self):
        """Supremum B of tilts with finite MGF (0 means no MGF at all)."""
        return np.inf

    @property
    def support_sup(self):
        """Supremum A of the points of increase."""
        return np.inf

    @property
    def tilted_mean_sup(self):
        """Limit A0 of the tilted mean m(h) as h -> B."""
        return self.support_sup

    def sample(self, n, seed, stream=0):
        raise NotImplementedError

    def cgf_point(self, h):
        raise NoMgfError(f"{self.family} has no closed-form CGF")

    def descriptor(self):
        raise NotImplementedError


class Gaussian(Distribution):
    family = "gaussian"

    def __init__(self, mu=0.0, sigma2=1.0):
        if sigma2 < 0:
            raise ValueError("variance must be nonnegative")
        self.mu = float(mu)
        self.sigma2 = float(sigma2)

    mean = property(lambda self: self.mu)
    variance = property(lambda self: self.sigma2)

    def central_moment(self, order):
        s2 = self.sigma2
        return {2: s2, 3: 0.0, 4: 3.0 * s2 * s2}[order]

    def sample(self, n, seed, stream=0):
        return stream_rng(seed, stream).normal(self.mu, np.sqrt(self.sigma2), size=n)

    def cgf_point(self, h):
        h = float(h)
        return CgfPoint(h, self.mu * h + 0.5 * self.sigma2 * h * h, self.mu + self.sigma2 * h, self.sigma2)

    def cdf(self, x):
        return stats.norm.cdf(x, loc=self.mu, scale=np.sqrt(self.sigma2))

    def mean_tail(self, n, threshold, strict=False):
        """P(mean of n draws >= threshold); strict and non-strict coincide."""
        return stats.norm.sf(threshold, loc=self.mu, scale=np.sqrt(self.sigma2 / n))

    def descriptor(self):
        return {"family": "gaussian", "mean": self.mu, "var": self.sigma2}


class FiniteLattice(Distribution):
    """Distribution on the arithmetic grid offset + k*span, k = 0..len-1.

    ``masses`` may contain zeros: the grid is structural, the atoms are the
    entries with positive mass.  Serializes as {offset, span, masses[]}.
    """

    family = "finite_lattice"

    def __init__(self, offset, span, masses):
        m = np.asarray(masses, dtype=float)
        if m.ndim != 1 or m.size == 0:
            raise ValueError("masses must be a nonempty 1-d array")
        if np.any(m < -1e-15):
            raise ValueError("masses must be nonnegative")
        if abs(m.sum() - 1.0) > 1e-12:
            raise ValueError(f"masses must sum to 1 (got {m.sum()!r})")
        if span <= 0:
            raise ValueError("span must be positive")
        self.offset = float(offset)
        self.span = float(span)
        self.masses = np.clip(m, 0.0, None)

    @classmethod
    def from_points(cls, points, masses, span=None):
        """Build from explicit atoms; span inferred via rational gcd if omitted.

        Points are snapped to rationals (denominator <= 1e9) so grids like
        {0, 0.65, 1} get their true span (0.05) despite float rounding."""
        from fractions import Fraction
        from math import lcm

        pts = [Fraction(p).limit_denominator(10**9) for p in points]
        offset = min(pts)
        if span is None:
            diffs = [p - offset for p in pts if p != offset]
            if not diffs:
                span_f = Fraction(1)
            else:
                den = lcm(*[d.denominator for d in diffs])
                num = int(np.gcd.reduce([int(d * den) for d in diffs]))
                span_f = Fraction(num, den)
        else:
            span_f = Fraction(span).limit_denominator(10**9)
        idx = [(p - offset) / span_f for p in pts]
        if any(i.denominator != 1 for i in idx):
            raise ValueError("points do not sit on a common lattice for this span")
        size = max(int(i) for i in idx) + 1
        arr = np.zeros(size)
        for i, w in zip(idx, masses):
            arr[int(i)] += w
        return cls(float(offset), float(span_f), arr)

    @property
    def support(self):
        return self.offset + self.span * np.arange(self.masses.size)

    @property
    def atoms(self):
        keep = self.masses > 0
        return self.support[keep], self.masses[keep]

    mean = property(lambda self: float((self.support * self.masses).sum()))

    @property
    def variance(self):
        x = self.support
        mu = self.mean
        return float((self.masses * (x - mu) ** 2).sum())

    def central_moment(self, order):
        x = self.support - self.mean
        return float((self.masses * x**order).sum())

    @property
    def support_sup(self):
        xs, _ = self.atoms
        return float(xs[-1])

    tilted_mean_sup = support_sup

    def mass_at(self, x):
        """Mass at the atom nearest x, 0 if x is off the grid (snap 1e-9)."""
        j = (x - self.offset) / self.span
        k = int(round(j))
        if abs(j - k) > LATTICE_SNAP * max(1.0, abs(j)) or not 0 <= k < self.masses.size:
            return 0.0
        return float(self.masses[k])

    def sample(self, n, seed, stream=0):
        rng = stream_rng(seed, stream)
        xs, ms = self.atoms
        return rng.choice(xs, size=n, p=ms / ms.sum())

    def cgf_point(self, h):
        h = float(h)
        xs, ms = self.atoms
        shift = (h * xs).max()
        w = ms * np.exp(h * xs - shift)
        Z = w.sum()
        logR = shift + np.log(Z)
        m = float((xs * w).sum() / Z)
        sigma2 = float((w * (xs - m) ** 2).sum() / Z)
        return CgfPoint(h, float(logR), m, sigma2)

    def mean_tail(self, n, threshold, strict=False):
        return tail_probability(self, n, threshold, strict)

    def descriptor(self):
        return {"family": "finite_lattice", "offset": self.offset, "span": self.span,
                "masses": self.masses.tolist()}


class Bernoulli(Distribution):
    family = "bernoulli"

    def __init__(self, p):
        if not 0.0 <= p <= 1.0:
            raise ValueError("p must be in [0, 1]")
        self.p = float(p)

    mean = property(lambda self: self.p)
    variance = property(lambda self: self.p * (1.0 - self.p))

    def central_moment(self, order):
        p, q = self.p, 1.0 - self.p
        return {2: p * q, 3: p * q * (q - p), 4: p * q * (1.0 - 3.0 * p * q)}[order]

    @property
    def support_sup(self):
        return 1.0 if self.p > 0 else 0.0

    tilted_mean_sup = support_sup

    def sample(self, n, seed, stream=0):
        return (stream_rng(seed, stream).random(n) < self.p).astype(float)

    def cgf_point(self, h):
        h = float(h)
        p, q = self.p, 1.0 - self.p
        logR = np.logaddexp(np.log(q) if q > 0 else -np.inf, np.log(p) + h if p > 0 else -np.inf)
        m = p * np.exp(h - logR)
        return CgfPoint(h, float(logR), float(m), float(m * (1.0 - m)))

    def as_lattice(self):
        return FiniteLattice(0.0, 1.0, [1.0 - self.p, self.p])

    def mean_tail(self, n, threshold, strict=False):
        k = _snap_ceil(n * threshold)
        if strict and abs(k - n * threshold) <= LATTICE_SNAP * max(1.0, abs(n * threshold)):
            k += 1
        return float(stats.binom.sf(k - 1, n, self.p))

    def descriptor(self):
        return {"family": "bernoulli", "p": self.p}


class Cauchy(Distribution):
    """No mean, no MGF; the mean of n i.i.d. copies is the same Cauchy."""

    family = "cauchy"

    def __init__(self, loc=0.0, scale=1.0):
        if scale <= 0:
            raise ValueError("scale must be positive")
        self.loc = float(loc)
        self.scale = float(scale)

    @property
    def mean(self):
        return None

    @property
    def variance(self):
        return None

    def central_moment(self, order):
        return None

    mgf_bound = 0.0

    def cgf_point(self, h):
        raise NoMgfError("cauchy has no moment generating function")

    def sample(self, n, seed, stream=0):
        return self.loc + self.scale * stream_rng(seed, stream).standard_cauchy(n)

    def cdf(self, x):
        return 0.5 + np.arctan((np.asarray(x, dtype=float) - self.loc) / self.scale) / np.pi

    def mean_tail(self, n, threshold, strict=False):
        return float(0.5 - np.arctan((threshold - self.loc) / self.scale) / np.pi)

    def descriptor(self):
        return {"family": "cauchy", "loc": self.loc, "scale": self.scale}


class Levy(Distribution):
    """One-sided 1/2-stable law; the mean of n i.i.d. copies is Levy(n*c)."""

    family = "levy"

    def __init__(self, c=1.0):
        if c <= 0:
            raise ValueError("scale c must be positive")
        self.c = float(c)

    @property
    def mean(self):
        return None

    @property
    def variance(self):
        return None

    def central_moment(self, order):
        return None

    mgf_bound = 0.0

    def cgf_point(self, h):
        raise NoMgfError("levy has no moment generating function")

    def sample(self, n, seed, stream=0):
        z = stream_rng(seed, stream).standard_normal(n)
        return self.c / z**2

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        pos = x > 0
        out[pos] = 1.0 - erf(np.sqrt(self.c / (2.0 * x[pos])))
        return out if out.ndim else float(out)

    def mean_tail(self, n, threshold, strict=False):
        if threshold <= 0:
            return 1.0
        return float(erf(np.sqrt(n * self.c / (2.0 * threshold))))

    def descriptor(self):
        return {"family": "levy", "c": self.c}


class MultivariateGaussian(Distribution):
    family = "multivariate_gaussian"

    def __init__(self, mean, cov):
        self.mu = np.asarray(mean, dtype=float).reshape(-1)
        self.cov = np.asarray(cov, dtype=float)
        if self.cov.shape != (self.mu.size, self.mu.size):
            raise ValueError("covariance shape mismatch")
        self.dim = self.mu.size
        self._chol = np.linalg.cholesky(self.cov + 0.0)

    mean = property(lambda self: self.mu)
    variance = property(lambda self: self.cov)

    def central_moment(self, order):
        d = self.dim
        if order == 2:
            return self.cov
        if order == 3:
            return np.zeros((d, d, d))
        S = self.cov
        return (
            np.einsum("ij,kl->ijkl", S, S)
            + np.einsum("ik,jl->ijkl", S, S)
            + np.einsum("il,jk->ijkl", S, S)
        )

    def sample(self, n, seed, stream=0):
        z = stream_rng(seed, stream).standard_normal((n, self.dim))
        return self.mu + z @ self._chol.T

    def affine(self, A, b=0.0):
        """Distribution of A X + b, again Gaussian."""
        A = np.atleast_2d(np.asarray(A, dtype=float))
        return MultivariateGaussian(A @ self.mu + b, A @ self.cov @ A.T)

    def descriptor(self):
        return {"family": "multivariate_gaussian", "mean": self.mu.tolist(),
                "cov": self.cov.tolist()}


class ProductDistribution(Distribution):
    """Vector of independent scalar components, sampled on disjoint streams."""

    family = "product"

    def __init__(self, components):
        self.components = tuple(components)
        self.dim = len(self.components)

    mean = property(lambda self: np.array([c.mean for c in self.components]))
    variance = property(lambda self: np.diag([c.variance for c in self.components]))

    def central_moment(self, order):
        d = self.dim
        out = np.zeros((d,) * order)
        for i, c in enumerate(self.components):
            out[(i,) * order] = c.central_moment(order)
        return out

    def sample(self, n, seed, stream=0):
        cols = [c.sample(n, seed, stream * self.dim + i) for i, c in enumerate(self.components)]
        return np.stack(cols, axis=-1)

    def descriptor(self):
        return {"family": "product", "components": [c.descriptor() for c in self.components]}


class AffineTransform(Distribution):
    """Distribution of A X + b for a base distribution X.

    A may be a scalar (scalar base, scalar output) or a matrix mapping the
    base to a vector; analytic moments transform accordingly.
    """

    family = "affine"

    def __init__(self, base, A, b=0.0):
        self.base = base
        self.A = np.asarray(A, dtype=float)
        self.b = np.asarray(b, dtype=float)
        if self.A.ndim == 0:
            self.dim = base.dim
        else:
            self.dim = self.A.shape[0]

    @property
    def mean(self):
        m = self.base.mean
        if self.A.ndim == 0:
            return float(self.A) * m + self.b
        m = np.atleast_1d(m)
        return self.A @ m + self.b

    @property
    def variance(self):
        v = self.base.variance
        if self.A.ndim == 0:
            return float(self.A) ** 2 * v
        V = v if np.ndim(v) == 2 else np.atleast_2d(v)
        return self.A @ V @ self.A.T

    def central_moment(self, order):
        cm = self.base.central_moment(order)
        if cm is None:
            return None
        if self.A.ndim == 0:
            return float(self.A) ** order * cm
        if self.base.dim == 1:
            a = self.A.reshape(-1)
            out = cm * a
            for _ in range(order - 1):
                out = np.multiply.outer(out, a)
            return out
        letters = "abcdefgh"
        src = letters[:order]
        spec = ",".join(f"{o.upper()}{o}" for o in src) + "," + src + "->" + src.upper()
        mats = [self.A] * order
        return np.einsum(spec, *mats, cm)

    def sample(self, n, seed, stream=0):
        x = self.base.sample(n, seed, stream)
        if self.A.ndim == 0:
            return float(self.A) * x + self.b
        if x.ndim == 1:
            x = x[:, None]
        return x @ self.A.T + self.b

    def descriptor(self):
        return {"family": "affine", "base": self.base.descriptor(),
                "A": self.A.tolist(), "b": self.b.tolist()}


def point_mass(c):
    """Degenerate distribution at c, as a one-atom lattice."""
    return FiniteLattice(float(c), 1.0, [1.0])


def two_class_simplex(base):
    """Map a scalar p-distribution to simplex predictions (p, 1-p)."""
    return AffineTransform(base, np.array([[1.0], [-1.0]]), np.array([0.0, 1.0]))


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def cgf_point(dist, h):
    """Tilt data (log R, m, sigma^2) at tilt h; raises NoMgfError without MGF."""
    if dist.mgf_bound == 0.0:
        raise NoMgfError(f"{dist.family} has no moment generating function")
    if abs(h) >= dist.mgf_bound and not np.isinf(dist.mgf_bound):
        raise NoMgfError(f"tilt {h} outside MGF domain (B = {dist.mgf_bound})")
    return dist.cgf_point(h)


def _as_lattice(dist):
    if isinstance(dist, FiniteLattice):
        return dist
    if isinstance(dist, Bernoulli):
        return dist.as_lattice()
    raise TypeError(f"{dist.family} is not a lattice distribution")


def exact_sum_distribution(dist, n):
    """Exact law of X_1 + ... + X_n for a lattice base, by DP convolution."""
    lat = _as_lattice(dist)
    if n < 1:
        raise ValueError("n must be >= 1")
    size = (lat.masses.size - 1) * n + 1
    if size > 5_000_000:
        raise ValueError("sum support too large for exact convolution")
    pmf = lat.masses
    out = np.array([1.0])
    for _ in range(n):
        out = np.convolve(out, pmf)
    return FiniteLattice(lat.offset * n, lat.span, out / out.sum())


def iter_sum_distributions(dist, nmax):
    """Yield (n, FiniteLattice of S_n) for n = 1..nmax, incrementally."""
    lat = _as_lattice(dist)
    pmf = lat.masses.copy()
    for n in range(1, nmax + 1):
        yield n, FiniteLattice(lat.offset * n, lat.span, pmf / pmf.sum())
        if n < nmax:
            pmf = np.convolve(pmf, lat.masses)


def _snap_ceil(x):
    """Smallest integer >= x, snapping values within 1e-9 of an integer."""
    return int(np.ceil(x - LATTICE_SNAP * max(1.0, abs(x))))


def _lattice_mean_tail(lat, n, threshold, strict):
    """P(mean of n draws from lat >= threshold) from the exact sum law."""
    s = exact_sum_distribution(lat, n)
    t = n * threshold
    j = (t - s.offset) / s.span
    k = _snap_ceil(j)
    if strict and abs(j - round(j)) <= LATTICE_SNAP * max(1.0, abs(j)):
        k = int(round(j)) + 1
    k = max(k, 0)
    if k >= s.masses.size:
        return 0.0
    return float(s.masses[k:].sum())


def tail_probability(dist, n, threshold, strict=False):
    """Exact P(mean of n i.i.d. draws >= threshold) (or > with strict).

    Gaussian, Cauchy and Levy use closed-form stability of the mean;
    Bernoulli and lattice bases use the exact DP sum law.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if isinstance(dist, (Gaussian, Cauchy, Levy, Bernoulli)):
        return dist.mean_tail(n, threshold, strict)
    if isinstance(dist, FiniteLattice):
        return _lattice_mean_tail(dist, n, threshold, strict)
    raise TypeError(f"no exact tail law for family {dist.family!r}")


# ---------------------------------------------------------------------------
# JSON descriptors
# ---------------------------------------------------------------------------


def distribution_from_descriptor(desc):
    d = dict(desc)
    family = d.pop("family")
    if family == "gaussian":
        return Gaussian(d.pop("mean", 0.0), d.pop("var", d.pop("sigma2", 1.0)))
    if family == "bernoulli":
        return Bernoulli(d.pop("p"))
    if family == "finite_lattice":
        return FiniteLattice(d.pop("offset"), d.pop("span"), d.pop("masses"))
    if family == "cauchy":
        return Cauchy(d.pop("loc", 0.0), d.pop("scale", 1.0))
    if family == "levy":
        return Levy(d.pop("c", 1.0))
    if family == "multivariate_gaussian":
        return MultivariateGaussian(d.pop("mean"), d.pop("cov"))
    if family == "product":
        return ProductDistribution([distribution_from_descriptor(c) for c in d.pop("components")])
    if family == "affine":
        return AffineTransform(distribution_from_descriptor(d.pop("base")), d.pop("A"), d.pop("b", 0.0))
    raise KeyError(f"unknown distribution family {family!r}")
