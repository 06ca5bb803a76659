"""Loss catalog with values, closed-form derivatives, and convexity metadata.

Every loss is a callable object mapping predictions to real losses.  Scalar
losses accept arrays of any shape and evaluate elementwise; vector losses
(cross-entropy, Brier, 0/1 error) accept arrays whose last axis is the
prediction dimension.  The target (label, true class, regression target) is
frozen into the loss object at construction, so a loss is a function of the
prediction alone.

Losses are immutable after construction and safe to share across workers.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

__all__ = [
    "DomainError",
    "NonSmoothLossError",
    "Loss",
    "SquaredLoss",
    "AbsoluteLoss",
    "HuberLoss",
    "CrossEntropyLoss",
    "CrossEntropyLogitsLoss",
    "BrierLoss",
    "SigmoidLoss",
    "SavageLoss",
    "TangentLoss",
    "SphericalLoss",
    "BarronLoss",
    "StudentTLoss",
    "ZeroOneLoss",
    "zero_one_error",
    "eval_loss",
    "convexity_at",
    "loss_derivatives",
    "make_loss",
    "loss_from_descriptor",
    "CONVEX_CATALOG",
    "NONCONVEX_CATALOG",
]

SIMPLEX_TOL = 1e-9
CLAMP = 1e-12


class DomainError(ValueError):
    """Prediction outside the admissible domain of a loss."""


class NonSmoothLossError(TypeError):
    """Derivative request on a loss with no derivatives at that point."""


def _check_simplex(pred):
    p = np.asarray(pred, dtype=float)
    if p.shape[-1] < 2:
        raise DomainError("simplex predictions need dimension >= 2")
    if np.any(p < -SIMPLEX_TOL) or np.any(p > 1 + SIMPLEX_TOL):
        raise DomainError("simplex entries must lie in [0, 1]")
    if np.any(np.abs(p.sum(axis=-1) - 1.0) > SIMPLEX_TOL):
        raise DomainError("simplex entries must sum to 1")
    return p


class Loss:
    """Base class.  Subclasses fill in the metadata below.

    convexity_tag is one of {"globally_convex", "piecewise",
    "nonconvex_smooth", "zero_one"}; ``mu`` is the strong-convexity modulus
    (0 when merely convex); ``smoothness_order`` is the highest derivative
    order available in closed form (higher orders fall back to nested
    central differences).
    """

    name = "loss"
    arity = 1
    convexity_tag = "globally_convex"
    is_convex = True
    mu = 0.0
    smoothness_order = 4
    params: dict = {}

    def __call__(self, pred):
        raise NotImplementedError

    # -- derivatives ----------------------------------------------------

    def _derivative(self, x, order):
        """Closed-form order-th derivative at scalar/vector point, or None."""
        return None

    def derivatives(self, point, max_order=2):
        """Derivative tensors [gradient, Hessian, ...] up to max_order.

        Tensor k has shape (d,)*k.  Orders beyond ``smoothness_order`` use
        nested central finite differences (step cbrt(eps)*max(1,|x|))."""
        if self.convexity_tag == "zero_one":
            raise NonSmoothLossError(f"{self.name} has no derivatives")
        if not 1 <= max_order <= 4:
            raise ValueError("max_order must be in 1..4")
        d = self.arity
        x = np.asarray(point, dtype=float)
        if d == 1:
            x0 = float(x)
            out = []
            for k in range(1, max_order + 1):
                val = self._derivative(x0, k)
                if val is None:
                    val = _fd_scalar(self, x0, k)
                out.append(np.asarray(val, dtype=float).reshape((1,) * k))
            return out
        if x.shape != (d,):
            raise ValueError(f"point must have shape ({d},)")
        out = []
        for k in range(1, max_order + 1):
            val = self._derivative(x, k)
            if val is None:
                val = _fd_tensor(self, x, k)
            out.append(np.asarray(val, dtype=float))
        return out

    def hessian(self, point):
        return self.derivatives(point, 2)[1]

    # -- exact rational evaluation (piecewise-rational losses only) -----

    supports_exact = False

    def eval_exact(self, values):
        """Evaluate at a tuple of Fractions, exactly.  Only where supported."""
        raise NotImplementedError(f"{self.name} has no exact rational form")

    def descriptor(self):
        return {"loss": self.name, **self.params}

    def __repr__(self):
        inner = ", ".join(f"{k}={v}" for k, v in self.params.items())
        return f"{type(self).__name__}({inner})"


# ---------------------------------------------------------------------------
# finite-difference fallback (nested central differences)
# ---------------------------------------------------------------------------

_EPS = float(np.finfo(float).eps)
_FD_STEP = float(np.cbrt(_EPS))  # single central difference


def _fd_order_step(order):
    # nesting amplifies roundoff like eps/h^order; eps^(1/(order+2))
    # balances it against the O(h^2) truncation of central differences
    return _EPS ** (1.0 / (order + 2))


def _fd_scalar(loss, x, order):
    if order > 1 and loss._derivative(x, order - 1) is not None:
        # one central difference of the closed (order-1) form: ~1e-10 accurate
        h = _FD_STEP * max(1.0, abs(x))
        return (loss._derivative(x + h, order - 1) - loss._derivative(x - h, order - 1)) / (2 * h)
    h = _fd_order_step(order) * max(1.0, abs(x))

    def diff(g):
        return lambda t: (g(t + h) - g(t - h)) / (2 * h)

    g = loss
    for _ in range(order):
        g = diff(g)
    return g(x)


def _fd_tensor(loss, x, order):
    """order-th derivative tensor of a vector loss by recursive central FD."""
    d = x.size
    closed = loss._derivative(x, order - 1) if order > 1 else None
    h = (_FD_STEP if closed is not None else _fd_order_step(order)) \
        * np.maximum(1.0, np.abs(x))

    if closed is not None:
        # differentiate the closed (order-1) form once: cheaper and stabler
        out = np.empty((d,) * order)
        for i in range(d):
            e = np.zeros(d)
            e[i] = h[i]
            out[..., i] = (
                np.asarray(loss._derivative(x + e, order - 1))
                - np.asarray(loss._derivative(x - e, order - 1))
            ) / (2 * h[i])
        return out

    def tensor(k, f, pt):
        out = np.empty((d,) * k)
        for i in range(d):
            e = np.zeros(d)
            e[i] = h[i]
            if k == 1:
                out[i] = (f(pt + e) - f(pt - e)) / (2 * h[i])
            else:
                out[i] = (tensor(k - 1, f, pt + e) - tensor(k - 1, f, pt - e)) / (2 * h[i])
        return out

    return tensor(order, lambda p: float(loss(p)), x)


# ---------------------------------------------------------------------------
# regression losses (scalar residual r = yhat - y)
# ---------------------------------------------------------------------------


class SquaredLoss(Loss):
    """L(yhat) = (yhat - y)^2.  1-strongly convex."""

    name = "squared"
    convexity_tag = "globally_convex"
    mu = 1.0
    supports_exact = True

    def __init__(self, y=0.0):
        self.y = float(y)
        self.params = {"y": self.y}

    def __call__(self, pred):
        r = np.asarray(pred, dtype=float) - self.y
        return r * r

    def _derivative(self, x, order):
        r = x - self.y
        return (2.0 * r, 2.0, 0.0, 0.0)[order - 1]

    def eval_exact(self, values):
        (v,) = values
        r = v - Fraction(self.y)
        return r * r


class AbsoluteLoss(Loss):
    """L(yhat) = |yhat - y|.  Convex, kink at the target."""

    name = "absolute"
    convexity_tag = "piecewise"
    mu = 0.0
    smoothness_order = 2
    supports_exact = True

    def __init__(self, y=0.0):
        self.y = float(y)
        self.params = {"y": self.y}

    def __call__(self, pred):
        return np.abs(np.asarray(pred, dtype=float) - self.y)

    def _derivative(self, x, order):
        r = x - self.y
        if r == 0.0:
            raise NonSmoothLossError("absolute loss not differentiable at the target")
        return (float(np.sign(r)), 0.0, 0.0, 0.0)[order - 1]

    def eval_exact(self, values):
        (v,) = values
        return abs(v - Fraction(self.y))


class HuberLoss(Loss):
    """Quadratic within |r| <= delta, linear outside.  Convex."""

    name = "huber"
    convexity_tag = "piecewise"
    mu = 0.0
    smoothness_order = 2
    supports_exact = True

    def __init__(self, y=0.0, delta=1.0):
        if delta <= 0:
            raise ValueError("delta must be positive")
        self.y = float(y)
        self.delta = float(delta)
        self.params = {"y": self.y, "delta": self.delta}

    def __call__(self, pred):
        r = np.asarray(pred, dtype=float) - self.y
        a = np.abs(r)
        return np.where(a <= self.delta, 0.5 * r * r, self.delta * (a - 0.5 * self.delta))

    def _derivative(self, x, order):
        r = x - self.y
        a = abs(r)
        if a == self.delta:
            raise NonSmoothLossError("huber loss second derivative jumps at |r| = delta")
        if a < self.delta:
            return (r, 1.0, 0.0, 0.0)[order - 1]
        return (self.delta * float(np.sign(r)), 0.0, 0.0, 0.0)[order - 1]

    def eval_exact(self, values):
        (v,) = values
        r = v - Fraction(self.y)
        d = Fraction(self.delta)
        a = abs(r)
        if a <= d:
            return r * r / 2
        return d * (a - d / 2)


# ---------------------------------------------------------------------------
# probabilistic classification losses
# ---------------------------------------------------------------------------


class CrossEntropyLoss(Loss):
    """-log yhat[true_class] on simplex predictions, one-hot target.

    Inputs are clamped at 1e-12 before the log so Monte Carlo tails never
    produce infinities; the clamp is recorded in ``params``."""

    name = "cross_entropy"
    convexity_tag = "globally_convex"
    mu = 0.0

    def __init__(self, true_class=0, n_classes=2):
        if not 0 <= true_class < n_classes:
            raise DomainError("invalid class index")
        self.true_class = int(true_class)
        self.arity = int(n_classes)
        self.params = {"true_class": self.true_class, "n_classes": self.arity, "clamp": CLAMP}

    def __call__(self, pred):
        p = _check_simplex(pred)
        return -np.log(np.maximum(p[..., self.true_class], CLAMP))

    def _derivative(self, x, order):
        d = self.arity
        t = self.true_class
        pt = max(float(np.asarray(x).reshape(-1)[t]), CLAMP)
        out = np.zeros((d,) * order)
        out[(t,) * order] = (-1.0 / pt, 1.0 / pt**2, -2.0 / pt**3, 6.0 / pt**4)[order - 1]
        return out


class CrossEntropyLogitsLoss(Loss):
    """Cross-entropy after softmax, as a function of real score vectors.

    L(s) = logsumexp(s) - s[true_class]; convex in the scores."""

    name = "cross_entropy_logits"
    convexity_tag = "globally_convex"
    mu = 0.0
    smoothness_order = 2

    def __init__(self, true_class=0, n_classes=2):
        if not 0 <= true_class < n_classes:
            raise DomainError("invalid class index")
        self.true_class = int(true_class)
        self.arity = int(n_classes)
        self.params = {"true_class": self.true_class, "n_classes": self.arity}

    def __call__(self, pred):
        s = np.asarray(pred, dtype=float)
        m = s.max(axis=-1, keepdims=True)
        lse = np.log(np.exp(s - m).sum(axis=-1)) + m[..., 0]
        return lse - s[..., self.true_class]

    def _softmax(self, x):
        e = np.exp(x - x.max())
        return e / e.sum()

    def _derivative(self, x, order):
        p = self._softmax(np.asarray(x, dtype=float))
        onehot = np.zeros(self.arity)
        onehot[self.true_class] = 1.0
        if order == 1:
            return p - onehot
        if order == 2:
            return np.diag(p) - np.outer(p, p)
        return None


class BrierLoss(Loss):
    """||yhat - onehot(true_class)||^2 on score vectors.  1-strongly convex."""

    name = "brier"
    convexity_tag = "globally_convex"
    mu = 1.0
    supports_exact = True

    def __init__(self, true_class=0, n_classes=2):
        if not 0 <= true_class < n_classes:
            raise DomainError("invalid class index")
        self.true_class = int(true_class)
        self.arity = int(n_classes)
        self.params = {"true_class": self.true_class, "n_classes": self.arity}

    def __call__(self, pred):
        p = np.asarray(pred, dtype=float)
        r = p.copy()
        r[..., self.true_class] -= 1.0
        return (r * r).sum(axis=-1)

    def _derivative(self, x, order):
        d = self.arity
        if order == 1:
            r = np.asarray(x, dtype=float).copy()
            r[self.true_class] -= 1.0
            return 2.0 * r
        if order == 2:
            return 2.0 * np.eye(d)
        return np.zeros((d,) * order)

    def eval_exact(self, values):
        total = Fraction(0)
        for c, v in enumerate(values):
            r = v - (1 if c == self.true_class else 0)
            total += r * r
        return total


# ---------------------------------------------------------------------------
# smooth nonconvex losses
# ---------------------------------------------------------------------------


def _sigma_poly(u, order):
    """order-th derivative of the logistic function expressed in u = sigma(z)."""
    if order == 0:
        return u
    if order == 1:
        return u - u**2
    if order == 2:
        return u - 3 * u**2 + 2 * u**3
    if order == 3:
        return u - 7 * u**2 + 12 * u**3 - 6 * u**4
    return u - 15 * u**2 + 50 * u**3 - 60 * u**4 + 24 * u**5


class SigmoidLoss(Loss):
    """Smooth surrogate of the 0/1 error on probability predictions.

    For label 0, L(yhat) = sigma((yhat - 1/2)/s); for label 1 the argument is
    negated.  Locally convex on the correct side of 1/2, concave on the wrong
    side; scale s controls the sharpness of the transition."""

    name = "sigmoid"
    convexity_tag = "nonconvex_smooth"
    is_convex = False

    def __init__(self, label=0, s=0.1):
        if s <= 0:
            raise ValueError("scale s must be positive")
        if label not in (0, 1):
            raise DomainError("label must be 0 or 1")
        self.label = int(label)
        self.s = float(s)
        self.params = {"label": self.label, "s": self.s}

    def _z(self, pred):
        sign = 1.0 if self.label == 0 else -1.0
        return sign * (np.asarray(pred, dtype=float) - 0.5) / self.s

    def __call__(self, pred):
        z = self._z(pred)
        out = np.empty_like(z, dtype=float)
        pos = z >= 0
        out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
        ez = np.exp(z[~pos])
        out[~pos] = ez / (1.0 + ez)
        return out if out.ndim else float(out)

    def _derivative(self, x, order):
        u = float(self(x))
        sign = 1.0 if self.label == 0 else -1.0
        return _sigma_poly(u, order) * (sign / self.s) ** order


class SavageLoss(Loss):
    """Sigmoidal boosting loss 1/(1+e^v)^2 on an affine margin of yhat.

    The margin v = (1/2 - yhat)/s - log 2 (negated for label 1) places the
    inflexion at yhat = 1/2, so the loss is locally convex exactly when the
    50%-threshold prediction is correct."""

    name = "savage"
    convexity_tag = "nonconvex_smooth"
    is_convex = False

    def __init__(self, label=0, s=0.1):
        if s <= 0:
            raise ValueError("scale s must be positive")
        if label not in (0, 1):
            raise DomainError("label must be 0 or 1")
        self.label = int(label)
        self.s = float(s)
        self.params = {"label": self.label, "s": self.s}

    def _v(self, pred):
        sign = 1.0 if self.label == 0 else -1.0
        return sign * (0.5 - np.asarray(pred, dtype=float)) / self.s - np.log(2.0)

    def __call__(self, pred):
        v = self._v(pred)
        t = np.empty_like(v, dtype=float)
        pos = v >= 0
        t[pos] = np.exp(-v[pos]) / (1.0 + np.exp(-v[pos]))
        t[~pos] = 1.0 / (1.0 + np.exp(v[~pos]))
        out = t * t
        return out if out.ndim else float(out)

    def _derivative(self, x, order):
        v = float(self._v(np.asarray(x, dtype=float)))
        t = 1.0 / (1.0 + np.exp(v))
        poly = (
            2 * t**3 - 2 * t**2,
            6 * t**4 - 10 * t**3 + 4 * t**2,
            24 * t**5 - 54 * t**4 + 38 * t**3 - 8 * t**2,
            120 * t**6 - 336 * t**5 + 330 * t**4 - 130 * t**3 + 16 * t**2,
        )[order - 1]
        sign = -1.0 if self.label == 0 else 1.0
        return poly * (sign / self.s) ** order


class TangentLoss(Loss):
    """(2 atan(v) - 1)^2 on real-valued scores; v is the signed score.

    Concave for strongly negative and strongly positive margins, so it
    penalises overconfidence even when the prediction is correct."""

    name = "tangent"
    convexity_tag = "nonconvex_smooth"
    is_convex = False

    def __init__(self, label=1):
        if label not in (0, 1):
            raise DomainError("label must be 0 or 1")
        self.label = int(label)
        self.params = {"label": self.label}

    def _v(self, pred):
        sign = 1.0 if self.label == 1 else -1.0
        return sign * np.asarray(pred, dtype=float)

    def __call__(self, pred):
        v = self._v(pred)
        out = (2.0 * np.arctan(v) - 1.0) ** 2
        return out if out.ndim else float(out)

    def _derivative(self, x, order):
        v = float(self._v(np.asarray(x, dtype=float)))
        a = 2.0 * np.arctan(v) - 1.0
        q = 1.0 + v * v
        if order == 1:
            val = 4.0 * a / q
        elif order == 2:
            val = 8.0 * (1.0 - v * a) / q**2
        elif order == 3:
            val = 8.0 * (4.0 * v * v * a - 6.0 * v - a * q) / q**3
        else:
            val = 32.0 * (-6.0 * v**3 * a + 11.0 * v * v - q * (2.0 - 3.0 * v * a)) / q**4
        sign = 1.0 if self.label == 1 else -1.0
        return val * sign**order


class SphericalLoss(Loss):
    """Negated spherical score on binary probability predictions.

    For label 0, L(yhat) = -(1 - yhat)/sqrt(yhat^2 + (1-yhat)^2); strictly
    convex below the inflexion point (1 + sqrt(17))/8 and strictly concave
    above it."""

    name = "spherical"
    convexity_tag = "nonconvex_smooth"
    is_convex = False

    INFLECTION = (1.0 + np.sqrt(17.0)) / 8.0

    def __init__(self, label=0):
        if label not in (0, 1):
            raise DomainError("label must be 0 or 1")
        self.label = int(label)
        self.params = {"label": self.label}

    def __call__(self, pred):
        p = np.asarray(pred, dtype=float)
        if np.any(p < -SIMPLEX_TOL) or np.any(p > 1 + SIMPLEX_TOL):
            raise DomainError("spherical score needs yhat in [0, 1]")
        norm = np.sqrt(p * p + (1.0 - p) ** 2)
        num = p if self.label == 1 else 1.0 - p
        out = -num / norm
        return out if out.ndim else float(out)

    def _derivative(self, x, order):
        # label 1 is the mirror image around 1/2, so reuse the label-0 forms
        p = float(x) if self.label == 0 else 1.0 - float(x)
        q = 2.0 * p * p - 2.0 * p + 1.0
        if order == 1:
            val = p / q**1.5
        elif order == 2:
            val = (-4.0 * p * p + p + 1.0) / q**2.5
        elif order == 3:
            val = 3.0 * (8.0 * p**3 - 4.0 * p * p - 5.0 * p + 2.0) / q**3.5
        else:
            val = 3.0 * (-64.0 * p**4 + 48.0 * p**3 + 72.0 * p * p - 61.0 * p + 9.0) / q**4.5
        return val if self.label == 0 else val * (-1.0) ** order


class BarronLoss(Loss):
    """General robust regression loss with shape alpha and convexity cutoff c.

    For alpha < 1 the internal scale is chosen so the loss is convex exactly
    where (yhat - y)^2 < c and concave beyond; members with alpha >= 1 are
    convex everywhere and treat c as the plain squared scale.  alpha = 2 is
    the scaled squared error, alpha = 0 the Cauchy/Lorentzian form."""

    name = "barron"
    convexity_tag = "nonconvex_smooth"
    is_convex = False

    def __init__(self, y=0.0, alpha=-2.0, c=10.0):
        if c <= 0:
            raise ValueError("cutoff c must be positive")
        self.y = float(y)
        self.alpha = float(alpha)
        self.c = float(c)
        if self.alpha < 1.0:
            self.scale2 = self.c * (1.0 - self.alpha) / (2.0 - self.alpha)
        else:
            self.scale2 = self.c
            self.convexity_tag = "globally_convex"
            self.is_convex = True
        self.params = {"y": self.y, "alpha": self.alpha, "c": self.c}

    def __call__(self, pred):
        r = np.asarray(pred, dtype=float) - self.y
        a, g = self.alpha, self.scale2
        if a == 2.0:
            out = 0.5 * r * r / g
        elif a == 0.0:
            out = np.log1p(0.5 * r * r / g)
        else:
            b = abs(a - 2.0)
            out = (b / a) * (np.power(r * r / (g * b) + 1.0, a / 2.0) - 1.0)
        return out if np.ndim(out) else float(out)

    def _derivative(self, x, order):
        r = float(x) - self.y
        a, g = self.alpha, self.scale2
        if a == 2.0:
            return (r / g, 1.0 / g, 0.0, 0.0)[order - 1]
        if a == 0.0:
            q = 2.0 * g + r * r
            return (
                2.0 * r / q,
                2.0 * (2.0 * g - r * r) / q**2,
                -4.0 * r * (6.0 * g - r * r) / q**3,
                12.0 * (-8.0 * r**4 + 8.0 * r * r * q - q * q) / q**4,
            )[order - 1]
        b = abs(a - 2.0)
        w = 1.0 + r * r / (g * b)
        wp = w ** (a / 2.0)
        if order == 1:
            return wp * r / (g * w)
        if order == 2:
            return wp * (b * g * w + r * r * (a - 2.0)) / (b * g * g * w * w)
        if order == 3:
            return wp * r * (3 * b * g * w * (a - 2) + r * r * (a * a - 6 * a + 8)) / (
                b * b * g**3 * w**3
            )
        return wp * (
            3 * b * b * g * g * w * w * (a - 2)
            + 6 * b * g * w * r * r * (a * a - 6 * a + 8)
            + r**4 * (a**3 - 12 * a * a + 44 * a - 48)
        ) / (b**3 * g**4 * w**4)


class StudentTLoss(Loss):
    """Student-t negative log-likelihood with nu degrees of freedom.

    Scale chosen so the convex region is exactly (yhat - y)^2 < c, in line
    with the rest of the robust catalog."""

    name = "student_t"
    convexity_tag = "nonconvex_smooth"
    is_convex = False

    def __init__(self, y=0.0, nu=3.0, c=10.0):
        if nu <= 0 or c <= 0:
            raise ValueError("nu and c must be positive")
        self.y = float(y)
        self.nu = float(nu)
        self.c = float(c)
        self.scale2 = self.c / self.nu
        self.params = {"y": self.y, "nu": self.nu, "c": self.c}

    def __call__(self, pred):
        r = np.asarray(pred, dtype=float) - self.y
        out = 0.5 * (self.nu + 1.0) * np.log1p(r * r / (self.nu * self.scale2))
        return out if np.ndim(out) else float(out)

    def _derivative(self, x, order):
        r = float(x) - self.y
        nu = self.nu
        q = nu * self.scale2 + r * r
        k = nu + 1.0
        return (
            k * r / q,
            k * (nu * self.scale2 - r * r) / q**2,
            -2.0 * k * r * (3.0 * nu * self.scale2 - r * r) / q**3,
            -6.0 * k * (8.0 * r**4 - 8.0 * r * r * q + q * q) / q**4,
        )[order - 1]


# ---------------------------------------------------------------------------
# classification error
# ---------------------------------------------------------------------------


def zero_one_error(scores, true_class):
    """0/1 error of a score vector: 1 iff the true class does not win strictly.

    Ties count as errors.  Vectorized over leading axes of ``scores``."""
    s = np.asarray(scores, dtype=float)
    n_cl = s.shape[-1]
    if n_cl < 2:
        raise DomainError("need at least 2 classes")
    if not 0 <= true_class < n_cl:
        raise DomainError("invalid class index")
    others = np.delete(s, true_class, axis=-1)
    err = (s[..., true_class] <= others.max(axis=-1)).astype(float)
    return err if err.ndim else float(err)


class ZeroOneLoss(Loss):
    """Multiclass classification error; ties count against the true class."""

    name = "zero_one"
    convexity_tag = "zero_one"
    is_convex = False
    smoothness_order = 0

    def __init__(self, true_class=0, n_classes=2):
        if not 0 <= true_class < n_classes:
            raise DomainError("invalid class index")
        self.true_class = int(true_class)
        self.arity = int(n_classes)
        self.params = {"true_class": self.true_class, "n_classes": self.arity}

    def __call__(self, pred):
        return zero_one_error(pred, self.true_class)


# ---------------------------------------------------------------------------
# operations on losses
# ---------------------------------------------------------------------------


def eval_loss(loss, pred):
    """Evaluate ``loss`` at a prediction; same as calling the loss object."""
    return loss(pred)


def loss_derivatives(loss, point, max_order=2):
    """Derivative tensors of ``loss`` at ``point`` (see Loss.derivatives)."""
    return loss.derivatives(point, max_order)


def convexity_at(loss, point, tol=1e-9):
    """Local curvature class from the Hessian eigenvalues at ``point``."""
    h = loss.hessian(point)
    eig = np.linalg.eigvalsh(h.reshape(loss.arity, loss.arity))
    if np.all(eig > tol):
        return "locally_convex"
    if np.all(eig < -tol):
        return "locally_concave"
    return "indefinite"


# ---------------------------------------------------------------------------
# catalog access by name + JSON parameters
# ---------------------------------------------------------------------------

_REGISTRY = {
    "squared": SquaredLoss,
    "absolute": AbsoluteLoss,
    "huber": HuberLoss,
    "cross_entropy": CrossEntropyLoss,
    "cross_entropy_logits": CrossEntropyLogitsLoss,
    "brier": BrierLoss,
    "sigmoid": SigmoidLoss,
    "savage": SavageLoss,
    "tangent": TangentLoss,
    "spherical": SphericalLoss,
    "barron": BarronLoss,
    "student_t": StudentTLoss,
    "zero_one": ZeroOneLoss,
}

CONVEX_CATALOG = ("squared", "absolute", "huber", "cross_entropy", "cross_entropy_logits", "brier")
NONCONVEX_CATALOG = ("sigmoid", "savage", "tangent", "spherical", "barron", "student_t")


def make_loss(name, **params):
    if name not in _REGISTRY:
        raise KeyError(f"unknown loss {name!r}; known: {sorted(_REGISTRY)}")
    return _REGISTRY[name](**params)


def loss_from_descriptor(desc):
    """Build a loss from a JSON-style dict {"loss": name, ...params}."""
    d = dict(desc)
    name = d.pop("loss")
    d.pop("clamp", None)
    return make_loss(name, **d)
