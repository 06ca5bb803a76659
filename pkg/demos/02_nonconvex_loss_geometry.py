#!/usr/bin/env python3
"""Nonconvex losses: the Hessian at the limit decides the eventual direction.

  1. the nonconvex catalog and where each loss flips from convex to concave
     (sigmoid and Savage at 1/2; the spherical score at (1+sqrt(17))/8;
      the robust regression family where the squared error crosses c);
  2. the fourth-order expansion E[L] ~ L(mu) + c1/K + alpha/K^2 against the
     exact Gauss-Hermite curve, including the K^{-5/2} remainder scaling;
  3. good ensembles keep getting better, bad ones keep getting worse:
     the same sigmoid loss with the limit on either side of the flip.

Run:  python3 demos/02_nonconvex_loss_geometry.py
"""

import numpy as np

from ensemblelab import (
    Gaussian,
    convexity_at,
    delta_expansion,
    delta_predict,
    exact_curve,
    hessian_direction,
    iid,
    make_loss,
    monotonicity_report,
)

print("=" * 72)
print(" 1. Where the nonconvex catalog flips (locally convex -> concave)")
print("=" * 72)
probes = {
    "sigmoid": ([0.3, 0.49], [0.51, 0.8]),
    "savage": ([0.3, 0.49], [0.51, 0.8]),
    "spherical": ([0.3, 0.62], [0.66, 0.9]),
    "tangent": ([-0.3, 0.4], [3.0, -3.0]),
    "barron": ([1.0, 3.1], [3.2, 6.0]),
    "student_t": ([1.0, 3.1], [3.2, 6.0]),
}
for name, (convex_pts, concave_pts) in probes.items():
    loss = make_loss(name)
    cx = [convexity_at(loss, p) for p in convex_pts]
    cc = [convexity_at(loss, p) for p in concave_pts]
    assert set(cx) == {"locally_convex"} and set(cc) == {"locally_concave"}
    print(f"   {name:10s} convex at {convex_pts}, concave at {concave_pts}")
print("   (barron/student use cutoff c = 10: the flip sits at |error| = sqrt(10) ~ 3.16)")

print()
print("=" * 72)
print(" 2. Fourth-order expansion vs exact quadrature (sigmoid, N(0.3, 0.01))")
print("=" * 72)
sig = make_loss("sigmoid", label=0, s=0.1)
base = Gaussian(0.3, 0.01)
exp = delta_expansion(sig, base)
print(f"   L(mu) = {exp.L_mu:.9f}   c1 = {exp.c1:.3e}   alpha = {exp.alpha:.3e}")
quad = exact_curve(sig, iid(base, 200), 200, quad_tol=1e-12)
print("    K     expansion        exact          |residual|*K^2.5")
for K in (10, 20, 50, 100, 200):
    pred = delta_predict(exp, K)
    q = quad.value[K - 1]
    print(f"   {K:4d}  {pred:.10f}  {q:.10f}   {abs(pred - q) * K**2.5:.3e}")
Ks = np.arange(10, 201)
scaled = np.abs(delta_predict(exp, Ks) - quad.value[9:]) * Ks**2.5
print(f"   scaled remainder max/min over K in [10, 200]: {scaled.max() / scaled.min():.3f}")

print()
print("=" * 72)
print(" 3. The direction verdict, both ways")
print("=" * 72)
for mu in (0.3, 0.7):
    verdict = hessian_direction(sig, mu)
    cur = exact_curve(sig, iid(Gaussian(mu, 0.01), 50), 50)
    rep = monotonicity_report(cur)
    print(f"   limit prediction {mu}: hessian says {verdict:17s} "
          f"-> exact curve is {rep.verdict} from K0 = {rep.K0}")
