#!/usr/bin/env python3
"""Multiclass 0/1 error through the margin vector.

  1. the margin transform and how its sign pattern encodes correctness;
  2. exact error curves for Gaussian score models: strictly monotone in the
     direction given by the expected-margin sign, from K = 1 on;
  3. the closed-form multivariate rate/prefactor against the independent
     product oracle, plus the tilt-positivity failure under correlation;
  4. the two published cone conditions, side by side.

Run:  python3 demos/04_multivariate_margins.py
"""

import numpy as np
from scipy import stats

from ensemblelab import (
    MarginModel,
    MultivariateGaussian,
    TauSignError,
    assumption_classify,
    cone_condition,
    error_curve,
    gaussian_multivariate_ld,
    margin_transform,
)

print("=" * 72)
print(" 1. Margins: true-class score minus every wrong score")
print("=" * 72)
for scores, t in (([0.7, 0.3], 0), ([0.2, 0.5, 0.3], 0), ([0.4, 0.5, 0.1], 0)):
    m = margin_transform(scores, t)
    print(f"   scores {scores} (true class {t}) -> margins {np.round(m, 3)}")

print()
print("=" * 72)
print(" 2. Exact Gaussian error curves, both directions")
print("=" * 72)
S = np.array([[1.0, 0.5], [0.5, 1.0]])  # margin variance 1
for mean, tag in (([0.75, 0.25], "correct"), ([0.25, 0.75], "completely incorrect")):
    model = MarginModel(MultivariateGaussian(mean, S), 0)
    rep = assumption_classify(model)
    cur = error_curve(model, 8, method="exact_gaussian")
    print(f"   scores N({mean}): classified {rep.verdict}")
    print(f"     error(K) = {np.round(cur.value, 5)}")
model3 = MarginModel(MultivariateGaussian([0.55, 0.25, 0.20], 0.04 * np.eye(3)), 0)
cur3 = error_curve(model3, 8, method="exact_gaussian")
print(f"   3-class model, margins {np.round(model3.expected_margins(), 3)}:")
print(f"     error(K) = {np.round(cur3.value, 5)} (bivariate orthant, closed form)")

print()
print("=" * 72)
print(" 3. Multivariate rate and prefactor")
print("=" * 72)
for n in (50, 200):
    ld, asym = gaussian_multivariate_ld([0, 0], np.eye(2), [1, 1], n)
    exact = stats.norm.sf(np.sqrt(n)) ** 2
    print(f"   n={n:4d}: tau = {ld.tau}, rate = {ld.rate}, "
          f"asym/exact = {asym / exact:.4f}")
try:
    gaussian_multivariate_ld([0, 0], [[1, 0.9], [0.9, 1]], [1, 0.05], 50)
except TauSignError as e:
    print(f"   correlated case: {e}")

print()
print("=" * 72)
print(" 4. Cone conditions for tilt positivity")
print("=" * 72)
for eps, lmin, lmax, label in (
    (np.array([1.0, 1.0]) / np.sqrt(2), 0.9, 1.0, "2-d, nearly isotropic"),
    (np.ones(8) / np.sqrt(8), 0.5, 1.0, "8-d, spectrum ratio 1/2"),
):
    c = cone_condition(eps, lmin, lmax)
    print(f"   {label}: min ratio {c.min_ratio:.4f}, "
          f"appendix rhs {c.appendix_rhs:.4f} -> {c.appendix_version}; "
          f"main-text rhs {c.main_text_rhs:.4f} -> {c.main_text_version}")
