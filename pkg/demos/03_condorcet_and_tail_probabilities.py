#!/usr/bin/env python3
"""Why the 0/1 error resists: tail probabilities need not fall monotonically.

  1. the binomial staircase: majority voting with p = 0.35 against the 1/2
     threshold is non-monotone forever (odd sizes improve, evens spoil it);
  2. restoring an atom exactly at the threshold makes the tail sequence
     eventually strictly decreasing, as the sufficient conditions predict;
  3. the tilt/rate/prefactor machinery: first-order tail approximations
     track the exact dynamic-programming values within a few percent;
  4. heavy tails break the intuition outright: one-sided stable means GROW,
     Cauchy means never change.

Run:  python3 demos/03_condorcet_and_tail_probabilities.py
"""

import numpy as np

from ensemblelab import (
    bernoulli_sequence,
    classify_sequence,
    eventual_decrease_verdict,
    lattice_tail_sequence,
    mass_restoration_summary,
    petrov_asymptote,
    solve_tilt,
    stable_counterexample,
)
from ensemblelab.distributions import Bernoulli

print("=" * 72)
print(" 1. Binomial staircase: P(vote mean >= 1/2), votes ~ Bernoulli(0.35)")
print("=" * 72)
seq = bernoulli_sequence(0.35, 0.15, 201)
print("   n :", "  ".join(f"{n}" for n in seq.n[:8]))
print("   p :", "  ".join(f"{v:.4f}" for v in seq.values[:8]))
verdict, _ = classify_sequence(seq.values)
odd_down = bool(np.all(np.diff(seq.values[0::2]) < 0))
print(f"   verdict over n <= 201: {verdict}; odd subsequence strictly decreasing: {odd_down}")
v = eventual_decrease_verdict(Bernoulli(0.35), 0.15)
print(f"   sufficient conditions: {v.verdict} -> {v.violated}")

print()
print("=" * 72)
print(" 2. Put mass on the threshold and monotonicity returns")
print("=" * 72)
summ = mass_restoration_summary(0.55, 0.1, nmax=2000)
lat = summ["lattice"]
print(f"   three-point law: P(0) = {lat.mass_at(0.0):.4f}, "
      f"P(0.65) = {lat.mass_at(0.65):.4f}, P(1) = {lat.mass_at(1.0):.4f}")
print(f"   effective mean {summ['effective_mean']:.4f} "
      f"(mean preserved: {summ['mean_preserved']})")
print(f"   sufficient conditions: {summ['verdict'].verdict}")
k0 = summ["sequence"].first_strict_decrease_onset()
print(f"   exact p_n strictly decreasing from n = {k0} through n = 2000")

print()
print("=" * 72)
print(" 3. Tilted-measure asymptotics vs exact convolution")
print("=" * 72)
sol = solve_tilt(lat, 0.65)
print(f"   tilt h = {sol.h:.6f}, rate = {sol.rate:.6f}, per-step decay rho = {sol.rho:.6f}")
dp = lattice_tail_sequence(lat, 0.65, 1000)
print("      n        exact          asymptote      ratio")
for n in (50, 100, 200, 400, 800, 1000):
    a = petrov_asymptote(sol, n, "lattice_geq")
    print(f"   {n:5d}   {dp.values[n - 1]:.6e}   {a:.6e}   {a / dp.values[n - 1]:.4f}")

print()
print("=" * 72)
print(" 4. Stable families: growth, constancy, decay")
print("=" * 72)
for fam in ("levy", "cauchy", "gaussian"):
    s = stable_counterexample(fam, 1.0, 6)
    verdict, _ = classify_sequence(s.values, tol=1e-15)
    print(f"   {fam:9s} p_1..p_6 = {np.round(s.values, 6)}  -> {verdict}")
