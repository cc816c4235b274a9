"""
Checking the drift argument numerically
=======================================

Two cGA offspring differ in one-count by ``Z``, a sum of independent
``{-1, 0, +1}`` variables. Its exact law is cheap for small ``n``, which
lets us check the lower bounds on ``Pr(Z = 0)`` and ``E|Z|`` directly, then
look at the one-step drift of the potential ``n - sum(p)``.
"""

# %%
import math

import numpy as np

from noisyevo import RandomStream
from noisyevo.checks import format_report, run_theory_suite
from noisyevo.theory import (TrinomialSpec, abs_expectation_lower_bound, central_moment_g,
                             empirical_drift, z_abs_expectation, z_distribution_exact,
                             z_zero_prob, zero_prob_lower_bound)

p = [0.5, 0.7, 0.9, 0.6]
spec = TrinomialSpec.from_frequencies(p)
print("Pr(Z = k), k = -4..4:", np.round(z_distribution_exact(spec), 4))
print(f"Pr(Z = 0) = {z_zero_prob(spec):.4f} >= {zero_prob_lower_bound(len(p)):.4f}")
print(f"E|Z|      = {z_abs_expectation(spec):.4f} >= "
      f"{abs_expectation_lower_bound(p, 0.5):.4f}")

# %%
# E|sum of k fair signs| grows like sqrt(2k/pi).
for k in (1, 2, 5, 10, 40):
    print(f"g({k}) = {central_moment_g(k):.4f}, sqrt(2k/pi) = {math.sqrt(2 * k / math.pi):.4f}")

# %%
# Expected progress of one cGA step from the uniform start shrinks with noise.
rng = RandomStream(3)
for sigma2 in (0.0, 1.0, 4.0, 16.0, 64.0):
    d = empirical_drift(np.full(16, 0.5), 32, sigma2, 50_000, rng)
    print(f"sigma2={sigma2:>5g}: drift {d.mean:.5f} +- {d.stderr:.5f}")

# %%
# The same checks the ``verify-theory`` command runs.
print()
print(format_report(run_theory_suite(seed=0)))
