"""
Noisy OneMax and the cost of a wrong comparison
===============================================

Every evaluation of a bit string returns its number of ones plus fresh
Gaussian noise. Two strings whose true values differ by ``ell`` are ranked
the wrong way round with probability ``Phi(ell)``; this script prints that
probability and the Gaussian tail estimates behind it.
"""

# %%
# A handful of noisy evaluations of the same string.
import numpy as np

from noisyevo import (EvalCounter, GaussianNoise, RandomStream, bitstring,
                      gaussian_lower_tail, gaussian_tail_upper_bound,
                      misclassify_prob, noisy_eval)
from noisyevo.theory import monte_carlo_misclassify

rng = RandomStream(1)
x = bitstring("1111100000")
counter = EvalCounter()
values = [noisy_eval(x, GaussianNoise(4.0), rng, counter) for _ in range(8)]
print("true value 5, noisy draws:", np.round(values, 2), f"({counter.count} evaluations)")

# %%
# Misclassification probability against distance, for three noise levels.
# A Monte Carlo estimate is shown next to the closed form for sigma2 = 4.
print(f"\n{'ell':>4} {'s2=1':>10} {'s2=4':>10} {'MC s2=4':>10} {'s2=25':>10}")
for ell in (0, 1, 2, 4, 8, 16):
    mc = monte_carlo_misclassify(ell, 4.0, 200_000, rng).mean
    row = [misclassify_prob(ell, s2) for s2 in (1.0, 4.0)] + [mc, misclassify_prob(ell, 25.0)]
    print(f"{ell:>4} " + " ".join(f"{v:>10.5f}" for v in row))

# %%
# The lower Gaussian tail and its simple exponential upper bound.
print(f"\n{'t':>5} {'tail':>12} {'bound':>12}")
for t in (0.5, 1.0, 2.0, 4.0):
    print(f"{t:>5} {gaussian_lower_tail(t, 1.0):>12.4e} {gaussian_tail_upper_bound(t, 1.0):>12.4e}")
