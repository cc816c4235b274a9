"""Battery of numerical checks behind ``noisyevo verify-theory``."""

from __future__ import annotations

import math
import time
from typing import Callable, NamedTuple

import numpy as np
from scipy import stats

from .bitstring import RandomStream
from .noise import (MisclassifyCurve, gaussian_lower_tail, gaussian_tail_asymptotic,
                    gaussian_tail_upper_bound, misclassify_prob)
from .optimizers.cga import FrequencyVector
from .theory import (TrinomialSpec, abs_expectation_lower_bound, central_moment_g,
                     conditional_abs_expectation_check, empirical_drift,
                     monte_carlo_lower_tail, monte_carlo_misclassify,
                     nonzero_count_even_prob, sampled_z_histogram,
                     z_abs_expectation, z_distribution_exact, z_zero_prob,
                     zero_prob_lower_bound)

TAIL_T = np.linspace(0.1, 10.0, 20)
TAIL_SIGMA = np.linspace(0.5, 10.0, 20)
# (t index, sigma index) pairs with non-negligible tail mass
TAIL_SPOTS = [(0, 0), (2, 0), (3, 2), (5, 3), (6, 6), (9, 5),
              (10, 12), (12, 19), (15, 10), (19, 19)]


class CheckResult(NamedTuple):
    name: str
    passed: bool
    detail: str
    seconds: float


def phi_monotone(sigma2s=(1.0, 10.0, 100.0), max_ell=200):
    for s2 in sigma2s:
        curve = MisclassifyCurve.compute(s2, max_ell)
        if not curve.is_strictly_decreasing() or curve.values[0] != 0.5:
            return False, f"not strictly decreasing at sigma2={s2}"
    return True, f"sigma2 in {list(sigma2s)}, ell 0..{max_ell}"


def phi_upper_bound(sigma2s=(0.25, 1.0, 10.0, 100.0), max_ell=200):
    for s2 in sigma2s:
        bound = 0.5 * math.exp(-1.0 / (4.0 * s2))
        worst = max(misclassify_prob(l, s2) for l in range(1, max_ell + 1))
        if worst > bound:
            return False, f"sigma2={s2}: {worst} > {bound}"
    return True, "Phi(ell) <= exp(-1/(4 sigma2))/2 for ell >= 1"


def tail_bound_grid():
    for t in TAIL_T:
        for s in TAIL_SIGMA:
            if gaussian_lower_tail(t, s * s) > gaussian_tail_upper_bound(t, s * s):
                return False, f"bound violated at t={t}, sigma={s}"
    return True, f"{TAIL_T.size}x{TAIL_SIGMA.size} grid"


def tail_asymptotic(ts=(5.0, 6.0, 7.0)):
    ratios = [gaussian_lower_tail(t, 1.0) / gaussian_tail_asymptotic(t, 1.0) for t in ts]
    ok = all(0.9 <= r <= 1.0 for r in ratios)
    return ok, "ratios " + ", ".join(f"{r:.4f}" for r in ratios)


def _z_score(estimate, exact, trials):
    se = math.sqrt(exact * (1 - exact) / trials)
    return abs(estimate - exact) / se


def tail_monte_carlo(rng, trials=10 ** 6):
    worst = 0.0
    for i, j in TAIL_SPOTS:
        t, s = TAIL_T[i], TAIL_SIGMA[j]
        exact = gaussian_lower_tail(t, s * s)
        est = monte_carlo_lower_tail(t, s * s, trials, rng).mean
        worst = max(worst, _z_score(est, exact, trials))
    return worst <= 4.0, f"max |z| = {worst:.2f} over {len(TAIL_SPOTS)} points"


def phi_monte_carlo(rng, trials=10 ** 6, cases=((1, 1.0), (2, 1.0), (3, 4.0), (5, 10.0))):
    worst = 0.0
    for ell, s2 in cases:
        exact = misclassify_prob(ell, s2)
        est = monte_carlo_misclassify(ell, s2, trials, rng).mean
        worst = max(worst, _z_score(est, exact, trials))
    return worst <= 4.0, f"max |z| = {worst:.2f}"


def random_frequency_vectors(rng, count=500, n_range=(2, 12), a=0.3):
    for _ in range(count):
        n = int(rng.integers(n_range[0], n_range[1] + 1))
        yield rng.uniform(a, 1.0, n)


def z_bounds(rng, count=500, a=0.3, tol=1e-9):
    bad = []
    for p in random_frequency_vectors(rng, count, a=a):
        spec = TrinomialSpec.from_frequencies(p)
        if z_zero_prob(spec) < zero_prob_lower_bound(p.size) - tol:
            bad.append("Pr(Z=0)")
        if z_abs_expectation(spec) < abs_expectation_lower_bound(p, a) - tol:
            bad.append("E|Z|")
        if nonzero_count_even_prob(spec) < 0.5 - tol:
            bad.append("parity")
    return not bad, f"{count} vectors" + (f", failures: {sorted(set(bad))}" if bad else "")


def g_identity(rng, max_k=12, tol=1e-9):
    spec = TrinomialSpec.from_frequencies(rng.uniform(0.3, 0.99, max_k))
    ok = conditional_abs_expectation_check(range(max_k + 1), spec, tol=tol)
    ok = ok and all(central_moment_g(k) >= math.sqrt(k / 2) for k in range(61))
    return ok, f"k = 0..{max_k}; g(k) >= sqrt(k/2) for k <= 60"


def drift_sign(rng, trials=10 ** 5):
    freqs = FrequencyVector.uniform(16, 32)
    d0 = empirical_drift(freqs, 32, 0.0, trials, rng)
    d4 = empirical_drift(freqs, 32, 4.0, trials, rng)
    ok = d0.mean > 5 * d0.stderr and d4.mean > 5 * d4.stderr and d4.mean < d0.mean
    return ok, f"sigma2=0: {d0.mean:.5f}+-{d0.stderr:.5f}, sigma2=4: {d4.mean:.5f}+-{d4.stderr:.5f}"


def z_histogram(rng, samples=10 ** 6, alpha=1e-3):
    K = 10
    freqs = FrequencyVector(K, np.array([-8, -4, 0, 2, 4, 6, 8, 10]), K)
    spec = TrinomialSpec.from_frequencies(freqs.p)
    exact = z_distribution_exact(spec)
    observed = sampled_z_histogram(freqs, samples, rng)
    expected = exact * samples
    # pool cells with tiny expectation into their neighbours
    keep = expected >= 5
    obs = np.append(observed[keep], observed[~keep].sum())
    exp = np.append(expected[keep], expected[~keep].sum())
    if exp[-1] < 5:
        obs[-2] += obs[-1]
        exp[-2] += exp[-1]
        obs, exp = obs[:-1], exp[:-1]
    pvalue = stats.chisquare(obs, exp * obs.sum() / exp.sum()).pvalue
    return pvalue >= alpha, f"chi-square p = {pvalue:.3g}"


def run_theory_suite(seed: int = 0, log: Callable[[str], None] | None = None) -> list[CheckResult]:
    root = RandomStream(seed)
    checks = [
        ("misclassify-monotone", lambda r: phi_monotone()),
        ("misclassify-upper-bound", lambda r: phi_upper_bound()),
        ("tail-upper-bound-grid", lambda r: tail_bound_grid()),
        ("tail-asymptotic", lambda r: tail_asymptotic()),
        ("tail-monte-carlo", tail_monte_carlo),
        ("misclassify-monte-carlo", phi_monte_carlo),
        ("z-bounds-and-parity", z_bounds),
        ("g-conditional-identity", g_identity),
        ("drift-sign", drift_sign),
        ("z-histogram-vs-exact", z_histogram),
    ]
    results = []
    for i, (name, fn) in enumerate(checks):
        start = time.perf_counter()
        passed, detail = fn(root.child(i))
        results.append(CheckResult(name, bool(passed), detail, time.perf_counter() - start))
        if log is not None:
            log(format_result(results[-1]))
    return results


def format_result(r: CheckResult) -> str:
    return f"{r.name:<26} {'PASS' if r.passed else 'FAIL':<5} {r.seconds:7.2f}s  {r.detail}"


def format_report(results: list[CheckResult]) -> str:
    lines = [f"{'check':<26} {'status':<5} {'time':>8}  detail"]
    lines += [format_result(r) for r in results]
    return "\n".join(lines) + "\n"
