"""Exact and Monte Carlo checks for the cGA analysis.

Two offspring sampled from frequencies ``p`` differ in one-count by
``Z = Z_1 + ... + Z_n`` where ``Z_i`` is ``+1`` or ``-1`` each with
probability ``q_i = p_i (1 - p_i)``. The exact distribution of ``Z`` is built
by direct convolution (small ``n`` only) and used to check the lower bounds
on ``Pr(Z = 0)`` and ``E|Z|`` that drive the drift argument.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional

import numpy as np

from .bitstring import RandomStream

EXACT_MAX_N = 25
CONDITIONAL_MAX_N = 20
G_MAX_K = 60


@dataclass(frozen=True)
class TrinomialSpec:
    q: tuple[float, ...]

    def __post_init__(self):
        if not self.q:
            raise ValueError("need at least one coordinate")
        if any(not 0.0 <= v <= 0.25 for v in self.q):
            raise ValueError("each q_i = p_i (1 - p_i) lies in [0, 1/4]")

    @classmethod
    def from_frequencies(cls, p: Iterable[float]) -> "TrinomialSpec":
        p = [float(v) for v in p]
        if any(not 0.0 <= v <= 1.0 for v in p):
            raise ValueError("frequencies must lie in [0, 1]")
        return cls(tuple(v * (1.0 - v) for v in p))

    @property
    def n(self) -> int:
        return len(self.q)


def _convolve_exact(pmf: list[float], kernel: list[float]) -> list[float]:
    out = []
    for k in range(len(pmf) + len(kernel) - 1):
        terms = [pmf[j] * kernel[k - j]
                 for j in range(max(0, k - len(kernel) + 1), min(k, len(pmf) - 1) + 1)]
        out.append(math.fsum(terms))
    return out


def _check_size(spec: TrinomialSpec, cap: int) -> None:
    if spec.n > cap:
        raise ValueError(f"exact computation capped at n = {cap}, got {spec.n}")


def z_distribution_exact(spec: TrinomialSpec) -> np.ndarray:
    """PMF of ``Z`` on ``-n..n``; entry ``k + n`` holds ``Pr(Z = k)``."""
    _check_size(spec, EXACT_MAX_N)
    pmf = [1.0]
    for q in spec.q:
        pmf = _convolve_exact(pmf, [q, 1.0 - 2.0 * q, q])
    return np.array(pmf)


def z_zero_prob(spec: TrinomialSpec) -> float:
    return float(z_distribution_exact(spec)[spec.n])


def z_abs_expectation(spec: TrinomialSpec) -> float:
    pmf = z_distribution_exact(spec)
    ks = np.abs(np.arange(-spec.n, spec.n + 1))
    return math.fsum((ks * pmf).tolist())


def nonzero_count_distribution(spec: TrinomialSpec) -> np.ndarray:
    """Poisson-binomial PMF of how many ``Z_i`` are nonzero (success ``2 q_i``)."""
    _check_size(spec, EXACT_MAX_N)
    pmf = [1.0]
    for q in spec.q:
        pmf = _convolve_exact(pmf, [1.0 - 2.0 * q, 2.0 * q])
    return np.array(pmf)


def nonzero_count_even_prob(spec: TrinomialSpec) -> float:
    return math.fsum(nonzero_count_distribution(spec)[::2].tolist())


def zero_prob_lower_bound(n: int) -> float:
    return 1.0 / (4.0 * math.sqrt(n))


def abs_expectation_lower_bound(p: Iterable[float], a: float) -> float:
    p = list(p)
    return a * math.sqrt(2.0 / len(p)) * (len(p) - math.fsum(p))


def central_moment_g(k: int) -> float:
    """``E|S_k|`` for a sum of ``k`` fair signs, in closed form.

    ``g(k) = 2c * C(2c, c) / 4^c`` with ``c = ceil(k/2)``.
    """
    if k < 0 or k > G_MAX_K:
        raise ValueError(f"k must lie in [0, {G_MAX_K}], got {k}")
    c = (k + 1) // 2
    return 2 * c * math.comb(2 * c, c) / 4.0 ** c


def conditional_abs_expectation(spec: TrinomialSpec, subset: Iterable[int]) -> float:
    """``E(|Z| | exactly the coordinates in subset are nonzero)``.

    Given that event, each selected ``Z_i`` is ``+1`` or ``-1`` with
    probability ``q_i / (2 q_i) = 1/2`` and the rest are zero.
    """
    _check_size(spec, CONDITIONAL_MAX_N)
    chosen = set(subset)
    if any(not 0 <= i < spec.n for i in chosen):
        raise ValueError("subset index out of range")
    if any(spec.q[i] == 0.0 for i in chosen):
        raise ValueError("conditioning on a coordinate that is never nonzero")
    pmf = [1.0]
    for i, q in enumerate(spec.q):
        if i in chosen:
            pmf = _convolve_exact(pmf, [q / (2 * q), 0.0, q / (2 * q)])
        else:
            pmf = _convolve_exact(pmf, [0.0, 1.0, 0.0])
    ks = [abs(k) for k in range(-spec.n, spec.n + 1)]
    return math.fsum(k * v for k, v in zip(ks, pmf))


def conditional_abs_expectation_check(sizes: Iterable[int], spec: TrinomialSpec,
                                      tol: float = 1e-9, max_subsets: int = 64) -> bool:
    """Check ``E(|Z| | E_S) = g(|S|)`` for subsets of every requested size.

    All subsets are tried when there are at most ``max_subsets`` of them,
    otherwise ``max_subsets`` evenly spread ones in lexicographic order.
    """
    support = [i for i, q in enumerate(spec.q) if q > 0]
    for k in sizes:
        if k > len(support):
            raise ValueError(f"cannot pick {k} nonzero coordinates out of {len(support)}")
        total = math.comb(len(support), k)
        stride = max(1, total // max_subsets)
        for j, subset in enumerate(itertools.combinations(support, k)):
            if j % stride:
                continue
            if abs(conditional_abs_expectation(spec, subset) - central_moment_g(k)) > tol:
                return False
    return True


class Estimate(NamedTuple):
    mean: float
    stderr: float


class DriftEstimate(NamedTuple):
    mean: float
    stderr: float
    hypothesis_ok: bool


def potential(p: Iterable[float]) -> float:
    p = np.asarray(list(p) if not isinstance(p, np.ndarray) else p, dtype=float)
    return float(p.size - p.sum())


def empirical_drift(freqs, K: int, sigma2: float, trials: int, rng: RandomStream,
                    floor: Optional[float] = None) -> DriftEstimate:
    """Monte Carlo mean of ``X_t - X_{t+1}`` for one cGA step from ``freqs``.

    ``X = n - sum(p)``. The step is simulated here directly, independently of
    the optimizer code. ``floor`` is the constant ``a`` in the requirement
    ``p_i >= a``; when it is violated (or, without ``floor``, when some
    ``p_i = 0``) the result is flagged and a warning issued, since the sign
    of the drift is then not guaranteed.
    """
    p = np.asarray(getattr(freqs, "p", freqs), dtype=float)
    if trials < 1000:
        raise ValueError("use at least 1000 trials")
    if K < 1:
        raise ValueError("K must be >= 1")
    ok = bool(p.min() >= floor) if floor is not None else bool(p.min() > 0)
    if not ok:
        warnings.warn("some frequency is below the drift floor; drift sign not guaranteed",
                      RuntimeWarning, stacklevel=2)
    n = p.size
    x = rng.random((trials, n)) < p
    y = rng.random((trials, n)) < p
    fx = x.sum(axis=1).astype(float)
    fy = y.sum(axis=1).astype(float)
    if sigma2 > 0:
        sd = math.sqrt(sigma2)
        fx += sd * rng.standard_normal(trials)
        fy += sd * rng.standard_normal(trials)
    swap = (fx < fy)[:, None]
    win = np.where(swap, y, x).astype(float)
    lose = np.where(swap, x, y).astype(float)
    new_p = np.clip(p + (win - lose) / K, 0.0, 1.0)
    decrease = new_p.sum(axis=1) - p.sum()
    return DriftEstimate(float(decrease.mean()),
                         float(decrease.std(ddof=1) / math.sqrt(trials)), ok)


def monte_carlo_misclassify(ell: float, sigma2: float, trials: int,
                            rng: RandomStream) -> Estimate:
    """Frequency of ``ell + Z1 - Z2 < 0`` for independent ``N(0, sigma2)`` draws."""
    if trials < 10_000:
        raise ValueError("use at least 10^4 trials")
    sd = math.sqrt(sigma2)
    z1 = rng.standard_normal(trials)
    z2 = rng.standard_normal(trials)
    hits = np.count_nonzero(ell + sd * (z1 - z2) < 0)
    f = hits / trials
    return Estimate(f, math.sqrt(f * (1 - f) / trials))


def monte_carlo_lower_tail(t: float, sigma2: float, trials: int,
                           rng: RandomStream) -> Estimate:
    """Frequency of ``Z < -t`` for ``Z ~ N(0, sigma2)``."""
    z = math.sqrt(sigma2) * rng.standard_normal(trials)
    f = np.count_nonzero(z < -t) / trials
    return Estimate(f, math.sqrt(f * (1 - f) / trials))


def sampled_z_histogram(freqs, samples: int, rng: RandomStream,
                        batch: int = 100_000) -> np.ndarray:
    """Counts of ``|x|_1 - |y|_1`` over ``-n..n`` for offspring pairs drawn
    with the cGA sampler from ``freqs`` (a ``FrequencyVector``)."""
    from .optimizers.cga import sample_from_frequencies

    n = freqs.n
    counts = np.zeros(2 * n + 1, dtype=np.int64)
    done = 0
    while done < samples:
        b = min(batch, samples - done)
        x = sample_from_frequencies(freqs, rng, size=b)
        y = sample_from_frequencies(freqs, rng, size=b)
        diff = x.sum(axis=1) - y.sum(axis=1)
        counts += np.bincount(diff + n, minlength=2 * n + 1)
        done += b
    return counts
