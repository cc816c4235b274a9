"""Noisy OneMax and the Gaussian tail quantities around it.

``f(x) = |x|_1 + Z`` with ``Z ~ N(0, sigma^2)`` drawn afresh on every call.
Two noisy comparisons of strings whose true values differ by ``ell`` go wrong
with probability ``misclassify_prob(ell, sigma2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import log_ndtr

from .bitstring import EvalCounter, RandomStream, ones_count


@dataclass(frozen=True)
class GaussianNoise:
    variance: float = 0.0

    def __post_init__(self):
        if not self.variance >= 0 or math.isinf(self.variance):
            raise ValueError(f"noise variance must be finite and >= 0, got {self.variance}")

    @property
    def std(self) -> float:
        return math.sqrt(self.variance)


def noisy_eval(x: np.ndarray, noise: GaussianNoise, rng: RandomStream,
               counter: EvalCounter) -> float:
    """One call to the noisy fitness function; charges ``counter`` by one."""
    counter.increment()
    value = float(ones_count(x))
    if noise.variance > 0:
        value += noise.std * rng.standard_normal()
    return value


def _check_positive(name: str, value: float) -> None:
    if not value > 0:
        raise ValueError(f"{name} must be positive, got {value}")


def gaussian_lower_tail(t: float, sigma2: float) -> float:
    """``Pr(Z < -t)`` for ``Z ~ N(0, sigma2)``."""
    _check_positive("t", t)
    _check_positive("sigma2", sigma2)
    return 0.5 * math.erfc(t / math.sqrt(2.0 * sigma2))


def gaussian_tail_upper_bound(t: float, sigma2: float) -> float:
    _check_positive("t", t)
    _check_positive("sigma2", sigma2)
    return 0.5 * math.exp(-t * t / (2.0 * sigma2))


def gaussian_tail_asymptotic(t: float, sigma2: float) -> float:
    """Leading term of the Mills-ratio expansion of the lower tail."""
    _check_positive("t", t)
    _check_positive("sigma2", sigma2)
    sigma = math.sqrt(sigma2)
    return sigma / (math.sqrt(2.0 * math.pi) * t) * math.exp(-t * t / (2.0 * sigma2))


def misclassify_prob(ell: int, sigma2: float) -> float:
    """Probability that a noisy comparison ranks the worse of two strings first.

    ``ell`` is the (non-negative) difference of true one-counts. The difference
    of two independent noise draws is ``N(0, 2 sigma2)``, hence the ``2 sigma``
    in the erfc argument. Underflows to 0.0 deep in the tail; use
    :func:`log_misclassify_prob` there.
    """
    _check_positive("sigma2", sigma2)
    if ell < 0:
        raise ValueError("ell is a distance; pass |difference|")
    if ell == 0:
        return 0.5
    return 0.5 * math.erfc(ell / (2.0 * math.sqrt(sigma2)))


def log_misclassify_prob(ell: int, sigma2: float) -> float:
    """Natural log of :func:`misclassify_prob`, accurate far into the tail."""
    _check_positive("sigma2", sigma2)
    if ell < 0:
        raise ValueError("ell is a distance; pass |difference|")
    if ell == 0:
        return math.log(0.5)
    return float(log_ndtr(-ell / math.sqrt(2.0 * sigma2)))


@dataclass(frozen=True)
class MisclassifyCurve:
    """Misclassification probability for every distance ``0..n``."""

    sigma2: float
    values: np.ndarray
    log_values: np.ndarray

    @classmethod
    def compute(cls, sigma2: float, n: int) -> "MisclassifyCurve":
        ells = range(n + 1)
        values = np.array([misclassify_prob(l, sigma2) for l in ells])
        logs = np.array([log_misclassify_prob(l, sigma2) for l in ells])
        values.flags.writeable = False
        logs.flags.writeable = False
        return cls(sigma2, values, logs)

    def is_strictly_decreasing(self) -> bool:
        return bool(np.all(np.diff(self.log_values) < 0))
