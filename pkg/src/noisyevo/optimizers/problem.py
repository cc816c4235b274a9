from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Any, Optional

import numpy as np

from ..bitstring import EvalCounter, RandomStream
from ..noise import GaussianNoise, noisy_eval


class BudgetExhausted(Exception):
    """Raised when the next step would need more evaluations than remain."""


@dataclass
class BudgetedProblem:
    """Noisy OneMax of size ``n`` with a cap on noisy evaluations.

    ``rng`` and ``counter`` belong to one run. :meth:`limited` returns a view
    with a tighter cap that shares both, which is how phases of the
    noise-oblivious scheme draw from a single global budget.
    """

    n: int
    noise: GaussianNoise
    budget: int
    rng: RandomStream
    counter: EvalCounter = field(default_factory=EvalCounter)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"problem size must be positive, got {self.n}")
        if self.budget < 1:
            raise ValueError(f"budget must be >= 1, got {self.budget}")

    @classmethod
    def create(cls, n: int, sigma2: float, budget: int, seed: int) -> "BudgetedProblem":
        return cls(n, GaussianNoise(sigma2), int(budget), RandomStream(seed))

    @property
    def remaining(self) -> int:
        return self.budget - self.counter.count

    def reserve(self, k: int) -> None:
        if self.counter.count + k > self.budget:
            raise BudgetExhausted(f"{k} evaluations requested, {self.remaining} left")

    def limited(self, budget: int) -> "BudgetedProblem":
        return replace(self, budget=min(int(budget), self.budget))

    def evaluate(self, x: np.ndarray) -> float:
        return noisy_eval(x, self.noise, self.rng, self.counter)

    def evaluate_ones(self, ones: np.ndarray) -> np.ndarray:
        """Noisy values for many strings given their true one-counts."""
        ones = np.asarray(ones, dtype=float)
        self.counter.increment(ones.size)
        if self.noise.variance > 0:
            return ones + self.noise.std * self.rng.standard_normal(ones.shape)
        return ones.copy()


@dataclass
class OptimizerOutcome:
    hit: bool
    evals_at_hit: Optional[int]
    evals_total: int
    iterations: int
    params_used: dict[str, Any]
    min_frequency: Optional[float] = None

    def __post_init__(self):
        if self.hit and (self.evals_at_hit is None or self.evals_at_hit > self.evals_total):
            raise ValueError("a hit needs evals_at_hit <= evals_total")
        if not self.hit and self.evals_at_hit is not None:
            raise ValueError("evals_at_hit is undefined for a miss")
