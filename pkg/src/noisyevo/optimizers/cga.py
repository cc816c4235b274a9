"""Compact genetic algorithm.

Frequencies are stored exactly as integer half-steps around 1/2,
``p_i = 1/2 + h_i / (2K)``, so a ``+-1/K`` move is ``h_i += 2`` and no
rounding can creep in over millions of iterations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Optional

import numpy as np

from ..bitstring import RandomStream, _frozen
from .problem import BudgetExhausted, BudgetedProblem, OptimizerOutcome


@dataclass(frozen=True)
class FrequencyVector:
    K: int
    half_steps: np.ndarray
    bound: int

    def __post_init__(self):
        if self.K < 1:
            raise ValueError(f"K must be >= 1, got {self.K}")
        if not 0 <= self.bound <= self.K:
            raise ValueError("bound must lie in [0, K]")
        if np.any(np.abs(self.half_steps) > self.bound):
            raise ValueError("frequencies outside the allowed border")

    @classmethod
    def uniform(cls, n: int, K: int, margin: bool = False) -> "FrequencyVector":
        """All frequencies 1/2.

        With ``margin`` the frequencies are held inside ``[1/n, 1 - 1/n]``
        (rounded inwards to the ``1/(2K)`` grid); without it they may reach 0 or 1.
        """
        bound = margin_bound(n, K) if margin else K
        return cls(K, _frozen(np.zeros(n, dtype=np.int64)), bound)

    @classmethod
    def from_probabilities(cls, p, K: int, margin: bool = False) -> "FrequencyVector":
        p = np.asarray(p, dtype=float)
        h = (p - 0.5) * 2 * K
        steps = np.rint(h).astype(np.int64)
        if np.any(np.abs(h - steps) > 1e-9):
            raise ValueError("frequencies must sit on the 1/(2K) grid around 1/2")
        bound = margin_bound(p.size, K) if margin else K
        return cls(K, _frozen(steps), bound)

    @classmethod
    def _trusted(cls, K: int, half_steps: np.ndarray, bound: int) -> "FrequencyVector":
        # skips validation; callers guarantee |half_steps| <= bound
        obj = object.__new__(cls)
        object.__setattr__(obj, "K", K)
        object.__setattr__(obj, "half_steps", half_steps)
        object.__setattr__(obj, "bound", bound)
        return obj

    @property
    def n(self) -> int:
        return self.half_steps.shape[0]

    @cached_property
    def p(self) -> np.ndarray:
        return _frozen(0.5 + self.half_steps / (2.0 * self.K))

    def min(self) -> float:
        return 0.5 + int(self.half_steps.min()) / (2.0 * self.K)

    def potential(self) -> float:
        """``n - sum(p)``; zero exactly when every frequency is 1."""
        return self.n - float(self.p.sum())


def margin_bound(n: int, K: int) -> int:
    return max(0, math.floor(K * (1.0 - 2.0 / n)))


def sample_from_frequencies(freqs: FrequencyVector, rng: RandomStream,
                            size: Optional[int] = None) -> np.ndarray:
    """Draw from the product distribution; ``size`` gives a ``(size, n)`` batch."""
    p = freqs.p
    if size is None:
        return _frozen(rng.random(p.shape[0]) < p)
    return rng.random((size, p.shape[0])) < p


def cga_iteration(freqs: FrequencyVector, problem: BudgetedProblem):
    """One cGA step. Returns ``(new_freqs, (winner, loser))``.

    Both offspring are evaluated once each. ``x`` keeps the winner role unless
    its noisy value is strictly smaller than ``y``'s.
    """
    problem.reserve(2)
    x = sample_from_frequencies(freqs, problem.rng)
    y = sample_from_frequencies(freqs, problem.rng)
    if problem.evaluate(x) < problem.evaluate(y):
        x, y = y, x
    h = freqs.half_steps + 2 * (x.astype(np.int64) - y)
    np.minimum(h, freqs.bound, out=h)
    np.maximum(h, -freqs.bound, out=h)
    return FrequencyVector._trusted(freqs.K, _frozen(h), freqs.bound), (x, y)


def run_cga(problem: BudgetedProblem, K: int, margin: bool = False,
            initial: Optional[FrequencyVector] = None,
            on_iteration: Optional[Callable] = None) -> OptimizerOutcome:
    """Run the cGA until it samples ``1^n`` or the budget runs out.

    ``on_iteration(t, freqs_before, freqs_after, winner, loser)`` is called
    after every completed iteration.
    """
    if K < 1:
        raise ValueError(f"K must be >= 1, got {K}")
    freqs = initial if initial is not None else FrequencyVector.uniform(problem.n, K, margin)
    if freqs.n != problem.n:
        raise ValueError("initial frequencies do not match the problem size")
    start = problem.counter.count
    lowest = freqs.min()
    t = 0
    hit = False
    try:
        while True:
            new, (x, y) = cga_iteration(freqs, problem)
            t += 1
            if on_iteration is not None:
                on_iteration(t, freqs, new, x, y)
            if x.all() or y.all():
                hit = True
                break
            freqs = new
            lowest = min(lowest, freqs.min())
    except BudgetExhausted:
        pass
    used = problem.counter.count - start
    return OptimizerOutcome(
        hit=hit,
        evals_at_hit=used if hit else None,
        evals_total=used,
        iterations=t,
        params_used={"K": freqs.K, "margin": margin},
        min_frequency=lowest,
    )
