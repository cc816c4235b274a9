"""Randomized local search on resampled fitness estimates (reRLS)."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from ..bitstring import flip_one_bit, new_uniform, ones_count
from .problem import BudgetExhausted, BudgetedProblem, OptimizerOutcome


class RLSState(NamedTuple):
    x: np.ndarray
    estimate: float


def resample_estimate(x: np.ndarray, m: int, problem: BudgetedProblem) -> float:
    """Mean of ``m`` fresh noisy evaluations of ``x``."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    problem.reserve(m)
    values = problem.evaluate_ones(np.full(m, ones_count(x)))
    return float(values.mean())


def rerls_step(current: RLSState, m: int, problem: BudgetedProblem):
    """Returns ``(new_state, candidate)``; the candidate wins ties."""
    problem.reserve(m)
    candidate = flip_one_bit(current.x, problem.rng)
    estimate = resample_estimate(candidate, m, problem)
    if estimate >= current.estimate:
        return RLSState(candidate, estimate), candidate
    return current, candidate


def rerls_iteration(current: RLSState, m: int, problem: BudgetedProblem) -> RLSState:
    return rerls_step(current, m, problem)[0]


def run_rerls(problem: BudgetedProblem, m: int) -> OptimizerOutcome:
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    start = problem.counter.count
    t = 0
    hit = False
    try:
        x = new_uniform(problem.n, problem.rng)
        state = RLSState(x, resample_estimate(x, m, problem))
        hit = bool(x.all())
        while not hit:
            state, candidate = rerls_step(state, m, problem)
            t += 1
            hit = bool(candidate.all())
    except BudgetExhausted:
        pass
    used = problem.counter.count - start
    return OptimizerOutcome(hit, used if hit else None, used, t, {"m": m})
