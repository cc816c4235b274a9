"""Noise-oblivious doubling scheme.

Phase ``i`` restarts the wrapped algorithm sized for a variance guess of
``2**i`` and lets it spend ``phase_budget(2**i)`` evaluations. The true noise
level of the problem is never consulted.
"""

from __future__ import annotations

from functools import partial
from typing import Callable, Optional

from .cga import run_cga
from .problem import BudgetedProblem, OptimizerOutcome
from .rls import run_rerls
from .sizing import (DEFAULT_CK, DEFAULT_CM, DEFAULT_CT, cga_phase_budget,
                     default_population_size, default_resamples,
                     rerls_phase_budget)

KINDS = ("cga", "rerls")


def noise_oblivious_run(kind: str, problem: BudgetedProblem,
                        phase_budget: Optional[Callable[[float], int]] = None, *,
                        ck: float = DEFAULT_CK, cm: float = DEFAULT_CM,
                        ct: float = DEFAULT_CT, margin: bool = False) -> OptimizerOutcome:
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
    n = problem.n
    if phase_budget is None:
        if kind == "cga":
            phase_budget = partial(_cga_budget, n=n, ck=ck, ct=ct)
        else:
            phase_budget = partial(_rerls_budget, n=n, cm=cm, ct=ct)

    start = problem.counter.count
    guesses: list[int] = []
    sizes: list[int] = []
    iterations = 0
    lowest = None
    hit = False
    i = 0
    while True:
        guess = 2 ** i
        length = int(phase_budget(guess))
        if length < 1:
            raise ValueError(f"phase budget must be positive, got {length} for guess {guess}")
        cap = problem.counter.count + length
        phase = problem.limited(cap)
        if kind == "cga":
            size = default_population_size(guess, n, ck)
            outcome = run_cga(phase, size, margin=margin)
            lowest = outcome.min_frequency if lowest is None else min(lowest, outcome.min_frequency)
        else:
            size = default_resamples(guess, n, cm)
            outcome = run_rerls(phase, size)
        guesses.append(guess)
        sizes.append(size)
        iterations += outcome.iterations
        if outcome.hit or cap >= problem.budget:
            hit = outcome.hit
            break
        i += 1

    used = problem.counter.count - start
    key = "K" if kind == "cga" else "m"
    return OptimizerOutcome(
        hit=hit,
        evals_at_hit=used if hit else None,
        evals_total=used,
        iterations=iterations,
        params_used={"variance_guess": guesses[-1], key: sizes[-1],
                     "guesses": guesses, "phases": len(guesses)},
        min_frequency=lowest,
    )


def _cga_budget(guess, n, ck, ct):
    return cga_phase_budget(guess, n, ck, ct)


def _rerls_budget(guess, n, cm, ct):
    return rerls_phase_budget(guess, n, cm, ct)
