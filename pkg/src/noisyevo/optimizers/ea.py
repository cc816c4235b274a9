"""The (mu+1) EA with reevaluated noise.

Every iteration gives all ``mu + 1`` individuals fresh noisy values before
one of the (noisily) worst is discarded, so a lucky draw never lingers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional

import numpy as np

from ..bitstring import RandomStream, _frozen, flip_each_bit
from .problem import BudgetExhausted, BudgetedProblem, OptimizerOutcome


@dataclass(frozen=True)
class Population:
    members: np.ndarray  # (mu, n) bool

    @classmethod
    def uniform(cls, mu: int, n: int, rng: RandomStream) -> "Population":
        if mu < 1 or n < 1:
            raise ValueError("mu and n must be positive")
        return cls(_frozen(rng.random((mu, n)) < 0.5))

    @property
    def mu(self) -> int:
        return self.members.shape[0]

    def ones(self) -> np.ndarray:
        return self.members.sum(axis=1)

    def best_fitness(self) -> int:
        return int(self.ones().max())

    def contains_optimum(self) -> bool:
        return bool(self.members.all(axis=1).any())


class EAStep(NamedTuple):
    population: Population
    offspring: np.ndarray
    values: np.ndarray  # noisy values of parents then offspring
    removed: int        # row index into parents + offspring


def ea_step(pop: Population, problem: BudgetedProblem) -> EAStep:
    mu, n = pop.members.shape
    problem.reserve(mu + 1)
    rng = problem.rng
    parent = pop.members[rng.integers(mu)]
    child = flip_each_bit(parent, 1.0 / n, rng)
    pool = np.vstack([pop.members, child])
    values = problem.evaluate_ones(pool.sum(axis=1))
    worst = np.flatnonzero(values == values.min())
    removed = int(worst[0] if worst.size == 1 else worst[rng.integers(worst.size)])
    survivors = _frozen(np.delete(pool, removed, axis=0))
    return EAStep(Population(survivors), child, values, removed)


def ea_iteration(pop: Population, problem: BudgetedProblem) -> Population:
    return ea_step(pop, problem).population


def run_ea(problem: BudgetedProblem, mu: int,
           on_iteration: Optional[Callable[[int, Population, EAStep], None]] = None
           ) -> OptimizerOutcome:
    if mu < 1:
        raise ValueError(f"mu must be >= 1, got {mu}")
    start = problem.counter.count
    pop = Population.uniform(mu, problem.n, problem.rng)
    t = 0
    hit = pop.contains_optimum()
    if not hit:
        try:
            while True:
                step = ea_step(pop, problem)
                t += 1
                if on_iteration is not None:
                    on_iteration(t, pop, step)
                pop = step.population
                if step.offspring.all():
                    hit = True
                    break
        except BudgetExhausted:
            pass
    used = problem.counter.count - start
    return OptimizerOutcome(hit, used if hit else None, used, t, {"mu": mu})
