"""Optimizers for noisy OneMax behind a single run-to-budget entry point."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .cga import (FrequencyVector, cga_iteration, margin_bound, run_cga,
                  sample_from_frequencies)
from .ea import EAStep, Population, ea_iteration, ea_step, run_ea
from .oblivious import noise_oblivious_run
from .problem import BudgetExhausted, BudgetedProblem, OptimizerOutcome
from .rls import RLSState, rerls_iteration, rerls_step, resample_estimate, run_rerls
from .sizing import (DEFAULT_CK, DEFAULT_CM, DEFAULT_CT, cga_phase_budget,
                     default_population_size, default_resamples,
                     rerls_phase_budget)


@dataclass(frozen=True)
class CGA:
    K: int
    margin: bool = False


@dataclass(frozen=True)
class MuPlusOneEA:
    mu: int = 1


@dataclass(frozen=True)
class ReRLS:
    m: int


@dataclass(frozen=True)
class NoiseOblivious:
    """Doubling wrapper around ``"cga"`` or ``"rerls"``."""

    kind: str
    ck: float = DEFAULT_CK
    cm: float = DEFAULT_CM
    ct: float = DEFAULT_CT
    margin: bool = False


OptimizerKind = Union[CGA, MuPlusOneEA, ReRLS, NoiseOblivious]


def run_optimizer(kind: OptimizerKind, problem: BudgetedProblem) -> OptimizerOutcome:
    """Run until ``1^n`` is generated or the evaluation budget is spent."""
    if isinstance(kind, CGA):
        return run_cga(problem, kind.K, margin=kind.margin)
    if isinstance(kind, MuPlusOneEA):
        return run_ea(problem, kind.mu)
    if isinstance(kind, ReRLS):
        return run_rerls(problem, kind.m)
    if isinstance(kind, NoiseOblivious):
        return noise_oblivious_run(kind.kind, problem, ck=kind.ck, cm=kind.cm,
                                   ct=kind.ct, margin=kind.margin)
    raise TypeError(f"unknown optimizer {kind!r}")


__all__ = [
    "BudgetExhausted", "BudgetedProblem", "CGA", "DEFAULT_CK", "DEFAULT_CM",
    "DEFAULT_CT", "EAStep", "FrequencyVector", "MuPlusOneEA", "NoiseOblivious",
    "OptimizerKind", "OptimizerOutcome", "Population", "RLSState", "ReRLS",
    "cga_iteration", "cga_phase_budget", "default_population_size",
    "default_resamples", "ea_iteration", "ea_step", "margin_bound",
    "noise_oblivious_run", "rerls_iteration", "rerls_phase_budget",
    "rerls_step", "resample_estimate", "run_cga", "run_ea", "run_optimizer",
    "run_rerls", "sample_from_frequencies",
]
