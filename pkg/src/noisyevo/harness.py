"""Seeded multi-run experiments and median/IQR summaries.

Run ``i`` of an experiment is seeded with ``mix_seed(master_seed, i)`` and
owns all of its state, so the record list depends only on the config and not
on how many worker processes produced it.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from typing import Optional, Sequence

from .bitstring import RandomStream, mix_seed
from .noise import GaussianNoise
from .optimizers import (CGA, DEFAULT_CK, DEFAULT_CM, DEFAULT_CT, BudgetedProblem,
                         MuPlusOneEA, NoiseOblivious, ReRLS, default_population_size,
                         default_resamples, run_optimizer)

logger = logging.getLogger(__name__)

ALGORITHMS = ("cga", "ea", "rerls", "no-cga", "no-rerls")


@dataclass(frozen=True)
class ExperimentConfig:
    """One point of an experiment. ``K``/``mu``/``resamples`` of ``None`` mean auto."""

    algo: str
    n: int
    sigma2: float = 0.0
    runs: int = 100
    budget: int = 10 ** 8
    master_seed: int = 0
    K: Optional[int] = None
    mu: Optional[int] = None
    resamples: Optional[int] = None
    ck: float = DEFAULT_CK
    cm: float = DEFAULT_CM
    ct: float = DEFAULT_CT
    margin: bool = False

    def validate(self) -> None:
        if self.algo not in ALGORITHMS:
            raise ValueError(f"algo must be one of {ALGORITHMS}, got {self.algo!r}")
        if self.n < 1:
            raise ValueError("n must be positive")
        if not self.sigma2 >= 0:
            raise ValueError("sigma2 must be >= 0")
        if self.runs < 1:
            raise ValueError("runs must be >= 1")
        if self.budget < 1:
            raise ValueError("budget must be >= 1")
        for name in ("K", "mu", "resamples"):
            v = getattr(self, name)
            if v is not None and v < 1:
                raise ValueError(f"{name} must be >= 1")
        if self.K is not None and self.algo != "cga":
            raise ValueError("K only applies to the cGA with known variance")
        if self.resamples is not None and self.algo != "rerls":
            raise ValueError("resamples only applies to reRLS with known variance")
        if self.mu is not None and self.algo != "ea":
            raise ValueError("mu only applies to the EA")
        if self.margin and self.algo not in ("cga", "no-cga"):
            raise ValueError("margin only applies to cGA variants")
        if self.algo.startswith("no-") and self.n < 2:
            raise ValueError("noise-oblivious phase budgets need n >= 2")
        for name in ("ck", "cm", "ct"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")

    def optimizer(self):
        self.validate()
        # the sizing rules need n >= 2; a single bit is solved by any size
        if self.algo == "cga":
            K = self.K or (default_population_size(self.sigma2, self.n, self.ck)
                           if self.n > 1 else 1)
            return CGA(K, self.margin)
        if self.algo == "ea":
            return MuPlusOneEA(self.mu or 1)
        if self.algo == "rerls":
            m = self.resamples or (default_resamples(self.sigma2, self.n, self.cm)
                                   if self.n > 1 else 1)
            return ReRLS(m)
        return NoiseOblivious(self.algo[3:], self.ck, self.cm, self.ct, self.margin)


@dataclass(frozen=True)
class RunRecord:
    """Outcome of one run.

    ``param`` is K, m or mu, or the last variance guess for noise-oblivious
    runs. ``size`` (the K or m of the final phase) and ``min_frequency`` are
    diagnostics that are not part of the raw CSV and do not take part in
    equality.
    """

    run_index: int
    seed: int
    hit: bool
    evals_at_hit: Optional[int]
    evals_total: int
    param: int
    size: Optional[int] = field(default=None, compare=False)
    min_frequency: Optional[float] = field(default=None, compare=False)


def run_single(config: ExperimentConfig, run_index: int) -> RunRecord:
    seed = mix_seed(config.master_seed, run_index)
    problem = BudgetedProblem(config.n, GaussianNoise(config.sigma2), config.budget,
                              RandomStream(seed))
    outcome = run_optimizer(config.optimizer(), problem)
    used = outcome.params_used
    if "variance_guess" in used:
        param = used["variance_guess"]
        size = used.get("K", used.get("m"))
    else:
        param = next(used[k] for k in ("K", "m", "mu") if k in used)
        size = param
    return RunRecord(run_index, seed, outcome.hit, outcome.evals_at_hit,
                     outcome.evals_total, int(param), int(size), outcome.min_frequency)


def _run_chunk(args):
    config, indices = args
    return [run_single(config, i) for i in indices]


def run_experiment(config: ExperimentConfig, workers: int = 1) -> list[RunRecord]:
    """``config.runs`` independent runs, sorted by run index."""
    config.validate()
    indices = list(range(config.runs))
    if workers <= 1 or config.runs == 1:
        records = [run_single(config, i) for i in indices]
    else:
        chunks = [(config, indices[w::workers]) for w in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = [r for chunk in pool.map(_run_chunk, chunks) for r in chunk]
    records.sort(key=lambda r: r.run_index)
    logger.info("%s n=%d sigma2=%g: %d/%d hits", config.algo, config.n, config.sigma2,
                sum(r.hit for r in records), config.runs)
    return records


def percentile(values: Sequence[float], q: float) -> float:
    """Quantile by linear interpolation between order statistics.

    With sorted values ``v`` and ``h = q (N - 1)`` the result is
    ``v[floor(h)] + (h - floor(h)) (v[floor(h) + 1] - v[floor(h)])``.
    """
    if len(values) == 0:
        raise ValueError("percentile of an empty list")
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"q must lie in [0, 1], got {q}")
    v = sorted(values)
    h = q * (len(v) - 1)
    lo = math.floor(h)
    if lo + 1 >= len(v):
        return float(v[-1])
    return v[lo] + (h - lo) * (v[lo + 1] - v[lo])


@dataclass(frozen=True)
class SummaryRow:
    x: float
    med: Optional[float]
    lq: Optional[float]
    uq: Optional[float]
    hits: int
    runs: int

    @property
    def absent(self) -> bool:
        return self.med is None


def _quartiles(x, values, runs):
    if not values:
        return SummaryRow(x, None, None, None, 0, runs)
    return SummaryRow(x, percentile(values, 0.5), percentile(values, 0.25),
                      percentile(values, 0.75), len(values), runs)


def summarize(records: Sequence[RunRecord], x: float) -> SummaryRow:
    """Median and quartiles of evaluations-to-hit; misses only lower ``hits``."""
    if not records:
        raise ValueError("nothing to summarize")
    return _quartiles(x, [r.evals_at_hit for r in records if r.hit], len(records))


def summarize_sizes(records: Sequence[RunRecord], x: float) -> SummaryRow:
    """Median and quartiles of the K or m that the hitting runs ended with."""
    if not records:
        raise ValueError("nothing to summarize")
    return _quartiles(x, [r.size for r in records if r.hit and r.size is not None],
                      len(records))


@dataclass
class SweepResult:
    rows: list[SummaryRow]
    size_rows: list[SummaryRow]
    points: list[dict]
    records: dict = field(default_factory=dict)


def sweep(axis: str, grid: Sequence[float], template: ExperimentConfig,
          workers: int = 1) -> SweepResult:
    """Summaries along the noise variance or along ``n``.

    Along ``"dimension"`` each point uses ``sigma2 = sqrt(n)``. A point whose
    config is invalid becomes an absent row and the sweep carries on.
    """
    if axis not in ("variance", "dimension"):
        raise ValueError("axis must be 'variance' or 'dimension'")
    if len(grid) == 0:
        raise ValueError("empty grid")
    result = SweepResult([], [], [])
    for x in sorted(grid):
        if axis == "variance":
            config = replace(template, sigma2=float(x))
        else:
            n = int(x)
            if n != x:
                raise ValueError(f"dimension grid needs integers, got {x}")
            config = replace(template, n=n, sigma2=math.sqrt(n))
        meta = {"x": x, "n": config.n, "sigma2": config.sigma2, "algo": config.algo,
                "runs": config.runs, "budget": config.budget,
                "master_seed": config.master_seed,
                "misses_excluded_from_quantiles": True}
        try:
            records = run_experiment(config, workers)
        except ValueError as err:
            logger.warning("sweep point x=%s skipped: %s", x, err)
            meta["error"] = str(err)
            result.rows.append(SummaryRow(x, None, None, None, 0, 0))
            result.size_rows.append(SummaryRow(x, None, None, None, 0, 0))
            result.points.append(meta)
            continue
        row = summarize(records, x)
        meta["hits"] = row.hits
        result.rows.append(row)
        result.size_rows.append(summarize_sizes(records, x))
        result.points.append(meta)
        result.records[x] = records
    return result


def config_dict(config: ExperimentConfig) -> dict:
    return asdict(config)
