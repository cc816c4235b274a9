"""Noisy OneMax: compact GA, (mu+1) EA and resampling local search.

Optimizers, the Gaussian misclassification quantities they are analysed
with, exact/Monte Carlo oracles for the cGA drift bounds, and a seeded experiment
harness that produces median/IQR tables.
"""

from .bitstring import (EvalCounter, RandomStream, bitstring, flip_each_bit,
                        flip_one_bit, hamming, mix_seed, new_uniform, ones_count,
                        to_str)
from .harness import (ExperimentConfig, RunRecord, SummaryRow, percentile,
                      run_experiment, summarize, sweep)
from .noise import (GaussianNoise, MisclassifyCurve, gaussian_lower_tail,
                    gaussian_tail_upper_bound, log_misclassify_prob,
                    misclassify_prob, noisy_eval)
from .optimizers import (CGA, BudgetedProblem, FrequencyVector, MuPlusOneEA,
                         NoiseOblivious, OptimizerOutcome, ReRLS,
                         noise_oblivious_run, run_optimizer)

__version__ = "0.1.0"
