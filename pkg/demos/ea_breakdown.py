"""
Where the (mu+1) EA gives up
============================

The (mu+1) EA re-evaluates its whole population every iteration and throws
out the individual with the worst noisy value. Once the noise dwarfs the
fitness range, that choice is close to a coin flip and the population stops
making progress. This script counts hits within a fixed budget as the
variance grows.
"""

# %%
from noisyevo.harness import ExperimentConfig, run_experiment

n, mu, runs, budget = 20, 5, 10, 2 * 10 ** 5
print(f"n={n}, mu={mu}, budget {budget} evaluations, {runs} runs")
print(f"{'sigma2':>8} {'hits':>6} {'median evals':>14}")
for sigma2 in (0, 1, 4, 16, 64, 256, n ** 3):
    config = ExperimentConfig("ea", n, float(sigma2), runs=runs, budget=budget, mu=mu,
                              master_seed=11)
    records = run_experiment(config)
    evals = sorted(r.evals_at_hit for r in records if r.hit)
    med = evals[len(evals) // 2] if evals else float("nan")
    print(f"{sigma2:>8} {len(evals):>6} {med:>14}")
