"""
Compact GA against resampling local search
==========================================

Both algorithms are told the noise variance and size themselves from it:
the cGA through its population size ``K`` and reRLS through the number of
evaluations averaged per point. The cGA absorbs noise implicitly and pays
far fewer evaluations as the variance grows.

With no borders on its frequencies the cGA occasionally fixes a bit at zero
(genetic drift) and can then never sample the optimum; such runs spend the
whole budget and show up as ``#`` comment lines with the hit count.
"""

# %%
from noisyevo.harness import ExperimentConfig, sweep
from noisyevo.tableio import format_summary_table

n, runs = 40, 15
grid = [0, 1, 2, 4, 8]

tables = {}
for algo in ("cga", "rerls"):
    template = ExperimentConfig(algo, n, runs=runs, budget=3 * 10 ** 5, master_seed=2024)
    result = sweep("variance", grid, template)
    tables[algo] = result
    print(f"# {algo}, n={n}, {runs} runs per point: evaluations to reach 1^n")
    print(format_summary_table(result.rows))

# %%
# Ratio of medians per noise level.
for a, b in zip(tables["cga"].rows, tables["rerls"].rows):
    if not (a.absent or b.absent):
        print(f"sigma2={a.x:g}: reRLS needs {b.med / a.med:.1f}x the cGA evaluations")

# %%
# The sizes each run ended up with (K for the cGA, m for reRLS).
print(format_summary_table(tables["cga"].size_rows))
