"""
Running without knowing the noise level
=======================================

The noise-oblivious scheme restarts the cGA with variance guesses
1, 2, 4, ... and gives phase ``i`` a budget that grows with the guess.
Once the guess is large enough the phase succeeds, and the geometric growth
of the budgets keeps the total within a constant factor of the last phase.
"""

# %%
from noisyevo.optimizers import BudgetedProblem, cga_phase_budget, noise_oblivious_run, run_cga
from noisyevo.optimizers import default_population_size

n = 50
for sigma2 in (0.0, 3.0, 12.0):
    problem = BudgetedProblem.create(n, sigma2, 10 ** 7, seed=5)
    out = noise_oblivious_run("cga", problem)
    used = out.params_used
    print(f"true sigma2={sigma2:g}: guesses {used['guesses']}, final K={used['K']}, "
          f"hit={out.hit} after {out.evals_total} evaluations")
    print("   phase budgets:", [cga_phase_budget(g, n) for g in used["guesses"]])

# %%
# For comparison, the cGA sized with the true variance.
for sigma2 in (3.0, 12.0):
    K = default_population_size(sigma2, n)
    out = run_cga(BudgetedProblem.create(n, sigma2, 10 ** 7, seed=5), K)
    print(f"known sigma2={sigma2:g}: K={K}, {out.evals_total} evaluations")
