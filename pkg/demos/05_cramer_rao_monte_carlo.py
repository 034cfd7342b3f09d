"""Monte Carlo check that the quantum Cramér-Rao bound is attainable.

The full protocol: prepare the probe on the equator, let it dephase for
the optimal time, measure along x, repeat M times, and inverse the
observed frequency through the monotone map T -> Gamma(T, t).  The
empirical variance of the estimate should approach 1/(M H) from above
as M grows; the x measurement is optimal (its Fisher information equals
the QFI), so the quantum bound itself is reached.
"""

import math
import os

import numpy as np

from qubit_thermometry import (
    EstimationRun,
    OhmicSpectrum,
    cramer_rao_check,
    decoherence_factor,
    mle_temperature,
    optimal_time,
    simulate_outcomes,
)

OUT = os.path.join(os.path.dirname(__file__), "output")
os.makedirs(OUT, exist_ok=True)

spec = OhmicSpectrum(1.0)
TRUE_T = 0.5
t_opt = optimal_time(spec, TRUE_T).x_opt
print(f"true T = {TRUE_T}, optimal interaction time t = {t_opt:.4f}")

# --- variance ratio vs number of shots -------------------------------------
print("\nVar(T_hat) * M * H against 1 (asymptotic efficiency):")
for M in (100, 1000, 10_000):
    run = EstimationRun(true_T=TRUE_T, t=t_opt, M=M, n_reps=300, seed=2024)
    rep = cramer_rao_check(run, spec)
    print(f"  M={M:6d}: ratio = {rep.ratio:6.3f}   "
          f"degenerate experiments: {rep.n_degenerate}")

# --- one big batch for a histogram ------------------------------------------
run = EstimationRun(true_T=TRUE_T, t=t_opt, M=10_000, n_reps=500, seed=1)
rep = cramer_rao_check(run, spec)
sigma_crb = math.sqrt(rep.crb)
print(f"\nM=10^4, 500 experiments: mean = {rep.mean_estimate:.5f}, "
      f"sd = {math.sqrt(rep.variance):.5f}, CRB sd = {sigma_crb:.5f}, "
      f"ratio = {rep.ratio:.4f}")

# refill the estimates for the histogram (same seeds as the check)
from qubit_thermometry.rng import substream_seeds

gamma = decoherence_factor(spec, TRUE_T, t_opt)
p_plus = 0.5 * (1.0 + math.exp(-gamma))
estimates = []
for seed in substream_seeds(run.seed, run.n_reps):
    n_plus = simulate_outcomes(p_plus, run.M, seed)
    t_hat = mle_temperature(n_plus, run.M, spec, t_opt)
    if t_hat is not None:
        estimates.append(t_hat)

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    print("\nmatplotlib not available; skipping figures")
else:
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.hist(estimates, bins=30, density=True, alpha=0.6, label="MLE estimates")
    grid = np.linspace(min(estimates), max(estimates), 300)
    gauss = np.exp(-0.5 * ((grid - TRUE_T) / sigma_crb) ** 2) / (
        sigma_crb * math.sqrt(2.0 * math.pi)
    )
    ax.plot(grid, gauss, "k--", label="CRB-limited Gaussian")
    ax.axvline(TRUE_T, color="r", lw=1, label="true T")
    ax.set_xlabel("estimated temperature")
    ax.set_ylabel("density")
    ax.set_title("Cramér-Rao saturation, M = 10^4 shots")
    ax.legend()
    fig.tight_layout()
    path = os.path.join(OUT, "cramer_rao_histogram.png")
    fig.savefig(path, dpi=120)
    print(f"wrote {path}")
