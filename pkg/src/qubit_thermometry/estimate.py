"""Monte Carlo verification of the Cramér-Rao bound.

The simulated protocol is the optimal one: probe prepared along +x
(theta = pi/2), measured along x (Bloch direction a = (1, 0, 0)), so a
single shot is a Bernoulli draw with

    p_plus = (1 + e^{-Gamma(T, t)}) / 2.

The estimator inverts the empirical frequency: p_hat -> Gamma_hat =
-ln(2 p_hat - 1) -> bisection on the monotone map T -> Gamma(T, t).
Outcomes with p_hat <= 1/2 (or Gamma_hat outside the reachable range)
carry no admissible estimate and are reported as degenerate rather
than clamped, which would bias the variance comparison.
"""

import math
from dataclasses import dataclass

import numpy as np

from .dephasing import decoherence_factor, decoherence_factor_dT
from .metrology import qfi_dephasing
from .optimize import optimal_time
from .quadrature import QuadratureConfig
from .rng import substream_seeds, uniform_block

__all__ = [
    "EstimationRun",
    "EstimationReport",
    "EstimationError",
    "simulate_outcomes",
    "invert_decoherence",
    "mle_temperature",
    "cramer_rao_check",
]

# inversion bracket: roots outside are reported as degenerate
_T_BRACKET = (1e-6, 1e4)
_BISECT_TOL = 1e-10
_BISECT_CAP = 200


class EstimationError(RuntimeError):
    pass


@dataclass(frozen=True)
class EstimationRun:
    """Configuration of one Monte Carlo experiment batch.

    t = None lets the runner pick the QFI-optimal interaction time for
    true_T.
    """

    true_T: float
    t: float | None
    M: int
    n_reps: int
    seed: int

    def __post_init__(self):
        if not self.true_T > 0.0:
            raise ValueError("true_T must be positive")
        if self.t is not None and not self.t > 0.0:
            raise ValueError("t must be positive (or None for auto)")
        if self.M < 1 or self.n_reps < 1:
            raise ValueError("M and n_reps must be >= 1")


@dataclass(frozen=True)
class EstimationReport:
    """Empirical estimator statistics against the quantum bound 1/(M H)."""

    mean_estimate: float
    variance: float
    crb: float
    ratio: float
    n_degenerate: int
    t: float
    qfi: float


def simulate_outcomes(p_plus, M, seed):
    """Count of '+' outcomes in M shots with success probability p_plus.

    Shot k succeeds iff the k-th SplitMix64 uniform is below p_plus,
    so the count is binomial and bit-reproducible for a given seed.
    """
    if not 0.0 <= p_plus <= 1.0:
        raise ValueError("p_plus must lie in [0, 1]")
    if M < 1:
        raise ValueError("M must be >= 1")
    u = uniform_block(seed, M)
    return int(np.count_nonzero(u < p_plus))


def invert_decoherence(gamma_hat, spec, t, qcfg=None):
    """Solve Gamma(T, t) = gamma_hat for T by bisection.

    Gamma is strictly increasing in T, so bisection on the bracket
    [1e-6, 1e4] is unconditionally convergent; returns None when the
    target lies outside the bracket's range.
    """
    qcfg = qcfg or QuadratureConfig()
    lo, hi = _T_BRACKET
    g = lambda T: decoherence_factor(spec, T, t, qcfg)
    if g(lo) > gamma_hat or g(hi) < gamma_hat:
        return None
    for _ in range(_BISECT_CAP):
        mid = 0.5 * (lo + hi)
        if hi - lo <= _BISECT_TOL:
            break
        if g(mid) > gamma_hat:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def mle_temperature(n_plus, M, spec, t, qcfg=None):
    """Maximum-likelihood temperature from a measurement record.

    Returns None (degenerate) when p_hat <= 1/2, i.e. when the
    empirical coherence is non-positive and no temperature explains
    the data.
    """
    if not 0 <= n_plus <= M:
        raise ValueError("need 0 <= n_plus <= M")
    p_hat = n_plus / M
    if p_hat <= 0.5:
        return None
    gamma_hat = -math.log(2.0 * p_hat - 1.0)
    return invert_decoherence(gamma_hat, spec, t, qcfg)


def cramer_rao_check(run, spec, qcfg=None, ocfg=None):
    """Run n_reps independent experiments and compare Var(T_hat) to 1/(M H).

    The empirical variance (ddof=1, non-degenerate estimates only) is
    expected to approach the bound from above as M grows, the MLE being
    asymptotically efficient.
    """
    qcfg = qcfg or QuadratureConfig()
    t = run.t
    if t is None:
        t = optimal_time(spec, run.true_T, ocfg, qcfg).x_opt
    gamma = decoherence_factor(spec, run.true_T, t, qcfg)
    dgamma = decoherence_factor_dT(spec, run.true_T, t, qcfg)
    qfi = qfi_dephasing(gamma, dgamma)
    if not qfi > 0.0:
        raise EstimationError("QFI vanishes at the requested point")
    crb = 1.0 / (run.M * qfi)
    p_plus = 0.5 * (1.0 + math.exp(-gamma))

    estimates = []
    n_degenerate = 0
    for rep_seed in substream_seeds(run.seed, run.n_reps):
        n_plus = simulate_outcomes(p_plus, run.M, rep_seed)
        t_hat = mle_temperature(n_plus, run.M, spec, t, qcfg)
        if t_hat is None:
            n_degenerate += 1
        else:
            estimates.append(t_hat)
    if not estimates:
        raise EstimationError("all experiments were degenerate")
    arr = np.asarray(estimates)
    variance = float(np.var(arr, ddof=1)) if arr.size > 1 else 0.0
    return EstimationReport(
        mean_estimate=float(arr.mean()),
        variance=variance,
        crb=crb,
        ratio=variance / crb,
        n_degenerate=n_degenerate,
        t=float(t),
        qfi=float(qfi),
    )
