"""Decoherence factor of a dephasing qubit in an Ohmic-family bath.

The central object is

    Gamma(T, t) = int_0^inf J(w) (1 - cos(w t)) / w^2 * coth(w / 2T) dw

together with its temperature derivative

    dGamma/dT   = int_0^inf J(w) (1 - cos(w t)) / (2 T^2 w) * csch^2(w / 2T) dw.

With J(w) = w^s e^{-w} both integrands behave like a power law times a
smooth function near w = 0:

    Gamma integrand   -> T t^2 * w^(s-1)
    dGamma integrand  ->   t^2 * w^(s-1)

so both are handled by the power-law quadrature with phi bounded at 0.
1 - cos(w t) is always evaluated as 2 sin^2(w t / 2), which has no
cancellation for small arguments.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .quadrature import QuadratureConfig, power_law_integral
from .specialfn import coth_safe, csch2_safe, polygamma

__all__ = [
    "DephasingEvaluation",
    "ProbePreparation",
    "ProbeState",
    "decoherence_factor",
    "decoherence_factor_dT",
    "decoherence_factor_profile",
    "decoherence_factor_dT_profile",
    "evaluate_dephasing",
    "evolved_state",
    "residual_coherence",
    "saturation_value",
]


@dataclass(frozen=True)
class DephasingEvaluation:
    """One (T, t) point: decoherence factor and its T-derivative."""

    T: float
    t: float
    gamma: float
    dgamma_dT: float


@dataclass(frozen=True)
class ProbePreparation:
    """Initial pure qubit state cos(theta/2)|0> + sin(theta/2)|1>."""

    theta: float

    def __post_init__(self):
        if not (0.0 <= self.theta <= math.pi):
            raise ValueError(f"theta must lie in [0, pi], got {self.theta}")


@dataclass(frozen=True)
class ProbeState:
    """Dephased qubit state: populations plus the real coherence.

    The density matrix is [[p0, coherence], [coherence, p1]]; validity
    requires unit trace and coherence^2 <= p0*p1 (positivity).
    """

    p0: float
    p1: float
    coherence: float

    def __post_init__(self):
        if abs(self.p0 + self.p1 - 1.0) > 1e-12:
            raise ValueError("populations must sum to 1")
        if self.p0 < -1e-15 or self.p1 < -1e-15:
            raise ValueError("populations must be nonnegative")
        if self.coherence ** 2 > self.p0 * self.p1 + 1e-12:
            raise ValueError("coherence violates positivity")


def _check_point(T, t):
    if not T > 0.0:
        raise ValueError(f"temperature must be positive, got {T}")
    if t < 0.0:
        raise ValueError(f"time must be nonnegative, got {t}")


def decoherence_factor(spec, T, t, cfg=None):
    """Gamma(T, t) by adaptive quadrature; exactly 0 at t = 0."""
    return float(decoherence_factor_profile(spec, [T], t, cfg)[0])


def decoherence_factor_profile(spec, temps, t, cfg=None):
    """Gamma(T_k, t) for a batch of temperatures on shared panels.

    Sharing one panel decomposition across the batch makes the
    quadrature error vary smoothly with T, so finite differences of
    the returned values estimate dGamma/dT far more accurately than
    differencing independent runs.
    """
    cfg = cfg or QuadratureConfig()
    temps = np.asarray(temps, dtype=float)
    for T in np.atleast_1d(temps):
        _check_point(T, t)
    if t == 0.0:
        return np.zeros(temps.shape)
    s = spec.s

    def phi(w):
        w = np.asarray(w)[..., None]
        osc = 2.0 * np.sin(0.5 * w * t) ** 2
        return (osc / w) * coth_safe(w / (2.0 * temps)) * np.exp(-w)

    value, _ = power_law_integral(phi, s, cfg, osc_period=math.pi / t)
    return np.atleast_1d(value)


def decoherence_factor_dT(spec, T, t, cfg=None):
    """dGamma/dT by quadrature of the differentiated integrand."""
    return float(decoherence_factor_dT_profile(spec, [T], t, cfg)[0])


def decoherence_factor_dT_profile(spec, temps, t, cfg=None):
    """dGamma/dT at a batch of temperatures on shared panels."""
    cfg = cfg or QuadratureConfig()
    temps = np.asarray(temps, dtype=float)
    for T in np.atleast_1d(temps):
        _check_point(T, t)
    if t == 0.0:
        return np.zeros(temps.shape)
    s = spec.s

    def phi(w):
        w = np.asarray(w)[..., None]
        osc = 2.0 * np.sin(0.5 * w * t) ** 2
        return osc * csch2_safe(w / (2.0 * temps)) * np.exp(-w) / (2.0 * temps ** 2)

    value, _ = power_law_integral(phi, s, cfg, osc_period=math.pi / t)
    return np.atleast_1d(value)


def evaluate_dephasing(spec, T, t, cfg=None):
    """Convenience: both Gamma and dGamma/dT packed into one record."""
    return DephasingEvaluation(
        T=T,
        t=t,
        gamma=decoherence_factor(spec, T, t, cfg),
        dgamma_dT=decoherence_factor_dT(spec, T, t, cfg),
    )


def evolved_state(prep, gamma):
    """Qubit state after accumulating decoherence exponent gamma.

    Populations are untouched by pure dephasing; the coherence is
    damped to (1/2) e^{-gamma} sin(theta).
    """
    if gamma < 0.0:
        raise ValueError(f"gamma must be nonnegative, got {gamma}")
    half = 0.5 * prep.theta
    return ProbeState(
        p0=math.cos(half) ** 2,
        p1=math.sin(half) ** 2,
        coherence=0.5 * math.exp(-gamma) * math.sin(prep.theta),
    )


def residual_coherence(state):
    """Sum of |off-diagonal| elements: 2|coherence| = e^{-Gamma} sin(theta)."""
    return 2.0 * abs(state.coherence)


def saturation_value(spec, T, cfg=None):
    """Long-time limit of Gamma(T, t).

    For s <= 1 the decoherence factor grows without bound, returned as
    inf.  For s = 3 the limit has the closed form -1 + 2 T^2 psi1(T)
    with psi1 the trigamma function; the polygamma order was fixed once
    by matching long-time quadrature (t = 1e3) to better than 1e-4
    relative, which the digamma misses by orders of magnitude.  Other
    super-Ohmic exponents fall back to a long-time quadrature estimate
    (flagged with a warning).
    """
    if not T > 0.0:
        raise ValueError(f"temperature must be positive, got {T}")
    if spec.s <= 1.0:
        return math.inf
    if spec.s == 3.0:
        return -1.0 + 2.0 * T * T * polygamma(1, T)
    warnings.warn(
        f"no closed-form saturation value for s={spec.s}; "
        "returning the t=1e3 quadrature estimate",
        stacklevel=2,
    )
    return decoherence_factor(spec, T, 1e3, cfg)
