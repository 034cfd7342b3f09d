"""Fisher-information machinery for temperature estimation.

For the optimally prepared probe (theta = pi/2) the quantum Fisher
information has the closed form

    H(T, t) = (dGamma/dT)^2 / (e^{2 Gamma} - 1),

checked here against the generic eigendecomposition route

    H = sum_p (d rho_p)^2 / rho_p
        + 2 sum_{n != m} (rho_n - rho_m)^2 / (rho_n + rho_m) |<phi_n|d phi_m>|^2

and bounded below by the classical Fisher information of any projective
measurement along a Bloch direction a:

    F = (a1 sin(theta))^2 (dGamma/dT)^2 e^{-2 Gamma}
            / (1 - a1^2 sin^2(theta) e^{-2 Gamma}),

with equality at a1 = +-1, theta = pi/2.
"""

import math
from dataclasses import dataclass

import numpy as np

from .bath import OhmicSpectrum
from .dephasing import decoherence_factor, decoherence_factor_dT
from .quadrature import QuadratureConfig, power_law_integral
from .specialfn import gamma_fn

__all__ = [
    "MeasurementSetting",
    "QfiResult",
    "DegenerateSpectrumError",
    "qfi_dephasing",
    "qfi_general_2x2",
    "qfi_point",
    "qsnr",
    "qfi_low_temp_ohmic",
    "oscillatory_kernel",
    "high_temp_integral",
    "decoherence_factor_high_temp",
    "qfi_high_temp",
    "outcome_probabilities",
    "classical_fisher",
]


@dataclass(frozen=True)
class MeasurementSetting:
    """Two-outcome projective measurement (I +- a.sigma)/2 along unit a."""

    a1: float
    a2: float
    a3: float

    def __post_init__(self):
        norm = self.a1 ** 2 + self.a2 ** 2 + self.a3 ** 2
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"Bloch direction must be unit length, |a|^2 = {norm}")


@dataclass(frozen=True)
class QfiResult:
    """QFI H and the signal-to-noise figure Q = T^2 H at one (T, t)."""

    T: float
    t: float
    H: float
    Q: float


class DegenerateSpectrumError(RuntimeError):
    """Eigendecomposition route hit a (near-)degenerate spectrum."""


def qfi_dephasing(gamma, dgamma_dT):
    """Closed-form QFI for the theta = pi/2 dephasing family.

    At gamma -> 0 the quotient is 0/0; the series e^{2G}-1 ~ 2G gives
    the limit, which is 0 whenever dGamma/dT vanishes with it (the
    physical t = 0 case).
    """
    if gamma < 0.0 or dgamma_dT < 0.0:
        raise ValueError("gamma and dgamma_dT must be nonnegative")
    if gamma <= 1e-12:
        if dgamma_dT == 0.0:
            return 0.0
        if gamma == 0.0:
            return math.inf
        return dgamma_dT * dgamma_dT / (2.0 * gamma)
    two_g = 2.0 * gamma
    if two_g > 700.0:  # e^{2G}-1 ~ e^{2G}; expm1 would overflow
        return dgamma_dT * dgamma_dT * math.exp(-two_g)
    return dgamma_dT * dgamma_dT / math.expm1(two_g)


def qfi_general_2x2(state_at, T, h=None):
    """QFI of a 2x2 state family by eigendecomposition, derivatives by
    central differences at T-h, T, T+h.

    state_at maps a temperature to a ProbeState.  Eigenvector gauge is
    fixed by demanding positive overlap with the central-point
    eigenvectors before differencing; a spectrum degenerate to within
    1e-12 raises DegenerateSpectrumError (perturb h or T).
    """
    if h is None:
        h = 1e-5 * max(T, 0.01)
    if not h > 0.0:
        raise ValueError("derivative step h must be positive")

    def density(st):
        return np.array([[st.p0, st.coherence], [st.coherence, st.p1]])

    def eig(st):
        vals, vecs = np.linalg.eigh(density(st))
        return vals, vecs

    def match(lam, vec, vec_ref):
        # align branch ordering and gauge with the reference eigenbasis
        if abs(vec_ref[:, 0] @ vec[:, 0]) < abs(vec_ref[:, 0] @ vec[:, 1]):
            lam = lam[::-1].copy()
            vec = vec[:, ::-1].copy()
        for j in range(2):
            if vec_ref[:, j] @ vec[:, j] < 0.0:
                vec[:, j] = -vec[:, j]
        return lam, vec

    lam_m, vec_m = eig(state_at(T - h))
    lam_0, vec_0 = eig(state_at(T))
    lam_p, vec_p = eig(state_at(T + h))
    if abs(lam_0[1] - lam_0[0]) < 1e-12:
        raise DegenerateSpectrumError(
            "eigenvalues degenerate within 1e-12; perturb the step h"
        )
    lam_m, vec_m = match(lam_m, vec_m, vec_0)
    lam_p, vec_p = match(lam_p, vec_p, vec_0)

    dlam = (lam_p - lam_m) / (2.0 * h)
    dvec = (vec_p - vec_m) / (2.0 * h)
    classical = sum(
        dlam[j] ** 2 / lam_0[j] for j in range(2) if lam_0[j] > 1e-14
    )
    quantum = 0.0
    for n in range(2):
        for m in range(2):
            if n == m:
                continue
            overlap = vec_0[:, n] @ dvec[:, m]
            gap = (lam_0[n] - lam_0[m]) ** 2 / (lam_0[n] + lam_0[m])
            quantum += 2.0 * gap * overlap ** 2
    return classical + quantum


def qfi_point(spec, T, t, cfg=None):
    """Full pipeline: quadrature Gamma and dGamma/dT -> H and Q = T^2 H."""
    g = decoherence_factor(spec, T, t, cfg)
    dg = decoherence_factor_dT(spec, T, t, cfg)
    H = qfi_dephasing(g, dg)
    return QfiResult(T=T, t=t, H=H, Q=T * T * H)


def qsnr(T, H):
    """Quantum signal-to-noise ratio T^2 * H."""
    if not T > 0.0:
        raise ValueError("temperature must be positive")
    if H < 0.0:
        raise ValueError("QFI must be nonnegative")
    return T * T * H


def _xcoth_minus_one(x):
    # x coth x - 1, stable for small x
    if x < 0.1:
        x2 = x * x
        return x2 / 3.0 - x2 * x2 / 45.0 + 2.0 * x2 ** 3 / 945.0 - x2 ** 4 / 4725.0
    return x / math.tanh(x) - 1.0


def _sinh2_minus_x2(x):
    # sinh^2 x - x^2, stable for small x
    if x < 0.2:
        x2 = x * x
        return x2 * x2 * (1.0 / 3.0 + x2 * (2.0 / 45.0 + x2 * (1.0 / 315.0 + x2 * 2.0 / 14175.0)))
    return math.sinh(x) ** 2 - x * x


def qfi_low_temp_ohmic(T, t):
    """Closed-form QFI for the Ohmic bath (s = 1) in the cold regime.

        H = pi^2 t^2 [x coth x - 1]^2 / ((1+t^2) sinh^2 x - x^2),  x = pi t T

    Small x is evaluated through series for x coth x - 1 and
    sinh^2 x - x^2 to avoid cancellation.  The formula carries a
    finite-temperature deficit of roughly 4.4*T relative, so it is a
    percent-level approximation only below T ~ 2e-3; callers outside
    that regime get the formula value without warning.
    """
    if not (T > 0.0 and t > 0.0):
        raise ValueError("qfi_low_temp_ohmic requires T > 0 and t > 0")
    x = math.pi * t * T
    if x > 350.0:
        return 0.0
    num = math.pi ** 2 * t * t * _xcoth_minus_one(x) ** 2
    den = t * t * math.sinh(x) ** 2 + _sinh2_minus_x2(x)
    return num / den


def oscillatory_kernel(s, t):
    """Normalised cosine transform of the cutoff power law:

        K(s, t) = (1 + t^2)^(1 - s/2) cos[(s - 2) arctan t],

    i.e. Re[(1 - i t)^(2-s)] written in polar form; K(s, 0) = 1.
    """
    if t < 0.0:
        raise ValueError("time must be nonnegative")
    return (1.0 + t * t) ** (1.0 - 0.5 * s) * math.cos((s - 2.0) * math.atan(t))


def high_temp_integral(spec, t, cfg=None):
    """I(s, t) = int w^(s-3) e^{-w} (1 - cos(w t)) dw.

    For s > 2 this equals Gamma(s-2) * (1 - K(s, t)) exactly (verified
    against quadrature); at and below s = 2 the Gamma factor has a pole
    but the integral converges, so it is done numerically.
    """
    if t == 0.0:
        return 0.0
    s = spec.s
    if s > 2.0:
        return gamma_fn(s - 2.0) * (1.0 - oscillatory_kernel(s, t))
    cfg = cfg or QuadratureConfig()

    def phi(w):
        w = np.asarray(w)
        return 2.0 * np.sin(0.5 * w * t) ** 2 / (w * w) * np.exp(-w)

    value, _ = power_law_integral(phi, s, cfg, osc_period=math.pi / t)
    return float(value)


def decoherence_factor_high_temp(spec, T, t, cfg=None):
    """Gamma in the high-temperature limit coth(w/2T) ~ 2T/w:

        Gamma_ht(T, t) = 2 T * I(s, t).
    """
    if not T > 0.0:
        raise ValueError("temperature must be positive")
    if t < 0.0:
        raise ValueError("time must be nonnegative")
    return 2.0 * T * high_temp_integral(spec, t, cfg)


def qfi_high_temp(spec, T, t, cfg=None):
    """High-temperature QFI via the self-consistent chain

        H = 4 I^2 / (e^{4 T I} - 1),   I = I(s, t),

    i.e. the closed form H = (dGamma/dT)^2/(e^{2 Gamma}-1) evaluated on
    Gamma_ht = 2 T I, whose T-derivative is 2 I.  The relative
    deviation from the exact-kernel QFI decays like 1/T and is within
    2 percent only for T of order 50 and above on t in [0.1, 10].
    """
    if not T > 0.0:
        raise ValueError("temperature must be positive")
    if t < 0.0:
        raise ValueError("time must be nonnegative")
    I = high_temp_integral(spec, t, cfg)
    if I == 0.0:
        return 0.0
    x = 4.0 * T * I
    if x > 700.0:
        return 4.0 * I * I * math.exp(-x)
    return 4.0 * I * I / math.expm1(x)


def outcome_probabilities(setting, prep, gamma):
    """(p_plus, p_minus) of the projective measurement on the dephased probe:

        p_+- = (1 +- a1 e^{-Gamma} sin(theta)) / 2.
    """
    if gamma < 0.0:
        raise ValueError("gamma must be nonnegative")
    b = setting.a1 * math.exp(-gamma) * math.sin(prep.theta)
    return 0.5 * (1.0 + b), 0.5 * (1.0 - b)


def classical_fisher(setting, prep, gamma, dgamma_dT):
    """Fisher information of the two-outcome measurement.

    F = beta (dGamma/dT)^2 e^{-2 Gamma} / (1 - beta e^{-2 Gamma}) with
    beta = (a1 sin theta)^2.  The denominator is assembled as
    (1 - beta) + beta (1 - e^{-2 Gamma}) so it vanishes only in the
    exactly singular case beta = 1, Gamma = 0, where the limit is 0
    when dGamma/dT = 0 (the physical t = 0 point) and infinite
    otherwise.
    """
    if gamma < 0.0:
        raise ValueError("gamma must be nonnegative")
    beta = (setting.a1 * math.sin(prep.theta)) ** 2
    denom = (1.0 - beta) + beta * (-math.expm1(-2.0 * gamma))
    if denom == 0.0:
        return 0.0 if dgamma_dT == 0.0 else math.inf
    return beta * dgamma_dT * dgamma_dT * math.exp(-2.0 * gamma) / denom
