"""Scalar maximisation of the QFI over time or temperature.

The objective can be flat over decades (super-Ohmic saturation), so the
search is gradient-free: a coarse log-spaced grid locates the best
cell, golden-section refines it.  A run is classified as a Plateau
instead when the grid maximum sits in the final 5 percent of the
bracket and the end-of-bracket relative slope

    (f(hi) - f(0.9 hi)) / (f(hi) * 0.1 * hi)

falls below the configured threshold; the reported location is then
the earliest grid point within (1 - threshold) of the end value, i.e.
the onset of saturation.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from .dephasing import decoherence_factor, decoherence_factor_dT
from .metrology import qfi_dephasing
from .quadrature import QuadratureConfig

__all__ = [
    "OptimumKind",
    "OptimumResult",
    "OptimizerConfig",
    "maximize_scalar",
    "optimal_time",
    "optimal_temperature",
]

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class OptimumKind(enum.Enum):
    INTERIOR_MAXIMUM = "InteriorMaximum"
    PLATEAU = "Plateau"


@dataclass(frozen=True)
class OptimumResult:
    x_opt: float
    f_opt: float
    kind: OptimumKind
    plateau_onset: float | None = None


@dataclass(frozen=True)
class OptimizerConfig:
    """Bracket and tolerances for the coarse-grid + golden-section search."""

    bracket_lo: float
    bracket_hi: float
    x_tol: float = 1e-3
    plateau_rel_slope: float = 1e-4
    grid_points: int = 200

    def __post_init__(self):
        if not (0.0 < self.bracket_lo < self.bracket_hi):
            raise ValueError("need 0 < bracket_lo < bracket_hi (log-spaced grid)")
        if not (self.x_tol > 0.0 and self.plateau_rel_slope > 0.0):
            raise ValueError("tolerances must be positive")
        if self.grid_points < 3:
            raise ValueError("grid_points must be at least 3")


def _checked(f, x):
    v = f(x)
    if not math.isfinite(v):
        raise ValueError(f"objective returned non-finite value {v!r} at x = {x!r}")
    return v


def _golden_max(f, a, b, fa, fb, x_tol, best):
    """Golden-section ascent on [a, b]; returns the best evaluated point."""
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc = _checked(f, c)
    fd = _checked(f, d)
    for x, v in ((a, fa), (b, fb), (c, fc), (d, fd)):
        if v > best[1]:
            best = (x, v)
    while (b - a) > x_tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = _checked(f, c)
            if fc > best[1]:
                best = (c, fc)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = _checked(f, d)
            if fd > best[1]:
                best = (d, fd)
    return best


def maximize_scalar(f, cfg):
    """Locate the maximum of f on [bracket_lo, bracket_hi].

    Args:
        f: scalar function, finite on the bracket.
        cfg: OptimizerConfig.

    Returns:
        OptimumResult with kind InteriorMaximum (grid + golden-section
        refinement to x_tol) or Plateau (saturating objective, x_opt is
        the saturation onset).
    """
    xs = np.geomspace(cfg.bracket_lo, cfg.bracket_hi, cfg.grid_points)
    fs = np.array([_checked(f, x) for x in xs])
    fmax = fs.max()
    # ties within 1e-12 resolve to the smallest x for determinism
    tie_tol = 1e-12 * max(1.0, abs(fmax))
    i = int(np.flatnonzero(fs >= fmax - tie_tol)[0])

    f_hi = fs[-1]
    # the best value "occurs in the final 5%" when some grid point there
    # ties with the maximum (saturating objectives tie over whole decades,
    # so the tie-broken index itself may sit far from the end)
    final_window = xs >= cfg.bracket_hi - 0.05 * (cfg.bracket_hi - cfg.bracket_lo)
    in_final = bool(np.any(fs[final_window] >= fmax - tie_tol))
    if in_final and f_hi > 0.0:
        f_09 = _checked(f, 0.9 * cfg.bracket_hi)
        rel_slope = (f_hi - f_09) / (f_hi * 0.1 * cfg.bracket_hi)
        if rel_slope < cfg.plateau_rel_slope:
            onset_idx = int(np.flatnonzero(fs >= (1.0 - cfg.plateau_rel_slope) * f_hi)[0])
            onset = float(xs[onset_idx])
            return OptimumResult(
                x_opt=onset, f_opt=float(fmax), kind=OptimumKind.PLATEAU,
                plateau_onset=onset,
            )

    lo_i = max(i - 1, 0)
    hi_i = min(i + 1, len(xs) - 1)
    best = _golden_max(
        f, float(xs[lo_i]), float(xs[hi_i]), float(fs[lo_i]), float(fs[hi_i]),
        cfg.x_tol, (float(xs[i]), float(fs[i])),
    )
    return OptimumResult(x_opt=best[0], f_opt=best[1], kind=OptimumKind.INTERIOR_MAXIMUM)


def _qfi_of(spec, qcfg):
    def H(T, t):
        g = decoherence_factor(spec, T, t, qcfg)
        dg = decoherence_factor_dT(spec, T, t, qcfg)
        return qfi_dephasing(g, dg)

    return H


def optimal_time(spec, T, ocfg=None, qcfg=None):
    """Maximise t -> H(T, t) at fixed temperature.

    Sub-Ohmic and Ohmic baths have an interior optimum at every
    temperature; the super-Ohmic bath saturates (Plateau) below a
    crossover temperature and regains an interior optimum above it.
    """
    if not T > 0.0:
        raise ValueError("temperature must be positive")
    ocfg = ocfg or OptimizerConfig(bracket_lo=1e-2, bracket_hi=1e3)
    qcfg = qcfg or QuadratureConfig()
    H = _qfi_of(spec, qcfg)
    return maximize_scalar(lambda t: H(T, t), ocfg)


def optimal_temperature(spec, t, ocfg=None, qcfg=None):
    """Maximise T -> H(T, t) at fixed interaction time."""
    if not t > 0.0:
        raise ValueError("interaction time must be positive")
    ocfg = ocfg or OptimizerConfig(bracket_lo=1e-3, bracket_hi=1e2)
    qcfg = qcfg or QuadratureConfig()
    H = _qfi_of(spec, qcfg)
    return maximize_scalar(lambda T: H(T, t), ocfg)
