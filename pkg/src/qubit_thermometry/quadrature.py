"""Adaptive Gauss-Kronrod quadrature tailored to the bath integrals.

Every integral in this package has the shape

    I = int_0^upper  w^(p-1) * phi(w) dw

with phi smooth and bounded at w = 0 and p > 0, possibly oscillating
like cos(w*t) at frequency t.  The power-law endpoint is removed
exactly by the substitution u = (w/a)^p on a leading panel (0, a], and
the remaining range [a, upper] starts from panels aligned with the
half-period pi/t of the oscillation, so a 15-point rule resolves each
half-wave.  Panels are then bisected adaptively, all evaluations
vectorised over panels and over an optional batch of integrand outputs
(e.g. one decoherence factor per temperature on shared panels).
"""

from dataclasses import dataclass

import numpy as np

__all__ = ["QuadratureConfig", "QuadratureError", "adaptive_panels", "power_law_integral"]

# 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule
# (QUADPACK dqk15 constants).
_XK = np.array([
    -0.991455371120812639206854697526329,
    -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926,
    -0.741531185599394439863864773280788,
    -0.586087235467691130294144838258730,
    -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245,
    0.0,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329,
])
_WK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970,
])
_GAUSS_IDX = np.array([1, 3, 5, 7, 9, 11, 13])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
    0.381830050505118944950369775488975,
    0.279705391489276667901467771423780,
    0.129484966168869693270611432679082,
])


@dataclass(frozen=True)
class QuadratureConfig:
    """Accuracy knobs for the decoherence integrals.

    The defaults are two orders tighter than any tolerance asserted
    downstream; omega_max = 60 bounds the neglected tail below 1e-26
    of the integrand scale (exp(-60)).
    """

    abs_tol: float = 1e-10
    rel_tol: float = 1e-8
    max_panels: int = 50_000
    omega_max: float = 60.0

    def __post_init__(self):
        if not (self.abs_tol > 0.0 and self.rel_tol > 0.0):
            raise ValueError("abs_tol and rel_tol must be positive")
        if self.max_panels < 1:
            raise ValueError("max_panels must be a positive integer")
        if self.omega_max < 40.0:
            raise ValueError("omega_max must be >= 40")


class QuadratureError(RuntimeError):
    """Raised when the panel budget is exhausted before convergence.

    Carries the partial value and the error estimate at the point of
    failure so callers can decide whether the partial result is usable.
    """

    def __init__(self, message, partial_value, error_estimate):
        super().__init__(
            f"{message} (partial value {partial_value!r}, "
            f"estimated error {error_estimate!r})"
        )
        self.partial_value = partial_value
        self.error_estimate = error_estimate


def _apply_rule(f, lo, hi):
    """Evaluate the G7/K15 pair on a batch of panels.

    f maps an (n_panels, 15) node array to (n_panels, 15) or
    (n_panels, 15, k) values.  Returns Kronrod sums and |K15 - G7|
    error estimates, both shaped (n_panels, k).
    """
    c = 0.5 * (lo + hi)
    h = 0.5 * (hi - lo)
    fx = np.asarray(f(c[:, None] + h[:, None] * _XK[None, :]), dtype=float)
    if fx.ndim == 2:
        fx = fx[:, :, None]
    kron = h[:, None] * np.einsum("pnk,n->pk", fx, _WK)
    gauss = h[:, None] * np.einsum("pnk,n->pk", fx[:, _GAUSS_IDX, :], _WG)
    return kron, np.abs(kron - gauss)


def adaptive_panels(f, edges, abs_tol, rel_tol, max_panels):
    """Adaptive bisection over an initial panel decomposition.

    Each sweep bisects every panel whose error exceeds its fair share
    tol/(2 * n_panels) of the remaining budget; since the total error
    cannot exceed the per-panel budget times n_panels, a non-converged
    state always selects at least one panel.  Returns (values, errors,
    n_panels) with values/errors shaped (k,) for k integrand outputs.
    """
    edges = np.asarray(edges, dtype=float)
    lo, hi = edges[:-1].copy(), edges[1:].copy()
    if lo.size > max_panels:
        raise QuadratureError("initial panels exceed max_panels", None, None)
    vals, errs = _apply_rule(f, lo, hi)
    while True:
        total = vals.sum(axis=0)
        toterr = errs.sum(axis=0)
        tol = np.maximum(abs_tol, rel_tol * np.abs(total))
        if np.all(toterr <= tol):
            return total, toterr, lo.size
        split = (errs > tol[None, :] / (2.0 * lo.size)).any(axis=1)
        if not split.any():  # numerical stalemate: split the worst panel
            split[int(np.argmax(errs.max(axis=1)))] = True
        if lo.size + split.sum() > max_panels:
            raise QuadratureError("max_panels exceeded", total, toterr)
        mid = 0.5 * (lo[split] + hi[split])
        new_lo = np.concatenate([lo[split], mid])
        new_hi = np.concatenate([mid, hi[split]])
        new_vals, new_errs = _apply_rule(f, new_lo, new_hi)
        lo = np.concatenate([lo[~split], new_lo])
        hi = np.concatenate([hi[~split], new_hi])
        vals = np.concatenate([vals[~split], new_vals], axis=0)
        errs = np.concatenate([errs[~split], new_errs], axis=0)


def power_law_integral(phi, power, cfg, osc_period=None, upper=None):
    """Integrate w^(power-1) * phi(w) over (0, upper].

    phi must accept ndarray arguments of any shape and may return an
    extra trailing axis of batched outputs.  osc_period, when given,
    is the half-period pi/t of the integrand oscillation and seeds the
    initial panel edges on [a, upper].

    Returns (value, error_estimate); both scalars, or (k,) arrays for
    batched phi.
    """
    if upper is None:
        upper = cfg.omega_max
    a = min(0.1, osc_period) if osc_period is not None else 0.1
    a = min(a, 0.5 * upper)
    inv_p = 1.0 / power
    scale = a ** power / power

    def leading(u):
        return scale * np.asarray(phi(a * np.power(u, inv_p)))

    v1, e1, _ = adaptive_panels(
        leading, np.linspace(0.0, 1.0, 5), 0.5 * cfg.abs_tol, 0.5 * cfg.rel_tol,
        cfg.max_panels,
    )

    def tail(w):
        fw = np.asarray(phi(w))
        wp = np.power(w, power - 1.0)
        return (wp[..., None] if fw.ndim > wp.ndim else wp) * fw

    if osc_period is not None and osc_period < (upper - a):
        k_lo = int(np.ceil(a / osc_period)) + 1
        k_hi = int(np.floor(upper / osc_period))
        inner = np.arange(k_lo, k_hi + 1) * osc_period
        edges = np.concatenate([[a], inner[(inner > a) & (inner < upper)], [upper]])
    else:
        edges = np.geomspace(a, upper, 17)
    v2, e2, _ = adaptive_panels(
        tail, edges, 0.5 * cfg.abs_tol, 0.5 * cfg.rel_tol, cfg.max_panels,
    )
    value = v1 + v2
    err = e1 + e2
    if value.size == 1:
        return float(value[0]), float(err[0])
    return value, err
