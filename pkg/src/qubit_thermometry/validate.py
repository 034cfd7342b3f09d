"""Self-contained invariant suite behind the `validate` CLI command.

Each check exercises one contract of the package (identities, oracle
equivalences, closed-form cross-checks) at desk scale; the whole suite
runs in well under a minute.  These are the fast counterparts of the
full test suite, runnable from an installed package without pytest.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import bath, dephasing, estimate, metrology, rng, specialfn
from .optimize import OptimizerConfig, optimal_time
from .quadrature import QuadratureConfig, power_law_integral

__all__ = ["CheckResult", "run_validation"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _rel(a, b):
    scale = max(abs(a), abs(b), 1e-300)
    return abs(a - b) / scale


def _fd_dgamma(spec, T, t, qcfg):
    # 5-point central difference on a shared-panel temperature profile
    h = 0.01 * T
    temps = [T - 2 * h, T - h, T + h, T + 2 * h]
    g = dephasing.decoherence_factor_profile(spec, temps, t, qcfg)
    return (g[0] - 8.0 * g[1] + 8.0 * g[2] - g[3]) / (12.0 * h)


def _checks():
    qcfg = QuadratureConfig()
    tight = QuadratureConfig(abs_tol=1e-13, rel_tol=1e-12)

    def special_functions():
        worst = 0.0
        for x in np.linspace(0.05, 99.0, 40):
            worst = max(worst, _rel(specialfn.gamma_fn(x + 1.0), x * specialfn.gamma_fn(x)))
            worst = max(
                worst,
                _rel(specialfn.polygamma(0, x + 1.0), specialfn.polygamma(0, x) + 1.0 / x),
            )
        anchors = (
            _rel(specialfn.gamma_fn(0.5), math.sqrt(math.pi)),
            _rel(specialfn.polygamma(1, 1.0), math.pi ** 2 / 6.0),
            abs(specialfn.coth_safe(-1.3) + specialfn.coth_safe(1.3)),
        )
        worst = max(worst, *anchors)
        return worst < 1e-10, f"worst identity error {worst:.2e}"

    def spectral_normalisation():
        worst = 0.0
        for s in (0.5, 1.0, 3.0):
            spec = bath.OhmicSpectrum(s)
            val, _ = power_law_integral(
                lambda w: bath.spectral_density(spec, w) / np.power(w, s - 1.0),
                s, qcfg,
            )
            worst = max(worst, _rel(val, specialfn.gamma_fn(s + 1.0)))
        return worst < 1e-8, f"worst normalisation error {worst:.2e}"

    def gamma_at_zero_time():
        vals = [
            dephasing.decoherence_factor(bath.OhmicSpectrum(s), T, 0.0, qcfg)
            for s in (0.5, 1.0, 3.0)
            for T in (0.1, 1.0)
        ]
        return all(v == 0.0 for v in vals), f"max |Gamma(T,0)| = {max(map(abs, vals)):.1e}"

    def gamma_monotone():
        spec = bath.OhmicSpectrum(1.0)
        ts = np.linspace(0.0, 20.0, 11)
        gs = [dephasing.decoherence_factor(spec, 0.5, t, qcfg) for t in ts]
        mono_t = all(b >= a - 1e-12 for a, b in zip(gs, gs[1:]))
        temps = (0.05, 0.5, 5.0)
        gT = [dephasing.decoherence_factor(spec, T, 3.0, qcfg) for T in temps]
        mono_T = all(b >= a for a, b in zip(gT, gT[1:]))
        return mono_t and mono_T, f"monotone in t: {mono_t}, in T: {mono_T}"

    def derivative_consistency():
        worst = 0.0
        for s, T, t in ((1.0, 0.5, 3.0), (0.5, 0.2, 5.0), (3.0, 2.0, 1.0)):
            spec = bath.OhmicSpectrum(s)
            d_quad = dephasing.decoherence_factor_dT(spec, T, t, qcfg)
            worst = max(worst, _rel(d_quad, _fd_dgamma(spec, T, t, tight)))
        return worst < 1e-5, f"worst FD mismatch {worst:.2e}"

    def zero_temperature_form():
        spec = bath.OhmicSpectrum(3.0)
        worst = 0.0
        for t in (1.0, 2.0):
            closed = 1.0 - (1.0 - t * t) / (1.0 + t * t) ** 2
            worst = max(worst, _rel(dephasing.decoherence_factor(spec, 1e-4, t, qcfg), closed))
        return worst < 1e-6, f"worst mismatch {worst:.2e}"

    def high_temp_gamma_ohmic():
        spec = bath.OhmicSpectrum(1.0)
        t, T = 2.0, 50.0
        closed = 2.0 * T * (t * math.atan(t) - 0.5 * math.log1p(t * t))
        err = _rel(dephasing.decoherence_factor(spec, T, t, qcfg), closed)
        return err < 1e-2, f"mismatch {err:.2e}"

    def saturation_closed_form():
        spec = bath.OhmicSpectrum(3.0)
        err = _rel(
            dephasing.saturation_value(spec, 1.0),
            dephasing.decoherence_factor(spec, 1.0, 1e3, qcfg),
        )
        return err < 1e-4, f"mismatch vs t=1e3 quadrature {err:.2e}"

    def high_temp_integral_identity():
        worst = 0.0
        for s in (2.5, 3.0, 4.0):
            spec = bath.OhmicSpectrum(s)
            closed = metrology.high_temp_integral(spec, 1.5)

            def phi(w):
                w = np.asarray(w)
                return 2.0 * np.sin(0.75 * w) ** 2 / (w * w) * np.exp(-w)

            quad, _ = power_law_integral(phi, s, qcfg, osc_period=math.pi / 1.5)
            worst = max(worst, _rel(closed, quad))
        return worst < 1e-8, f"worst identity error {worst:.2e}"

    def qfi_oracle_equivalence():
        worst = 0.0
        for s, T, t in ((1.0, 0.5, 2.0), (0.5, 0.2, 4.0), (3.0, 2.0, 0.7)):
            spec = bath.OhmicSpectrum(s)
            h = 1e-5 * max(T, 0.01)
            temps = {TT: None for TT in (T - h, T, T + h)}
            gs = dephasing.decoherence_factor_profile(spec, list(temps), t, tight)
            gmap = dict(zip(temps, gs))
            prep = dephasing.ProbePreparation(math.pi / 2.0)
            state_at = lambda TT: dephasing.evolved_state(prep, gmap[TT])
            closed = metrology.qfi_dephasing(
                dephasing.decoherence_factor(spec, T, t, qcfg),
                dephasing.decoherence_factor_dT(spec, T, t, qcfg),
            )
            worst = max(worst, _rel(metrology.qfi_general_2x2(state_at, T, h), closed))
        return worst < 1e-6, f"worst mismatch {worst:.2e}"

    def preparation_optimality():
        spec = bath.OhmicSpectrum(1.0)
        T, t = 0.5, 2.0
        h = 1e-5 * T
        temps = (T - h, T, T + h)
        gs = dephasing.decoherence_factor_profile(spec, temps, t, tight)
        gmap = dict(zip(temps, gs))

        def H_of(theta):
            prep = dephasing.ProbePreparation(theta)
            return metrology.qfi_general_2x2(
                lambda TT: dephasing.evolved_state(prep, gmap[TT]), T, h
            )

        h_star = H_of(math.pi / 2.0)
        grid_ok = all(H_of(th) <= h_star + 1e-12 for th in np.linspace(0.05, math.pi - 0.05, 11))
        return grid_ok, f"H(pi/2) = {h_star:.3e} dominates the theta grid: {grid_ok}"

    def measurement_identity():
        prep = dephasing.ProbePreparation(math.pi / 2.0)
        x_meas = metrology.MeasurementSetting(1.0, 0.0, 0.0)
        worst_eq = 0.0
        for g, dg in ((0.3, 0.7), (math.log(2.0), 1.0), (2.5, 0.2)):
            F = metrology.classical_fisher(x_meas, prep, g, dg)
            worst_eq = max(worst_eq, _rel(F, metrology.qfi_dephasing(g, dg)))
        gen = rng.SplitMix64(2024)
        bound_ok = True
        for _ in range(25):
            v = np.array([gen.next_float() - 0.5 for _ in range(3)])
            v /= math.sqrt(v @ v)
            theta = math.pi * gen.next_float()
            g = 3.0 * gen.next_float() + 1e-3
            dg = 2.0 * gen.next_float()
            F = metrology.classical_fisher(
                metrology.MeasurementSetting(*v), dephasing.ProbePreparation(theta), g, dg
            )
            H = metrology.qfi_dephasing(g, dg)
            bound_ok = bound_ok and F <= H * (1.0 + 1e-12)
        return worst_eq < 1e-12 and bound_ok, (
            f"identity error {worst_eq:.2e}, F<=H on random settings: {bound_ok}"
        )

    def low_temp_closed_form():
        spec = bath.OhmicSpectrum(1.0)
        T, t = 0.002, 5.0
        q = metrology.qfi_point(spec, T, t, qcfg)
        err = _rel(metrology.qfi_low_temp_ohmic(T, t), q.H)
        return err < 1e-2, f"mismatch {err:.2e} at T={T}"

    def high_temp_chain():
        worst = 0.0
        for s in (1.0, 3.0):
            spec = bath.OhmicSpectrum(s)
            for t in (0.5, 2.0):
                exact = metrology.qfi_point(spec, 100.0, t, qcfg).H
                worst = max(worst, _rel(metrology.qfi_high_temp(spec, 100.0, t, qcfg), exact))
        return worst < 2e-2, f"worst mismatch {worst:.2e} at T=100"

    def qsnr_universality():
        lo, hi = 1.0, 2.0  # bisect 2(e^x - 1) = x e^x (sign change on [1, 2])
        for _ in range(100):
            x = 0.5 * (lo + hi)
            if 2.0 * math.expm1(x) - x * math.exp(x) > 0.0:
                lo = x
            else:
                hi = x
        x = 0.5 * (lo + hi)
        q_star = x * x / (4.0 * math.expm1(x))
        ocfg = OptimizerConfig(bracket_lo=1e-2, bracket_hi=1e3, grid_points=120)
        worst = 0.0
        for s in (1.0, 3.0):
            res = optimal_time(bath.OhmicSpectrum(s), 100.0, ocfg, qcfg)
            worst = max(worst, abs(100.0 ** 2 * res.f_opt - q_star))
        return worst < 1e-3, f"worst |Q - Q*| = {worst:.2e} at T=100 (Q* = {q_star:.6f})"

    def rng_reproducibility():
        vec_ok = rng.substream_seeds(0, 3) == [
            0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F,
        ]
        n = estimate.simulate_outcomes(0.75, 10**6, 42)
        sigma = math.sqrt(0.75 * 0.25 / 10**6)
        conc_ok = abs(n / 10**6 - 0.75) < 3.0 * sigma
        return vec_ok and conc_ok, f"test vectors: {vec_ok}, binomial concentration: {conc_ok}"

    def estimator_round_trip():
        spec = bath.OhmicSpectrum(1.0)
        T0, t = 0.5, 2.0
        g0 = dephasing.decoherence_factor(spec, T0, t, qcfg)
        T_hat = estimate.invert_decoherence(g0, spec, t, qcfg)
        rt_err = abs(T_hat - T0)
        run = estimate.EstimationRun(true_T=0.5, t=2.0, M=400, n_reps=12, seed=7)
        r1 = estimate.cramer_rao_check(run, spec, qcfg)
        r2 = estimate.cramer_rao_check(run, spec, qcfg)
        return rt_err < 1e-8 and r1 == r2, (
            f"round-trip |T_hat - T| = {rt_err:.1e}, bit-reproducible: {r1 == r2}"
        )

    return [
        ("special-function identities", special_functions),
        ("spectral-density normalisation", spectral_normalisation),
        ("decoherence factor vanishes at t=0", gamma_at_zero_time),
        ("decoherence factor monotonicity", gamma_monotone),
        ("temperature derivative vs finite differences", derivative_consistency),
        ("zero-temperature closed form (s=3)", zero_temperature_form),
        ("high-temperature decoherence factor (s=1)", high_temp_gamma_ohmic),
        ("super-Ohmic saturation closed form", saturation_closed_form),
        ("high-temperature integral identity", high_temp_integral_identity),
        ("QFI closed form vs eigendecomposition", qfi_oracle_equivalence),
        ("optimal preparation at theta=pi/2", preparation_optimality),
        ("optimal measurement identity and bound", measurement_identity),
        ("low-temperature closed form (s=1, T=0.002)", low_temp_closed_form),
        ("high-temperature QFI chain (T=100)", high_temp_chain),
        ("QSNR universality (T=100)", qsnr_universality),
        ("reproducible RNG and binomial sampling", rng_reproducibility),
        ("estimator round-trip and reproducibility", estimator_round_trip),
    ]


def run_validation():
    """Execute every check; returns a list of CheckResult."""
    results = []
    for name, fn in _checks():
        try:
            passed, detail = fn()
        except Exception as exc:  # a crashing check is a failing check
            passed, detail = False, f"raised {type(exc).__name__}: {exc}"
        results.append(CheckResult(name=name, passed=bool(passed), detail=detail))
    return results
