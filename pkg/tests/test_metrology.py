import math

import numpy as np
import pytest
from scipy import integrate

from qubit_thermometry.bath import OhmicSpectrum
from qubit_thermometry.dephasing import (
    ProbePreparation,
    decoherence_factor,
    decoherence_factor_dT,
    decoherence_factor_profile,
    evolved_state,
)
from qubit_thermometry.metrology import (
    DegenerateSpectrumError,
    MeasurementSetting,
    classical_fisher,
    decoherence_factor_high_temp,
    high_temp_integral,
    oscillatory_kernel,
    outcome_probabilities,
    qfi_dephasing,
    qfi_general_2x2,
    qfi_high_temp,
    qfi_low_temp_ohmic,
    qfi_point,
    qsnr,
)
from qubit_thermometry.quadrature import QuadratureConfig
from qubit_thermometry.rng import SplitMix64


def rel(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


TIGHT = QuadratureConfig(abs_tol=1e-13, rel_tol=1e-12)
X_MEAS = MeasurementSetting(1.0, 0.0, 0.0)
OPT_PREP = ProbePreparation(math.pi / 2.0)


def dephasing_state_family(spec, T, t, theta, h):
    """theta-family state_at callable with shared-panel Gamma evaluations."""
    temps = (T - h, T, T + h)
    gammas = decoherence_factor_profile(spec, temps, t, TIGHT)
    gamma_map = dict(zip(temps, (float(g) for g in gammas)))
    prep = ProbePreparation(theta)
    return lambda TT: evolved_state(prep, gamma_map[TT])


class TestQfiDephasing:
    def test_direct_substitution(self):
        # e^{2 ln 2} - 1 = 3
        assert rel(qfi_dephasing(math.log(2.0), 1.0), 1.0 / 3.0) <= 1e-14

    def test_no_interaction_no_information(self):
        assert qfi_dephasing(0.0, 0.0) == 0.0

    def test_small_gamma_series_limit(self):
        g = 1e-13
        assert rel(qfi_dephasing(g, 0.5), 0.25 / (2.0 * g)) <= 1e-12

    def test_negative_inputs_rejected(self):
        with pytest.raises(ValueError):
            qfi_dephasing(-0.1, 1.0)
        with pytest.raises(ValueError):
            qfi_dephasing(0.1, -1.0)

    def test_huge_gamma_underflows_to_zero(self):
        assert qfi_dephasing(400.0, 1.0) == 0.0


class TestQfiGeneral2x2:
    def test_matches_closed_form_at_spec_point(self):
        spec = OhmicSpectrum(1.0)
        T, t = 0.5, 2.0
        h = 1e-5 * T
        closed = qfi_dephasing(
            decoherence_factor(spec, T, t), decoherence_factor_dT(spec, T, t)
        )
        eigen = qfi_general_2x2(dephasing_state_family(spec, T, t, math.pi / 2.0, h), T, h)
        assert rel(eigen, closed) <= 1e-6

    def test_pole_family_carries_no_information(self):
        spec = OhmicSpectrum(1.0)
        T, t = 0.5, 2.0
        h = 1e-5 * T
        value = qfi_general_2x2(dephasing_state_family(spec, T, t, 0.0, h), T, h)
        assert abs(value) <= 1e-20

    def test_quarter_pi_less_than_half_pi(self):
        spec = OhmicSpectrum(1.0)
        T, t = 0.5, 2.0
        h = 1e-5 * T
        h_quarter = qfi_general_2x2(dephasing_state_family(spec, T, t, math.pi / 4.0, h), T, h)
        h_half = qfi_general_2x2(dephasing_state_family(spec, T, t, math.pi / 2.0, h), T, h)
        assert h_quarter < h_half

    def test_matches_bloch_vector_formula_with_rotating_eigenvectors(self):
        # independent oracle: H = |dr|^2 + (r . dr)^2 / (1 - |r|^2) for
        # r = (e^-G sin(theta), 0, cos(theta)), dr = (-G' e^-G sin(theta), 0, 0)
        spec = OhmicSpectrum(3.0)
        T, t, theta = 1.5, 0.8, math.pi / 4.0
        h = 1e-5 * T
        g = decoherence_factor(spec, T, t)
        dg = decoherence_factor_dT(spec, T, t)
        e = math.exp(-g)
        sin2 = math.sin(theta) ** 2
        bloch = dg ** 2 * e * e * sin2 + (dg * e * e * sin2) ** 2 / (
            1.0 - e * e * sin2 - math.cos(theta) ** 2
        )
        eigen = qfi_general_2x2(dephasing_state_family(spec, T, t, theta, h), T, h)
        assert rel(eigen, bloch) <= 1e-6

    def test_degenerate_spectrum_flagged(self):
        # fully mixed family: eigenvalues 1/2, 1/2 at every temperature
        prep = ProbePreparation(math.pi / 2.0)
        family = lambda TT: evolved_state(prep, 50.0)
        with pytest.raises(DegenerateSpectrumError):
            qfi_general_2x2(family, 1.0, 1e-5)


class TestQsnr:
    def test_trivial_values(self):
        assert qsnr(1.0, 0.5) == 0.5
        assert qsnr(2.0, 0.0) == 0.0

    def test_qfi_point_packs_q_exactly(self):
        res = qfi_point(OhmicSpectrum(1.0), 0.5, 2.0)
        assert res.Q == 0.5 * 0.5 * res.H
        assert rel(res.H, 0.22938987453571683) <= 1e-9  # frozen scipy oracle

    def test_validation(self):
        with pytest.raises(ValueError):
            qsnr(0.0, 1.0)
        with pytest.raises(ValueError):
            qsnr(1.0, -0.5)


class TestLowTempOhmic:
    def test_vanishes_at_zero_temperature(self):
        value = qfi_low_temp_ohmic(1e-8, 3.0)
        assert 0.0 < value < 1e-12

    def test_finite_and_positive(self):
        assert qfi_low_temp_ohmic(0.005, 10.0) > 0.0
        assert qfi_low_temp_ohmic(0.005, 20.0) > 0.0

    def test_matches_quadrature_in_deep_cold_regime(self):
        # the formula's leading deficit is ~4.4*T relative, so percent
        # agreement needs T ~ 2e-3 and below
        spec = OhmicSpectrum(1.0)
        for t in (1.0, 5.0, 10.0):
            exact = qfi_point(spec, 0.002, t).H
            assert rel(qfi_low_temp_ohmic(0.002, t), exact) <= 1e-2

    def test_series_branch_continuity(self):
        # across the x = pi t T = 0.1 series switch
        below = qfi_low_temp_ohmic(0.1 / math.pi / 1.0 - 1e-9, 1.0)
        above = qfi_low_temp_ohmic(0.1 / math.pi / 1.0 + 1e-9, 1.0)
        assert rel(below, above) <= 1e-6

    def test_validation(self):
        with pytest.raises(ValueError):
            qfi_low_temp_ohmic(0.0, 1.0)
        with pytest.raises(ValueError):
            qfi_low_temp_ohmic(0.01, 0.0)


class TestOscillatoryKernel:
    def test_unity_at_zero_time(self):
        for s in (0.5, 1.0, 2.0, 3.0):
            assert oscillatory_kernel(s, 0.0) == 1.0

    def test_s_two_is_identically_one(self):
        assert rel(oscillatory_kernel(2.0, 7.0), 1.0) <= 1e-14

    def test_super_ohmic_half(self):
        # (1+1)^(-1/2) cos(arctan 1) = 1/2
        assert rel(oscillatory_kernel(3.0, 1.0), 0.5) <= 1e-14

    def test_negative_time_rejected(self):
        with pytest.raises(ValueError):
            oscillatory_kernel(1.0, -1.0)


class TestHighTempPieces:
    @pytest.mark.parametrize("s", [2.5, 3.0, 4.0])
    def test_closed_form_identity_verified_against_quadrature(self, s):
        # int w^(s-3) e^-w (1-cos wt) dw = Gamma(s-2)(1 - K(s,t)) for s > 2
        t = 1.5
        closed = high_temp_integral(OhmicSpectrum(s), t)
        oracle, _ = integrate.quad(
            lambda w: w ** (s - 3.0) * math.exp(-w) * (1.0 - math.cos(w * t)),
            0.0, 120.0, epsabs=1e-14, epsrel=1e-13, limit=800,
        )
        assert rel(closed, oracle) <= 1e-10

    def test_sub_critical_exponent_uses_quadrature(self):
        # s=1: int w^-2 e^-w (1-cos wt) dw = t arctan t - ln(1+t^2)/2
        t = 2.0
        closed = t * math.atan(t) - 0.5 * math.log1p(t * t)
        assert rel(high_temp_integral(OhmicSpectrum(1.0), t), closed) <= 1e-8

    def test_gamma_high_temp_values(self):
        assert decoherence_factor_high_temp(OhmicSpectrum(3.0), 10.0, 0.0) == 0.0
        assert rel(decoherence_factor_high_temp(OhmicSpectrum(3.0), 10.0, 1.0), 10.0) <= 1e-12
        t = 2.0
        expected = 2.0 * 10.0 * (t * math.atan(t) - 0.5 * math.log1p(t * t))
        assert rel(decoherence_factor_high_temp(OhmicSpectrum(1.0), 10.0, t), expected) <= 1e-8

    def test_qfi_high_temp_values(self):
        assert qfi_high_temp(OhmicSpectrum(3.0), 10.0, 0.0) == 0.0
        # s=3, T=10, t=1: 4 (1/2)^2 / (e^20 - 1)
        value = qfi_high_temp(OhmicSpectrum(3.0), 10.0, 1.0)
        assert rel(value, 1.0 / math.expm1(20.0)) <= 1e-10

    def test_qfi_high_temp_consistency_at_t20(self):
        spec = OhmicSpectrum(1.0)
        exact = qfi_point(spec, 20.0, 1.0).H
        assert rel(qfi_high_temp(spec, 20.0, 1.0), exact) <= 2e-2

    def test_qfi_high_temp_deviation_decays_with_temperature(self):
        spec = OhmicSpectrum(3.0)
        devs = []
        for T in (20.0, 100.0):
            exact = qfi_point(spec, T, 0.8).H
            devs.append(rel(qfi_high_temp(spec, T, 0.8), exact))
        assert devs[1] < devs[0]


class TestOutcomeProbabilities:
    def test_eigenstate_of_measured_observable(self):
        p_plus, p_minus = outcome_probabilities(X_MEAS, OPT_PREP, 0.0)
        assert math.isclose(p_plus, 1.0) and math.isclose(p_minus, 0.0)

    def test_orthogonal_direction_blind_to_gamma(self):
        z_meas = MeasurementSetting(0.0, 0.0, 1.0)
        for gamma in (0.0, 0.7, 5.0):
            p_plus, p_minus = outcome_probabilities(z_meas, OPT_PREP, gamma)
            assert math.isclose(p_plus, 0.5) and math.isclose(p_minus, 0.5)

    def test_direct_substitution(self):
        p_plus, p_minus = outcome_probabilities(X_MEAS, OPT_PREP, math.log(2.0))
        assert math.isclose(p_plus, 0.75) and math.isclose(p_minus, 0.25)

    def test_normalisation(self):
        gen = SplitMix64(5)
        for _ in range(20):
            v = np.array([gen.next_float() - 0.5 for _ in range(3)])
            v /= math.sqrt(v @ v)
            setting = MeasurementSetting(*v)
            theta = math.pi * gen.next_float()
            p_plus, p_minus = outcome_probabilities(
                setting, ProbePreparation(theta), 2.0 * gen.next_float()
            )
            assert math.isclose(p_plus + p_minus, 1.0)
            assert 0.0 <= p_plus <= 1.0


class TestClassicalFisher:
    def test_insensitive_direction(self):
        z_meas = MeasurementSetting(0.0, 0.0, 1.0)
        assert classical_fisher(z_meas, OPT_PREP, 1.0, 1.0) == 0.0

    def test_optimal_measurement_identity(self):
        for g, dg in ((0.2, 0.3), (math.log(2.0), 1.0), (3.0, 2.0), (8.0, 0.5)):
            F = classical_fisher(X_MEAS, OPT_PREP, g, dg)
            assert rel(F, qfi_dephasing(g, dg)) <= 1e-12

    def test_half_amplitude_value_and_fd_oracle(self):
        # a1 = 1/2, theta = pi/2, Gamma = ln 2, dGamma = 1 -> F = 1/15
        setting = MeasurementSetting(0.5, 0.0, math.sqrt(3.0) / 2.0)
        F = classical_fisher(setting, OPT_PREP, math.log(2.0), 1.0)
        assert rel(F, 1.0 / 15.0) <= 1e-12
        # finite-difference Fisher of the two-point distribution with
        # Gamma(T) = ln 2 + (T - T0), i.e. dGamma/dT = 1
        eps = 1e-6
        p_hi, _ = outcome_probabilities(setting, OPT_PREP, math.log(2.0) + eps)
        p_lo, _ = outcome_probabilities(setting, OPT_PREP, math.log(2.0) - eps)
        dp = (p_hi - p_lo) / (2.0 * eps)
        p, q = outcome_probabilities(setting, OPT_PREP, math.log(2.0))
        fd_fisher = dp * dp / p + dp * dp / q
        assert rel(F, fd_fisher) <= 1e-8

    def test_quantum_bound_on_random_settings(self):
        gen = SplitMix64(2718)
        for _ in range(100):
            v = np.array([gen.next_float() - 0.5 for _ in range(3)])
            v /= math.sqrt(v @ v)
            setting = MeasurementSetting(*v)
            theta = math.pi * gen.next_float()
            g = 3.0 * gen.next_float() + 1e-3
            dg = 2.0 * gen.next_float()
            F = classical_fisher(setting, ProbePreparation(theta), g, dg)
            H = qfi_dephasing(g, dg)
            assert F <= H * (1.0 + 1e-12)

    def test_singular_point(self):
        assert classical_fisher(X_MEAS, OPT_PREP, 0.0, 0.0) == 0.0
        assert classical_fisher(X_MEAS, OPT_PREP, 0.0, 1.0) == math.inf

    def test_unit_norm_enforced(self):
        with pytest.raises(ValueError):
            MeasurementSetting(1.0, 0.5, 0.0)
