import math

import pytest

from qubit_thermometry.bath import OhmicSpectrum
from qubit_thermometry.dephasing import decoherence_factor
from qubit_thermometry.estimate import (
    EstimationError,
    EstimationRun,
    cramer_rao_check,
    invert_decoherence,
    mle_temperature,
    simulate_outcomes,
)
from qubit_thermometry.metrology import qfi_point

SPEC = OhmicSpectrum(1.0)
# QFI-optimal interaction time for (s=1, T=0.5); frozen from optimal_time
T_OPT = 1.4808381909749897


class TestSimulateOutcomes:
    def test_certain_outcomes(self):
        assert simulate_outcomes(1.0, 100, 7) == 100
        assert simulate_outcomes(0.0, 100, 7) == 0

    def test_binomial_concentration(self):
        n = simulate_outcomes(0.75, 10 ** 6, 42)
        # +-3 sigma band, sigma = sqrt(p(1-p)/M)
        assert 0.7487 <= n / 10 ** 6 <= 0.7513

    def test_deterministic_per_seed(self):
        assert simulate_outcomes(0.6, 5000, 1) == simulate_outcomes(0.6, 5000, 1)
        assert simulate_outcomes(0.6, 5000, 1) != simulate_outcomes(0.6, 5000, 2)

    def test_validation(self):
        with pytest.raises(ValueError):
            simulate_outcomes(1.5, 10, 0)
        with pytest.raises(ValueError):
            simulate_outcomes(0.5, 0, 0)


class TestInversion:
    def test_noiseless_round_trip(self):
        t = 2.0
        gamma = decoherence_factor(SPEC, 0.5, t)
        t_hat = invert_decoherence(gamma, SPEC, t)
        assert abs(t_hat - 0.5) <= 1e-8

    def test_target_below_vacuum_floor_is_degenerate(self):
        # Gamma(T -> 0, t) stays positive (vacuum part), so a smaller
        # target has no solution in the bracket
        t = 2.0
        floor = decoherence_factor(SPEC, 1e-6, t)
        assert invert_decoherence(0.5 * floor, SPEC, t) is None

    def test_target_above_bracket_is_degenerate(self):
        t = 2.0
        ceiling = decoherence_factor(SPEC, 1e4, t)
        assert invert_decoherence(1.1 * ceiling, SPEC, t) is None


class TestMleTemperature:
    def test_majority_minus_is_degenerate(self):
        assert mle_temperature(50, 100, SPEC, 2.0) is None
        assert mle_temperature(30, 100, SPEC, 2.0) is None

    def test_rational_approximation_round_trip(self):
        t = 2.0
        gamma = decoherence_factor(SPEC, 0.5, t)
        p0 = 0.5 * (1.0 + math.exp(-gamma))
        M = 10 ** 8
        t_hat = mle_temperature(round(p0 * M), M, SPEC, t)
        assert abs(t_hat - 0.5) <= 1e-5

    def test_crb_scale_concentration_single_experiment(self):
        M = 10 ** 4
        gamma = decoherence_factor(SPEC, 0.5, T_OPT)
        p_plus = 0.5 * (1.0 + math.exp(-gamma))
        n_plus = simulate_outcomes(p_plus, M, 7)
        t_hat = mle_temperature(n_plus, M, SPEC, T_OPT)
        H = qfi_point(SPEC, 0.5, T_OPT).H
        assert abs(t_hat - 0.5) <= 5.0 / math.sqrt(M * H)

    def test_validation(self):
        with pytest.raises(ValueError):
            mle_temperature(11, 10, SPEC, 1.0)


class TestCramerRaoCheck:
    def test_bit_reproducible(self):
        run = EstimationRun(true_T=0.5, t=2.0, M=1000, n_reps=40, seed=11)
        assert cramer_rao_check(run, SPEC) == cramer_rao_check(run, SPEC)

    def test_ratio_near_unity_smoke(self):
        run = EstimationRun(true_T=0.5, t=T_OPT, M=2000, n_reps=120, seed=11)
        report = cramer_rao_check(run, SPEC)
        assert 0.5 <= report.ratio <= 2.0
        noise = 3.0 * math.sqrt(2.0 / run.n_reps)
        assert report.variance >= report.crb * (1.0 - noise)

    def test_ratio_improves_with_shots(self):
        kwargs = dict(true_T=0.5, t=T_OPT, n_reps=150, seed=4)
        small = cramer_rao_check(EstimationRun(M=10, **kwargs), SPEC)
        large = cramer_rao_check(EstimationRun(M=10 ** 4, **kwargs), SPEC)
        assert abs(large.ratio - 1.0) < abs(small.ratio - 1.0)

    def test_degenerate_fraction_decays_with_shots(self):
        # t in the strong-dephasing zone so small M often sees p_hat <= 1/2
        kwargs = dict(true_T=0.5, t=4.0, n_reps=100, seed=21)
        small = cramer_rao_check(EstimationRun(M=10, **kwargs), SPEC)
        large = cramer_rao_check(EstimationRun(M=10 ** 4, **kwargs), SPEC)
        assert small.n_degenerate > 0
        assert large.n_degenerate < small.n_degenerate

    def test_optimal_time_minimises_crb(self):
        # crb = 1/(M H): H is maximal at t_opt among sampled times
        h_opt = qfi_point(SPEC, 0.5, T_OPT).H
        for t in (T_OPT / 3.0, 3.0 * T_OPT):
            assert qfi_point(SPEC, 0.5, t).H <= h_opt

    def test_single_shot_experiments_all_degenerate(self):
        run = EstimationRun(true_T=0.5, t=2.0, M=1, n_reps=10, seed=3)
        with pytest.raises(EstimationError):
            cramer_rao_check(run, SPEC)

    def test_auto_time_uses_optimizer(self):
        run = EstimationRun(true_T=0.5, t=None, M=500, n_reps=10, seed=5)
        report = cramer_rao_check(run, SPEC)
        assert abs(report.t - T_OPT) <= 1e-2

    def test_run_validation(self):
        with pytest.raises(ValueError):
            EstimationRun(true_T=0.0, t=1.0, M=10, n_reps=5, seed=0)
        with pytest.raises(ValueError):
            EstimationRun(true_T=0.5, t=-1.0, M=10, n_reps=5, seed=0)
        with pytest.raises(ValueError):
            EstimationRun(true_T=0.5, t=1.0, M=0, n_reps=5, seed=0)
        with pytest.raises(ValueError):
            EstimationRun(true_T=0.5, t=1.0, M=10, n_reps=0, seed=0)
