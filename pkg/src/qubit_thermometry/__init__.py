"""Temperature estimation from single-qubit dephasing in Ohmic-family baths.

A probe qubit dephases in contact with a thermal environment whose
spectral density is J(w) = w^s e^{-w} (cutoff-rescaled units).  This
package computes the decoherence factor and its temperature
sensitivity, the quantum Fisher information and signal-to-noise ratio
of the induced thermometer, the optimal interaction times and
temperatures, and verifies that the Cramér-Rao bound is met by a
simulated measure-and-invert estimation pipeline.
"""

from .bath import OhmicityClass, OhmicSpectrum, classify, spectral_density
from .dephasing import (
    DephasingEvaluation,
    ProbePreparation,
    ProbeState,
    decoherence_factor,
    decoherence_factor_dT,
    decoherence_factor_dT_profile,
    decoherence_factor_profile,
    evaluate_dephasing,
    evolved_state,
    residual_coherence,
    saturation_value,
)
from .estimate import (
    EstimationError,
    EstimationReport,
    EstimationRun,
    cramer_rao_check,
    invert_decoherence,
    mle_temperature,
    simulate_outcomes,
)
from .metrology import (
    DegenerateSpectrumError,
    MeasurementSetting,
    QfiResult,
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
from .optimize import (
    OptimizerConfig,
    OptimumKind,
    OptimumResult,
    maximize_scalar,
    optimal_temperature,
    optimal_time,
)
from .quadrature import QuadratureConfig, QuadratureError, power_law_integral
from .rng import SplitMix64, substream_seeds, uniform_block
from .specialfn import coth_safe, csch2_safe, gamma_fn, polygamma
from .validate import CheckResult, run_validation

__version__ = "0.1.0"

__all__ = [
    "OhmicityClass", "OhmicSpectrum", "classify", "spectral_density",
    "DephasingEvaluation", "ProbePreparation", "ProbeState",
    "decoherence_factor", "decoherence_factor_dT",
    "decoherence_factor_profile", "decoherence_factor_dT_profile",
    "evaluate_dephasing", "evolved_state", "residual_coherence",
    "saturation_value",
    "EstimationError", "EstimationReport", "EstimationRun",
    "cramer_rao_check", "invert_decoherence", "mle_temperature",
    "simulate_outcomes",
    "DegenerateSpectrumError", "MeasurementSetting", "QfiResult",
    "classical_fisher", "decoherence_factor_high_temp",
    "high_temp_integral", "oscillatory_kernel", "outcome_probabilities",
    "qfi_dephasing", "qfi_general_2x2", "qfi_high_temp",
    "qfi_low_temp_ohmic", "qfi_point", "qsnr",
    "OptimizerConfig", "OptimumKind", "OptimumResult",
    "maximize_scalar", "optimal_temperature", "optimal_time",
    "QuadratureConfig", "QuadratureError", "power_law_integral",
    "SplitMix64", "substream_seeds", "uniform_block",
    "coth_safe", "csch2_safe", "gamma_fn", "polygamma",
    "CheckResult", "run_validation",
    "__version__",
]
