"""Quantized hybrid analog/digital precoding simulator for massive MIMO.

Sub-connected vs fully-connected phase-shifter networks with realistic
divider/combiner dissipation, limited-feedback digital precoding with
random and correlation-shaped codebooks, a reproducible Monte-Carlo
engine, and the matching closed-form performance expressions.
"""

from ._kernels import BACKEND as kernel_backend
from .analog import AnalogPrecoder, analog_precoder, quantize_phase
from .channels import (
    FULL,
    SUB,
    ChannelMatrix,
    Rng,
    SystemConfig,
    mmwave_channel,
    rayleigh_channel,
    ula_response,
)
from .feedback import (
    CORR,
    RVQ,
    Codebook,
    CorrelationMatrix,
    corr_codebook,
    distortion,
    effective_channels,
    empirical_correlation,
    rvq_codebook,
    select_codeword,
    theoretical_correlation,
)
from .linalg import gram_inverse, psd_sqrt
from .metrics import LinkResult, radiated_power_fraction, sinr_per_user
from .precoding import DigitalPrecoder, mrt_precoder, zf_precoder
from .runner import (
    ResultRow,
    ScenarioConfig,
    fully_digital_baseline,
    run_scenario,
    run_trial,
    scenario_from_dict,
    scenario_from_json,
    write_csv,
)
from .figures import reproduce_figure

__version__ = "0.1.0"

__all__ = [
    "AnalogPrecoder",
    "ChannelMatrix",
    "Codebook",
    "CorrelationMatrix",
    "CORR",
    "DigitalPrecoder",
    "FULL",
    "LinkResult",
    "ResultRow",
    "Rng",
    "RVQ",
    "ScenarioConfig",
    "SUB",
    "SystemConfig",
    "analog_precoder",
    "corr_codebook",
    "distortion",
    "effective_channels",
    "empirical_correlation",
    "fully_digital_baseline",
    "gram_inverse",
    "kernel_backend",
    "mmwave_channel",
    "mrt_precoder",
    "psd_sqrt",
    "quantize_phase",
    "radiated_power_fraction",
    "rayleigh_channel",
    "reproduce_figure",
    "rvq_codebook",
    "run_scenario",
    "run_trial",
    "scenario_from_dict",
    "scenario_from_json",
    "select_codeword",
    "sinr_per_user",
    "theoretical_correlation",
    "ula_response",
    "write_csv",
    "zf_precoder",
    "__version__",
]
