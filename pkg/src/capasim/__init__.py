"""SEP simulation and analytical bounds for 1-bit quantized array receivers."""

__version__ = "0.1.0"

from .core import (
    AlignmentKind,
    ApertureSpec,
    Architecture,
    ChannelDraw,
    Quantization,
    QPSK_SYMBOLS,
    RegimeKind,
    Scenario,
    ScenarioError,
    SepEstimate,
    derive_stream,
    qpsk_symbol,
)
from .config import ConfigError, load_scenario, save_scenario, scenario_digest
from .channel import ModeSpectrum, draw_channel, effective_model, mode_spectrum
from .bounds import (
    BoundCurve,
    BoundKind,
    GammaParams,
    capa_los_sep,
    capa_rayleigh_sep_mma,
    gamma_params,
    k_iid,
    mma_integral,
    q_function,
    simo_los_sep,
    simo_rayleigh_sep_exact,
    unquantized_awgn_sep,
)
from .detect import mrc_detect, quantize_1bit, run_trial, unquantized_mrc_detect
from .mc import SweepResult, estimate_sep, sweep, wilson_interval

__all__ = [
    "AlignmentKind", "ApertureSpec", "Architecture", "BoundCurve", "BoundKind",
    "ChannelDraw", "ConfigError", "GammaParams", "ModeSpectrum", "QPSK_SYMBOLS",
    "Quantization", "RegimeKind", "Scenario", "ScenarioError", "SepEstimate",
    "SweepResult", "capa_los_sep", "capa_rayleigh_sep_mma", "derive_stream",
    "draw_channel", "effective_model", "estimate_sep", "gamma_params", "k_iid",
    "load_scenario", "mma_integral", "mode_spectrum", "mrc_detect",
    "q_function", "qpsk_symbol", "quantize_1bit", "run_trial", "save_scenario",
    "scenario_digest", "simo_los_sep", "simo_rayleigh_sep_exact", "sweep",
    "unquantized_awgn_sep", "unquantized_mrc_detect", "wilson_interval",
]
