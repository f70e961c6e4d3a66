"""Batch toolkit for removing slow baseline drift from EOG recordings.

The core pipeline reconstructs a saccade-free baseline by re-leveling the
signal between detected saccades, estimates the drift trend from that
baseline's deepest wavelet approximation band, and subtracts the trend from
the raw record. Polynomial, high-pass, and plain-wavelet detrending are
included for comparison, together with a synthetic trial generator and a
gaze-accuracy evaluation harness.
"""

from .core import SampledSignal, SignalStats, differentiate, stats
from .blink import BlinkConfig, BlinkEvent, detect_blinks, remove_blinks
from .saccades import (
    DetectConfig,
    SaccadeEvent,
    detect_peaks,
    detect_window,
    detect_saccades,
    extract_saccades,
    exclude_saccades,
)
from .baseline import FloatingSegment, ReconstructConfig, reconstruct, segment_spans
from .wavelet import (
    FgdConfig,
    FgdResult,
    WaveletDecomposition,
    approx_band_edge_hz,
    approx_trend,
    dedrift,
    dwt_multilevel,
    fgd_pipeline,
    inverse_dwt,
    max_feasible_level,
)
from .methods import (
    METHOD_IDS,
    MethodResult,
    highpass_detrend,
    poly_detrend,
    run_method,
    wavelet_detrend_plain,
)
from .simulate import (
    DriftSpec,
    GroundTruth,
    TargetGuide,
    TrialScript,
    TrueBlink,
    TrueSaccade,
    default_drift_spec,
    default_target_guide,
    default_trial_script,
    inject_drift,
    random_drift_scenarios,
    synthesize,
)
from .evaluate import (
    EvalConfig,
    EvalReport,
    RegressionFit,
    SaccadeError,
    build_report,
    fit_regression,
    format_report,
    predict_gaze,
    saccade_errors,
)
from .config import ToolkitConfig, load_config, save_config

__version__ = "0.1.0"

__all__ = [
    "SampledSignal", "SignalStats", "differentiate", "stats",
    "BlinkConfig", "BlinkEvent", "detect_blinks", "remove_blinks",
    "DetectConfig", "SaccadeEvent", "detect_peaks", "detect_window",
    "detect_saccades", "extract_saccades", "exclude_saccades",
    "FloatingSegment", "ReconstructConfig", "reconstruct", "segment_spans",
    "FgdConfig", "FgdResult", "WaveletDecomposition", "approx_band_edge_hz",
    "approx_trend", "dedrift", "dwt_multilevel", "fgd_pipeline",
    "inverse_dwt", "max_feasible_level",
    "METHOD_IDS", "MethodResult", "highpass_detrend", "poly_detrend",
    "run_method", "wavelet_detrend_plain",
    "DriftSpec", "GroundTruth", "TargetGuide", "TrialScript", "TrueBlink",
    "TrueSaccade", "default_drift_spec", "default_target_guide",
    "default_trial_script", "inject_drift", "random_drift_scenarios",
    "synthesize",
    "EvalConfig", "EvalReport", "RegressionFit", "SaccadeError",
    "build_report", "fit_regression", "format_report", "predict_gaze",
    "saccade_errors",
    "ToolkitConfig", "load_config", "save_config",
]
