"""Reference de-drifting methods the pipeline is compared against:
polynomial fit subtraction, zero-phase Butterworth high-pass, and plain
wavelet detrending applied to the raw signal (no saccade handling).

Every method returns the same shape of result: the de-drifted signal plus
the trend it removed, with dedrifted + trend == input exactly.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.signal import butter, filtfilt

from .core import SampledSignal
from .wavelet import FgdConfig, approx_trend, dwt_multilevel, dedrift, fgd_pipeline

METHOD_IDS = ("fgd", "poly", "highpass", "wavelet")


@dataclass(frozen=True)
class MethodResult:
    method_id: str
    dedrifted: SampledSignal
    trend: SampledSignal


def poly_detrend(signal: SampledSignal, order: int = 5) -> MethodResult:
    """Least-squares polynomial fit to the raw signal, then subtract it.

    The fit runs on time normalized to [-1, 1] to keep the Vandermonde
    system well conditioned.
    """
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    n = signal.n
    if order >= n:
        raise ValueError(f"order {order} needs more than {n} samples")
    u = np.linspace(-1.0, 1.0, n) if n > 1 else np.zeros(1)
    V = np.vander(u, order + 1, increasing=True)
    coeffs, *_ = np.linalg.lstsq(V, signal.samples, rcond=None)
    trend = V @ coeffs
    return MethodResult(
        "poly",
        dedrifted=signal.with_samples(signal.samples - trend),
        trend=signal.with_samples(trend),
    )


def highpass_detrend(
    signal: SampledSignal, cutoff_hz: float = 0.3, order: int = 2
) -> MethodResult:
    """Zero-phase Butterworth high-pass; the trend is what the filter removed.

    filtfilt runs the filter forward and backward, so the effective magnitude
    response is |H|^2 and the phase is zero. The default pad length is far
    too short for sub-hertz cutoffs, so it is stretched to about three filter
    time constants.
    """
    if not 0 < cutoff_hz < signal.fs_hz / 2:
        raise ValueError(
            f"cutoff {cutoff_hz} Hz must lie in (0, {signal.fs_hz / 2}) Hz"
        )
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    b, a = butter(order, cutoff_hz, btype="highpass", fs=signal.fs_hz)
    padlen = min(signal.n - 1, int(3.0 * signal.fs_hz / cutoff_hz))
    out = filtfilt(b, a, signal.samples, padlen=padlen)
    return MethodResult(
        "highpass",
        dedrifted=signal.with_samples(out),
        trend=signal.with_samples(signal.samples - out),
    )


def wavelet_detrend_plain(
    signal: SampledSignal,
    level: int = 7,
    family: str = "db4",
    boundary_mode: str = "symmetric",
) -> MethodResult:
    """Approximation-band trend of the raw signal itself, then subtract."""
    decomp = dwt_multilevel(signal, level, family, boundary_mode)
    trend = approx_trend(decomp)
    return MethodResult("wavelet", dedrifted=dedrift(signal, trend), trend=trend)


def run_method(
    method_id: str,
    signal: SampledSignal,
    fgd_cfg: FgdConfig | None = None,
    poly_order: int = 5,
    cutoff_hz: float = 0.3,
    butter_order: int = 2,
) -> MethodResult:
    """Dispatch a method id to its implementation."""
    if method_id == "fgd":
        res = fgd_pipeline(signal, fgd_cfg or FgdConfig())
        return MethodResult("fgd", dedrifted=res.dedrifted, trend=res.trend)
    if method_id == "poly":
        return poly_detrend(signal, poly_order)
    if method_id == "highpass":
        return highpass_detrend(signal, cutoff_hz, butter_order)
    if method_id == "wavelet":
        cfg = fgd_cfg or FgdConfig()
        return wavelet_detrend_plain(
            signal, cfg.wavelet_level, cfg.wavelet_family, cfg.boundary_mode
        )
    raise ValueError(f"unknown method {method_id!r}; choose from {METHOD_IDS}")
