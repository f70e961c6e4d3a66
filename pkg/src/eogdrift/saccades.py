"""Threshold-based saccade detection on the lag derivative.

A saccade shows up as a short high-magnitude burst in the derivative. Peaks
are found with a global k*sigma threshold, then each peak is widened into a
[start, end] window by walking outward to the first sample whose derivative
magnitude falls below a second, lower threshold.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import SampledSignal


@dataclass(frozen=True)
class DetectConfig:
    """Detection thresholds and scales.

    Attributes:
        k_peak: peak threshold multiplier; s_p = k_peak * std(deriv).
        k_window: window threshold multiplier for s_i.
        group_window_s: super-threshold samples within this many seconds of a
            group's first member count as the same saccade.
        lag_n: sample lag of the derivative the thresholds are applied to.
        window_scope: "global" takes std(deriv) over the whole record for
            s_i; "local" takes it over +/- local_window_s around each peak.
        local_window_s: half-width of the local std window, seconds.
    """

    k_peak: float = 3.0
    k_window: float = 1.0
    group_window_s: float = 0.5
    lag_n: int = 3
    window_scope: str = "local"
    local_window_s: float = 1.0

    def __post_init__(self):
        if self.k_peak <= 0 or self.k_window <= 0:
            raise ValueError("threshold multipliers must be positive")
        if self.group_window_s <= 0:
            raise ValueError("group_window_s must be positive")
        if self.lag_n < 1:
            raise ValueError("lag_n must be >= 1")
        if self.window_scope not in ("global", "local"):
            raise ValueError(f"unknown window_scope {self.window_scope!r}")
        if self.local_window_s <= 0:
            raise ValueError("local_window_s must be positive")


@dataclass(frozen=True)
class SaccadeEvent:
    """One detected saccade: derivative peak and its enclosing window."""

    peak_idx: int
    start_idx: int
    end_idx: int
    polarity: int  # +1 rising derivative peak, -1 falling

    def __post_init__(self):
        if not self.start_idx <= self.peak_idx <= self.end_idx:
            raise ValueError(
                f"need start <= peak <= end, got "
                f"({self.start_idx}, {self.peak_idx}, {self.end_idx})"
            )
        if self.polarity not in (-1, 1):
            raise ValueError(f"polarity must be +1 or -1, got {self.polarity}")


def peak_threshold(deriv: SampledSignal, cfg: DetectConfig) -> float:
    return cfg.k_peak * float(np.std(deriv.samples))


def window_threshold(deriv: SampledSignal, peak_idx: int, cfg: DetectConfig) -> float:
    """s_i for one peak, honoring the configured std scope."""
    if cfg.window_scope == "global":
        return cfg.k_window * float(np.std(deriv.samples))
    half = int(round(cfg.local_window_s * deriv.fs_hz))
    lo = max(0, peak_idx - half)
    hi = min(deriv.n, peak_idx + half + 1)
    return cfg.k_window * float(np.std(deriv.samples[lo:hi]))


def detect_peaks(deriv: SampledSignal, cfg: DetectConfig = DetectConfig()) -> list[int]:
    """Find one peak index per saccade-like burst.

    All samples with |deriv| >= s_p are grouped: a sample joins the current
    group if it lies within group_window_s of the group's first member. Each
    group is reported by its earliest index.
    """
    d = deriv.samples
    s_p = peak_threshold(deriv, cfg)
    over = np.flatnonzero(np.abs(d) >= s_p)
    if over.size == 0:
        return []
    gap = cfg.group_window_s * deriv.fs_hz
    peaks = [int(over[0])]
    for idx in over[1:]:
        if idx - peaks[-1] > gap:
            peaks.append(int(idx))
    return peaks


def detect_window(
    deriv: SampledSignal, peak_idx: int, cfg: DetectConfig = DetectConfig()
) -> tuple[int, int, int]:
    """Widen a peak into (start_idx, end_idx, polarity).

    start_idx is the greatest index before the peak with |deriv| < s_i,
    end_idx the least one after it; either clamps to the signal boundary if
    no such sample exists.

    Raises:
        ValueError: if the peak sample itself is below s_i.
    """
    d = deriv.samples
    if not 0 <= peak_idx < d.size:
        raise ValueError(f"peak_idx {peak_idx} outside signal of length {d.size}")
    s_i = window_threshold(deriv, peak_idx, cfg)
    if np.abs(d[peak_idx]) < s_i:
        raise ValueError(
            f"peak sample {peak_idx} has |derivative| {abs(d[peak_idx]):.4g} "
            f"below the window threshold {s_i:.4g}"
        )
    below = np.abs(d) < s_i
    start = peak_idx
    while start > 0 and not below[start]:
        start -= 1
    end = peak_idx
    while end < d.size - 1 and not below[end]:
        end += 1
    polarity = 1 if d[peak_idx] > 0 else -1
    return start, end, polarity


def detect_saccades(
    deriv: SampledSignal, cfg: DetectConfig = DetectConfig()
) -> list[SaccadeEvent]:
    """Full detection pass: peaks, windows, and overlap merging.

    Windows that overlap or touch are merged into one event keeping the
    earliest start, the latest end, and the peak of larger magnitude.
    """
    events: list[SaccadeEvent] = []
    for peak in detect_peaks(deriv, cfg):
        start, end, pol = detect_window(deriv, peak, cfg)
        events.append(SaccadeEvent(peak, start, end, pol))
    if not events:
        return events
    d = deriv.samples
    merged = [events[0]]
    for ev in events[1:]:
        prev = merged[-1]
        if ev.start_idx <= prev.end_idx:
            keep = ev if abs(d[ev.peak_idx]) > abs(d[prev.peak_idx]) else prev
            merged[-1] = SaccadeEvent(
                keep.peak_idx,
                min(prev.start_idx, ev.start_idx),
                max(prev.end_idx, ev.end_idx),
                keep.polarity,
            )
        else:
            merged.append(ev)
    return merged


def _validate_events(signal: SampledSignal, events: list[SaccadeEvent]) -> None:
    prev_end = -1
    for ev in events:
        if ev.start_idx <= prev_end:
            raise ValueError(
                f"events must be sorted and disjoint; window starting at "
                f"{ev.start_idx} begins at or before previous end {prev_end}"
            )
        if ev.end_idx >= signal.n:
            raise ValueError(
                f"event window [{ev.start_idx}, {ev.end_idx}] exceeds signal "
                f"length {signal.n}"
            )
        prev_end = ev.end_idx


def extract_saccades(
    signal: SampledSignal, events: list[SaccadeEvent]
) -> SampledSignal:
    """Signal that equals the input inside saccade windows and 0 elsewhere."""
    _validate_events(signal, events)
    out = np.zeros(signal.n)
    for ev in events:
        out[ev.start_idx : ev.end_idx + 1] = signal.samples[ev.start_idx : ev.end_idx + 1]
    return signal.with_samples(out)


def exclude_saccades(
    signal: SampledSignal, events: list[SaccadeEvent]
) -> SampledSignal:
    """Complement of extract_saccades: windows zeroed, the rest kept."""
    _validate_events(signal, events)
    out = signal.samples.copy()
    for ev in events:
        out[ev.start_idx : ev.end_idx + 1] = 0.0
    return signal.with_samples(out)
