"""Blink pulse detection and removal.

A blink is a short pulse: in the lag derivative it appears as a surge in
one direction followed within a few hundred milliseconds by a surge in the
opposite direction, after which the signal returns close to its pre-event
level. That return is what separates a blink from two successive saccades,
which leave the eye at a new position. Removal replaces the pulse with a
straight line between its endpoints.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import SampledSignal, differentiate

BLINK_DERIV_LAG = 3


@dataclass(frozen=True)
class BlinkConfig:
    """Blink detector thresholds.

    Attributes:
        k_blink: surge threshold multiplier; threshold = k_blink * std(deriv).
        blink_max_duration_s: the opposite surge must begin within this many
            seconds of the first surge, and a whole event never exceeds it.
        return_tolerance_frac: after the second surge the signal must sit
            within this fraction of the pulse excursion from the pre-event
            level.
        bipolar: also accept negative-going pulses (surge order reversed).
    """

    k_blink: float = 3.0
    blink_max_duration_s: float = 0.4
    return_tolerance_frac: float = 0.25
    bipolar: bool = False

    def __post_init__(self):
        if self.k_blink <= 0:
            raise ValueError("k_blink must be positive")
        if self.blink_max_duration_s <= 0:
            raise ValueError("blink_max_duration_s must be positive")
        if not 0 < self.return_tolerance_frac < 1:
            raise ValueError("return_tolerance_frac must be in (0, 1)")


@dataclass(frozen=True)
class BlinkEvent:
    start_idx: int
    peak_idx: int
    end_idx: int

    def __post_init__(self):
        if not self.start_idx < self.peak_idx < self.end_idx:
            raise ValueError(
                f"need start < peak < end, got "
                f"({self.start_idx}, {self.peak_idx}, {self.end_idx})"
            )


def _surge_runs(d: np.ndarray, thr: float) -> list[tuple[int, int, int]]:
    """Contiguous runs of |deriv| > thr as (sign, first_idx, last_idx)."""
    hot = np.where(d > thr, 1, np.where(d < -thr, -1, 0))
    runs = []
    i = 0
    n = d.size
    while i < n:
        if hot[i] == 0:
            i += 1
            continue
        j = i
        while j + 1 < n and hot[j + 1] == hot[i]:
            j += 1
        runs.append((int(hot[i]), i, j))
        i = j + 1
    return runs


def detect_blinks(
    signal: SampledSignal, cfg: BlinkConfig = BlinkConfig()
) -> list[BlinkEvent]:
    """Find blink pulses via paired opposite derivative surges.

    Returns sorted, non-overlapping events. With bipolar unset only
    positive-going pulses (positive surge first) are considered.
    """
    if signal.n <= BLINK_DERIV_LAG:
        return []
    x = signal.samples
    deriv = differentiate(signal, BLINK_DERIV_LAG)
    d = deriv.samples
    thr = cfg.k_blink * float(np.std(d))
    if thr == 0.0:
        return []
    runs = _surge_runs(d, thr)
    max_gap = int(round(cfg.blink_max_duration_s * signal.fs_hz))
    events: list[BlinkEvent] = []
    i = 0
    while i + 1 < len(runs):
        sign1, s1, _ = runs[i]
        sign2, s2, e2 = runs[i + 1]
        leading_ok = sign1 == 1 or (cfg.bipolar and sign1 == -1)
        if not (leading_ok and sign2 == -sign1 and s2 - s1 <= max_gap):
            i += 1
            continue
        start = max(0, s1 - BLINK_DERIV_LAG - 1)
        end = min(signal.n - 1, e2 + BLINK_DERIV_LAG)
        if events and start <= events[-1].end_idx:
            i += 1
            continue
        if (end - start) / signal.fs_hz > cfg.blink_max_duration_s:
            i += 2
            continue
        window = x[start : end + 1]
        peak_off = int(np.argmax(window)) if sign1 == 1 else int(np.argmin(window))
        peak = start + peak_off
        excursion = x[peak] - x[start]
        returns = abs(x[end] - x[start]) <= cfg.return_tolerance_frac * abs(excursion)
        if returns and start < peak < end:
            events.append(BlinkEvent(start, peak, end))
            i += 2
        else:
            i += 1
    return events


def remove_blinks(
    signal: SampledSignal, events: list[BlinkEvent]
) -> SampledSignal:
    """Replace each blink span with a line between its boundary samples."""
    prev_end = -1
    for ev in events:
        if ev.start_idx <= prev_end:
            raise ValueError("blink events must be sorted and non-overlapping")
        if ev.end_idx >= signal.n:
            raise ValueError(
                f"blink window [{ev.start_idx}, {ev.end_idx}] exceeds signal "
                f"length {signal.n}"
            )
        prev_end = ev.end_idx
    out = signal.samples.copy()
    for ev in events:
        a, b = ev.start_idx, ev.end_idx
        gap = b - a
        frac = np.arange(1, gap) / gap
        out[a + 1 : b] = out[a] + (out[b] - out[a]) * frac
    return signal.with_samples(out)
