"""Uniformly sampled signal container plus the derivative and summary stats
used throughout the toolkit.

The lag derivative is the feature extractor everything downstream keys on:
saccade and blink surges show up as short bursts in it, while slow drift
contributes almost nothing.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True, eq=False)
class SampledSignal:
    """A 1-D signal sampled at a fixed rate.

    Attributes:
        fs_hz: sampling rate in Hz, > 0.
        samples: float64 sample values; read-only after construction.
        t0_s: time of the first sample in seconds.
    """

    fs_hz: float
    samples: np.ndarray
    t0_s: float = 0.0

    def __post_init__(self):
        if not np.isfinite(self.fs_hz) or self.fs_hz <= 0:
            raise ValueError(f"fs_hz must be positive and finite, got {self.fs_hz}")
        arr = np.asarray(self.samples, dtype=np.float64)
        if arr.ndim != 1:
            raise ValueError(f"samples must be 1-D, got shape {arr.shape}")
        if arr.size == 0:
            raise ValueError("samples must be non-empty")
        if not np.all(np.isfinite(arr)):
            raise ValueError("samples must be finite")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)

    @property
    def n(self) -> int:
        return self.samples.size

    @property
    def duration_s(self) -> float:
        return self.n / self.fs_hz

    def times(self) -> np.ndarray:
        """Sample times in seconds: t0_s + k / fs_hz."""
        return self.t0_s + np.arange(self.n) / self.fs_hz

    def with_samples(self, samples: np.ndarray) -> "SampledSignal":
        """Same timebase, new sample values."""
        return SampledSignal(self.fs_hz, samples, self.t0_s)


@dataclass(frozen=True)
class SignalStats:
    mean: float
    std_dev: float
    min_val: float
    max_val: float


def differentiate(signal: SampledSignal, lag_n: int = 3) -> SampledSignal:
    """Backward lag derivative: out[k] = (x[k] - x[k - lag_n]) / (lag_n / fs).

    The first lag_n outputs are zero (warm-up, no earlier sample to difference
    against). Output has the same length, rate, and start time as the input.

    Args:
        signal: input signal.
        lag_n: sample lag, >= 1 and < len(signal).

    Returns:
        The derivative signal in input-units per second.
    """
    if lag_n < 1:
        raise ValueError(f"lag_n must be >= 1, got {lag_n}")
    x = signal.samples
    if lag_n >= x.size:
        raise ValueError(
            f"lag_n={lag_n} must be smaller than the signal length {x.size}"
        )
    out = np.zeros_like(x)
    dt = lag_n / signal.fs_hz
    out[lag_n:] = (x[lag_n:] - x[:-lag_n]) / dt
    return signal.with_samples(out)


def stats(signal: SampledSignal) -> SignalStats:
    """Mean, population standard deviation, min, and max of the samples."""
    x = signal.samples
    return SignalStats(
        mean=float(np.mean(x)),
        std_dev=float(np.std(x)),
        min_val=float(np.min(x)),
        max_val=float(np.max(x)),
    )
