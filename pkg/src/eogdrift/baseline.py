"""Saccade-aware baseline reconstruction.

Between saccades the raw signal is a "floating segment": its shape carries
the drift, but its level includes the eye-position step left by the saccade
before it. Re-leveling each segment so that the means of the m samples on
either side of every saccade window agree removes the step content while
keeping drift intact. The result is a continuous baseline whose only slow
structure is drift (plus noise), which makes it safe to estimate a drift
trend from.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .core import SampledSignal
from .saccades import SaccadeEvent, _validate_events

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReconstructConfig:
    """Re-leveling parameters.

    Attributes:
        m_samples: number of samples averaged on each side of a saccade
            window when computing the level offset delta.
        calibration_s: nominal length of the level reference prefix at the
            start of a recording. Metadata only; the first delta always
            averages the m samples ending at the first window's start.
        gap_fill: what the baseline does inside saccade windows: "bridge"
            draws a straight line between the neighboring baseline samples,
            "zero" leaves the windows at zero.
    """

    m_samples: int = 15
    calibration_s: float = 5.0
    gap_fill: str = "bridge"

    def __post_init__(self):
        if self.m_samples < 1:
            raise ValueError("m_samples must be >= 1")
        if self.calibration_s < 0:
            raise ValueError("calibration_s must be >= 0")
        if self.gap_fill not in ("bridge", "zero"):
            raise ValueError(f"unknown gap_fill {self.gap_fill!r}")


@dataclass(frozen=True)
class FloatingSegment:
    """One inter-saccade span and the level offset applied to it."""

    seg_start_idx: int
    seg_end_idx: int  # inclusive
    delta: float
    m_truncated: bool = False


def segment_spans(
    events: list[SaccadeEvent], n_samples: int
) -> list[tuple[int, int]]:
    """Floating-segment index spans, one per saccade.

    Segment i runs from saccade i's window end to the next window's start
    (inclusive), the last one to the final sample. Requires sorted, disjoint
    events inside the signal.
    """
    spans = []
    for i, ev in enumerate(events):
        seg_start = ev.end_idx
        seg_end = events[i + 1].start_idx if i + 1 < len(events) else n_samples - 1
        spans.append((seg_start, seg_end))
    return spans


def reconstruct(
    raw: SampledSignal,
    saccade_excluded: SampledSignal,
    events: list[SaccadeEvent],
    cfg: ReconstructConfig = ReconstructConfig(),
) -> tuple[SampledSignal, list[FloatingSegment]]:
    """Build the re-leveled baseline.

    Args:
        raw: the original signal; floating-segment values and the post-window
            side of each delta average come from here.
        saccade_excluded: raw with saccade windows zeroed; used for the
            pre-first-saccade region (where it equals raw) and as a
            consistency check on the timebase.
        events: sorted, disjoint saccade windows.
        cfg: re-leveling parameters.

    Returns:
        (baseline, segments): the reconstructed baseline signal and the
        per-segment offsets that were applied.
    """
    if raw.n != saccade_excluded.n or raw.fs_hz != saccade_excluded.fs_hz:
        raise ValueError("raw and saccade_excluded must share a timebase")
    _validate_events(raw, events)
    x = raw.samples
    recon = x.copy()
    if not events:
        return raw.with_samples(recon), []

    m = cfg.m_samples
    spans = segment_spans(events, raw.n)
    segments: list[FloatingSegment] = []
    for i, (ev, (seg_start, seg_end)) in enumerate(zip(events, spans)):
        ps, pe = ev.start_idx, ev.end_idx
        # pre-window mean: m samples ending at the window start, read from
        # the already re-leveled record (original values before the first
        # saccade, adjusted values after)
        pre_floor = 0 if i == 0 else events[i - 1].end_idx
        pre_lo = max(pre_floor, ps - m + 1)
        pre = recon[pre_lo : ps + 1]
        # post-window mean: m samples from the window end, original values
        post_hi = min(seg_end, pe + m - 1)
        post = x[pe : post_hi + 1]
        truncated = pre.size < m or post.size < m
        if truncated:
            logger.warning(
                "segment %d: only %d pre / %d post samples available for the "
                "m=%d level average",
                i, pre.size, post.size, m,
            )
        delta = float(np.mean(pre)) - float(np.mean(post))
        recon[seg_start : seg_end + 1] = x[seg_start : seg_end + 1] + delta
        segments.append(FloatingSegment(seg_start, seg_end, delta, truncated))
        # fill the saccade window interior
        if cfg.gap_fill == "bridge":
            gap = pe - ps
            if gap > 1:
                frac = np.arange(1, gap) / gap
                recon[ps + 1 : pe] = recon[ps] + (recon[pe] - recon[ps]) * frac
        else:
            recon[ps + 1 : pe] = 0.0
    return raw.with_samples(recon), segments
