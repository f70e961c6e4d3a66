"""Gaze-angle regression and per-saccade error scoring.

A de-drifted voltage is mapped to gaze angle with a least-squares line fit
against a reference angle signal. Accuracy is then scored per saccade: the
mean reference angle minus the mean predicted angle over a short window
after each saccade lands (a guard gap skips the landing transient, and the
window never reaches into the next saccade).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import SampledSignal

TARGET_ROW_ORDER = ["L4", "L3", "L2", "L1", "R1", "R2", "R3", "R4"]
CENTER_TARGET = "C"


@dataclass(frozen=True)
class RegressionFit:
    slope_deg_per_v: float
    intercept_deg: float
    r_squared: float


@dataclass(frozen=True)
class EvalConfig:
    """Post-saccade scoring window.

    Attributes:
        guard_s: gap between a saccade window's end and the start of the
            scoring window.
        max_window_s: scoring window length cap, measured from the saccade
            window's end.
        min_samples: windows shorter than this are skipped and flagged.
        include_center: whether returns to the center target enter the
            overall statistics.
    """

    guard_s: float = 0.1
    max_window_s: float = 1.0
    min_samples: int = 5
    include_center: bool = False


@dataclass(frozen=True)
class SaccadeError:
    event_index: int
    target_id: str
    epsilon_deg: float  # nan when skipped
    n_samples: int
    skipped: bool


@dataclass(frozen=True)
class EvalReport:
    method_id: str
    per_target: dict[str, tuple[float, int]]  # target -> (mean |eps|, count)
    overall_mean_deg: float
    overall_std_deg: float
    target_mean_avg_deg: float
    n_evaluated: int
    n_skipped: int

    def to_dict(self) -> dict:
        return {
            "method_id": self.method_id,
            "per_target": {
                k: {"mean_abs_deg": v[0], "count": v[1]}
                for k, v in self.per_target.items()
            },
            "overall_mean_deg": self.overall_mean_deg,
            "overall_std_deg": self.overall_std_deg,
            "target_mean_avg_deg": self.target_mean_avg_deg,
            "n_evaluated": self.n_evaluated,
            "n_skipped": self.n_skipped,
        }


def fit_regression(
    dedrifted: SampledSignal, reference: SampledSignal
) -> RegressionFit:
    """OLS line angle = slope * voltage + intercept over all samples."""
    if dedrifted.n != reference.n:
        raise ValueError("dedrifted and reference must have equal length")
    x = dedrifted.samples
    y = reference.samples
    var = float(np.var(x))
    if var == 0.0:
        raise ValueError("de-drifted signal is constant; cannot fit a line")
    slope = float(np.mean((x - x.mean()) * (y - y.mean()))) / var
    intercept = float(y.mean() - slope * x.mean())
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid**2)) / ss_tot if ss_tot > 0 else 1.0
    return RegressionFit(slope, intercept, r2)


def predict_gaze(dedrifted: SampledSignal, fit: RegressionFit) -> SampledSignal:
    return dedrifted.with_samples(
        fit.slope_deg_per_v * dedrifted.samples + fit.intercept_deg
    )


def saccade_errors(
    predicted: SampledSignal,
    reference: SampledSignal,
    events,
    target_ids: list[str] | None = None,
    cfg: EvalConfig = EvalConfig(),
) -> list[SaccadeError]:
    """Score each saccade's post-landing window.

    Args:
        predicted: gaze prediction in degrees.
        reference: true gaze in degrees, same timebase.
        events: sorted objects with start_idx / end_idx (detected or
            ground-truth saccades).
        target_ids: per-event landing target label; defaults to the event's
            own target_id attribute or "?".
        cfg: window geometry.
    """
    if predicted.n != reference.n:
        raise ValueError("predicted and reference must have equal length")
    fs = predicted.fs_hz
    guard = int(round(cfg.guard_s * fs))
    cap = int(round(cfg.max_window_s * fs))
    out: list[SaccadeError] = []
    for i, ev in enumerate(events):
        tid = (
            target_ids[i]
            if target_ids is not None
            else getattr(ev, "target_id", "?")
        )
        lo = ev.end_idx + guard
        hi = ev.end_idx + cap
        if i + 1 < len(events):
            hi = min(hi, events[i + 1].start_idx - 1)
        hi = min(hi, predicted.n - 1)
        n_win = hi - lo + 1
        if n_win < cfg.min_samples:
            out.append(SaccadeError(i, tid, float("nan"), max(n_win, 0), True))
            continue
        eps = float(
            np.mean(reference.samples[lo : hi + 1])
            - np.mean(predicted.samples[lo : hi + 1])
        )
        out.append(SaccadeError(i, tid, eps, n_win, False))
    return out


def build_report(
    errors: list[SaccadeError],
    method_id: str,
    cfg: EvalConfig = EvalConfig(),
) -> EvalReport:
    """Aggregate per-saccade errors into the per-target accuracy table.

    Center-target returns are tabulated only when include_center is set;
    the overall row reports the mean and population std of |epsilon| over
    the included saccades, and, alongside, the mean of per-target means.
    """
    scored = [e for e in errors if not e.skipped]
    included = [
        e for e in scored if cfg.include_center or e.target_id != CENTER_TARGET
    ]
    per_target: dict[str, tuple[float, int]] = {}
    order = TARGET_ROW_ORDER + (
        [CENTER_TARGET] if cfg.include_center else []
    )
    seen = sorted(
        {e.target_id for e in included},
        key=lambda t: (order.index(t) if t in order else len(order), t),
    )
    for tid in seen:
        errs = np.array([abs(e.epsilon_deg) for e in included if e.target_id == tid])
        per_target[tid] = (float(errs.mean()), int(errs.size))
    abs_all = np.array([abs(e.epsilon_deg) for e in included])
    overall_mean = float(abs_all.mean()) if abs_all.size else float("nan")
    overall_std = float(abs_all.std()) if abs_all.size else float("nan")
    target_avg = (
        float(np.mean([v[0] for v in per_target.values()]))
        if per_target
        else float("nan")
    )
    return EvalReport(
        method_id=method_id,
        per_target=per_target,
        overall_mean_deg=overall_mean,
        overall_std_deg=overall_std,
        target_mean_avg_deg=target_avg,
        n_evaluated=len(included),
        n_skipped=sum(1 for e in errors if e.skipped),
    )


def format_report(report: EvalReport) -> str:
    """Fixed-width text table: one row per target plus the average row."""
    lines = [
        f"method: {report.method_id}",
        f"{'target':>8}  {'mean |err| (deg)':>16}  {'count':>5}",
    ]
    for tid, (mean_abs, count) in report.per_target.items():
        lines.append(f"{tid:>8}  {mean_abs:>16.3f}  {count:>5d}")
    lines.append(
        f"{'Average':>8}  {report.overall_mean_deg:>16.3f}  {report.n_evaluated:>5d}"
        f"  (std {report.overall_std_deg:.3f}, per-target avg "
        f"{report.target_mean_avg_deg:.3f}, skipped {report.n_skipped})"
    )
    return "\n".join(lines)
