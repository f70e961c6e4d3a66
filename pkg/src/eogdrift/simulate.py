"""Synthetic EOG generator with exact ground truth.

A trial is a sequence of fixation targets on a horizontal guide; gaze angle
follows the target sequence with raised-cosine transitions, and the clean
voltage is angle times a fixed volts-per-degree scale. White noise, slow
drift, and positive blink pulses can be layered on top. Every component is
kept, so raw == clean + drift + noise (+ blinks folded into clean's
artifact channel) holds per sample and detector output can be scored
against the true event list.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .core import SampledSignal
from . import io as toolkit_io

FS_DEFAULT_HZ = 250.0
AMPLITUDE_SCALE_DEFAULT_V_PER_DEG = 20e-6 * 300  # electrode scale times amp gain
SACCADE_DURATION_DEFAULT_S = 0.05
NOISE_STD_DEFAULT_V = 2e-4
SCREEN_DISTANCE_DEFAULT_M = 0.44
GUIDE_SPAN_DEFAULT_M = 0.40
DRIFT_FREQ_LIMIT_HZ = 0.1


@dataclass(frozen=True)
class TargetGuide:
    """Horizontal dot guide: label -> gaze angle in degrees."""

    angles_deg: dict[str, float]
    distance_m: float = SCREEN_DISTANCE_DEFAULT_M

    def angle(self, target_id: str) -> float:
        if target_id not in self.angles_deg:
            raise ValueError(f"unknown target {target_id!r}")
        return self.angles_deg[target_id]


def default_target_guide() -> TargetGuide:
    """Nine dots across a 40 cm span, 5 cm apart, viewed from 44 cm."""
    half = GUIDE_SPAN_DEFAULT_M / 2.0
    labels = ["L4", "L3", "L2", "L1", "C", "R1", "R2", "R3", "R4"]
    offsets = np.linspace(-half, half, 9)
    angles = {
        lab: math.degrees(math.atan2(off, SCREEN_DISTANCE_DEFAULT_M))
        for lab, off in zip(labels, offsets)
    }
    # pin the center to exactly zero
    angles["C"] = 0.0
    return TargetGuide(angles)


@dataclass(frozen=True)
class TrialScript:
    """Fixation sequence and the scales that turn it into volts."""

    fixations: list[tuple[str, float]]  # (target_id, duration_s)
    amplitude_scale_v_per_deg: float = AMPLITUDE_SCALE_DEFAULT_V_PER_DEG
    saccade_duration_s: float = SACCADE_DURATION_DEFAULT_S

    def __post_init__(self):
        if not self.fixations:
            raise ValueError("script needs at least one fixation")
        for tid, dur in self.fixations:
            if dur <= 0:
                raise ValueError(f"fixation {tid!r} has non-positive duration")
        if self.saccade_duration_s <= 0:
            raise ValueError("saccade_duration_s must be positive")

    @property
    def total_duration_s(self) -> float:
        return float(sum(d for _, d in self.fixations))


def default_trial_script() -> TrialScript:
    """Calibration at center, then out-and-back sweeps to every target."""
    fixations = [("C", 5.0)]
    for tid in ["L1", "L2", "L3", "L4", "R1", "R2", "R3", "R4"]:
        fixations.append((tid, 2.0))
        fixations.append(("C", 2.0))
    return TrialScript(fixations)


@dataclass(frozen=True)
class DriftSpec:
    """Slow additive drift: a linear ramp plus sinusoids below 0.1 Hz."""

    linear_slope_v_per_s: float = 0.0
    sinusoids: list[tuple[float, float, float]] = field(default_factory=list)
    # each sinusoid is (amplitude_v, freq_hz, phase_rad)

    def __post_init__(self):
        for amp, freq, _ in self.sinusoids:
            if freq >= DRIFT_FREQ_LIMIT_HZ:
                raise ValueError(
                    f"drift sinusoid at {freq} Hz is not slow drift; "
                    f"frequencies must stay below {DRIFT_FREQ_LIMIT_HZ} Hz"
                )
            if freq <= 0:
                raise ValueError(f"drift sinusoid frequency must be > 0, got {freq}")
            if amp < 0:
                raise ValueError(f"drift sinusoid amplitude must be >= 0, got {amp}")

    def sample(self, t: np.ndarray) -> np.ndarray:
        out = self.linear_slope_v_per_s * t
        for amp, freq, phase in self.sinusoids:
            out = out + amp * np.sin(2.0 * np.pi * freq * t + phase)
        return out

    def to_dict(self) -> dict:
        return {
            "linear_slope_v_per_s": self.linear_slope_v_per_s,
            "sinusoids": [list(s) for s in self.sinusoids],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "DriftSpec":
        return cls(
            linear_slope_v_per_s=float(d.get("linear_slope_v_per_s", 0.0)),
            sinusoids=[tuple(map(float, s)) for s in d.get("sinusoids", [])],
        )


def default_drift_spec() -> DriftSpec:
    """A modest slope plus two slow sinusoids; safely below detection scale."""
    return DriftSpec(
        linear_slope_v_per_s=1e-3,
        sinusoids=[(0.05, 0.03, 0.4), (0.03, 0.07, 2.1)],
    )


@dataclass(frozen=True)
class TrueSaccade:
    """Ground-truth transition: the strictly moving samples of one ramp."""

    start_idx: int
    end_idx: int  # inclusive
    from_deg: float
    to_deg: float
    target_id: str  # target fixated after the saccade


@dataclass(frozen=True)
class TrueBlink:
    start_idx: int
    end_idx: int  # inclusive
    amplitude_v: float


@dataclass(frozen=True)
class GroundTruth:
    """A generated trial with every additive component kept separate."""

    fs_hz: float
    seed: int
    script: TrialScript
    guide: TargetGuide
    clean: SampledSignal
    drift: SampledSignal
    noise: SampledSignal
    gaze: SampledSignal  # reference angle in degrees
    events: list[TrueSaccade]
    blinks: list[TrueBlink]
    drift_spec: DriftSpec
    noise_std_v: float

    @property
    def raw(self) -> SampledSignal:
        return self.clean.with_samples(
            self.clean.samples + self.drift.samples + self.noise.samples
        )

    @property
    def largest_step_v(self) -> float:
        angles = [self.guide.angle(t) for t, _ in self.script.fixations]
        steps = [abs(b - a) for a, b in zip(angles, angles[1:])]
        return max(steps) * self.script.amplitude_scale_v_per_deg if steps else 0.0


def synthesize(
    script: TrialScript | None = None,
    fs_hz: float = FS_DEFAULT_HZ,
    noise_std_v: float = NOISE_STD_DEFAULT_V,
    blink_rate_hz: float = 0.0,
    seed: int = 0,
    guide: TargetGuide | None = None,
) -> GroundTruth:
    """Generate one trial.

    Blink pulses, when requested, are placed inside fixation intervals (not
    overlapping saccade ramps or each other) so the ground-truth event lists
    stay unambiguous. Blinks ride on the clean component.
    """
    script = script or default_trial_script()
    guide = guide or default_target_guide()
    if fs_hz <= 0:
        raise ValueError("fs_hz must be positive")
    if noise_std_v < 0:
        raise ValueError("noise_std_v must be >= 0")
    if blink_rate_hz < 0:
        raise ValueError("blink_rate_hz must be >= 0")

    n = int(round(script.total_duration_s * fs_hz))
    t = np.arange(n) / fs_hz
    angles = [guide.angle(tid) for tid, _ in script.fixations]
    starts = np.cumsum([0.0] + [d for _, d in script.fixations])[:-1]

    gaze = np.full(n, angles[0])
    events: list[TrueSaccade] = []
    dur = script.saccade_duration_s
    for i in range(1, len(angles)):
        t_b = starts[i]
        a0, a1 = angles[i - 1], angles[i]
        gaze[t > t_b] = a1
        ramp = (t > t_b) & (t < t_b + dur)
        tau = (t[ramp] - t_b) / dur
        gaze[ramp] = a0 + (a1 - a0) * 0.5 * (1.0 - np.cos(np.pi * tau))
        idx = np.flatnonzero(ramp)
        if idx.size and a0 != a1:
            events.append(
                TrueSaccade(int(idx[0]), int(idx[-1]), a0, a1, script.fixations[i][0])
            )

    # independent streams so enabling blinks never changes the noise draw
    noise_ss, blink_ss = np.random.SeedSequence(seed).spawn(2)
    clean = gaze * script.amplitude_scale_v_per_deg

    steps = [abs(b - a) for a, b in zip(angles, angles[1:])]
    largest_step_v = (
        max(steps) * script.amplitude_scale_v_per_deg if steps else abs(angles[0]) or 1.0
    )
    blinks: list[TrueBlink] = []
    if blink_rate_hz > 0:
        blinks = _place_blinks(
            clean, t, script, starts, np.random.default_rng(blink_ss),
            blink_rate_hz, largest_step_v,
        )

    noise = (
        np.random.default_rng(noise_ss).normal(0.0, noise_std_v, n)
        if noise_std_v > 0
        else np.zeros(n)
    )
    mk = lambda x: SampledSignal(fs_hz, x)
    return GroundTruth(
        fs_hz=fs_hz,
        seed=seed,
        script=script,
        guide=guide,
        clean=mk(clean),
        drift=mk(np.zeros(n)),
        noise=mk(noise),
        gaze=mk(gaze),
        events=events,
        blinks=blinks,
        drift_spec=DriftSpec(),
        noise_std_v=noise_std_v,
    )


def _place_blinks(clean, t, script, starts, rng, rate_hz, largest_step_v):
    """Add raised-cosine blink pulses into fixation flats, in place."""
    total_s = float(t[-1]) + (t[1] - t[0]) if t.size > 1 else 1.0
    count = rng.poisson(rate_hz * total_s)
    ramp_margin_s = 0.1
    ramps = [(tb, tb + script.saccade_duration_s) for tb in starts[1:]]
    placed: list[tuple[float, float]] = []
    blinks: list[TrueBlink] = []
    attempts = 0
    while len(blinks) < count and attempts < count * 50:
        attempts += 1
        dur = rng.uniform(0.15, 0.30)
        amp = rng.uniform(5.0, 10.0) * largest_step_v
        t0 = rng.uniform(0.0, total_s - dur)
        span = (t0 - ramp_margin_s, t0 + dur + ramp_margin_s)
        if any(span[0] < rb and ra < span[1] for ra, rb in ramps):
            continue
        if any(span[0] < pb and pa < span[1] for pa, pb in placed):
            continue
        sel = (t > t0) & (t < t0 + dur)
        idx = np.flatnonzero(sel)
        if idx.size < 3:
            continue
        tau = (t[sel] - t0) / dur
        clean[sel] += amp * 0.5 * (1.0 - np.cos(2.0 * np.pi * tau))
        placed.append((t0, t0 + dur))
        blinks.append(TrueBlink(int(idx[0]), int(idx[-1]), float(amp)))
    blinks.sort(key=lambda b: b.start_idx)
    return blinks


def inject_drift(gt: GroundTruth, spec: DriftSpec) -> GroundTruth:
    """Replace the drift component; clean, noise, and events are untouched."""
    t = gt.clean.times()
    drift = spec.sample(t)
    return replace(
        gt, drift=gt.drift.with_samples(drift), drift_spec=spec
    )


def random_drift_scenarios(
    n_scenarios: int,
    seed: int = 0,
    amplitude_range_v: tuple[float, float] | None = None,
    slope_range_v_per_s: tuple[float, float] = (-2e-3, 2e-3),
    freq_range_hz: tuple[float, float] = (0.005, DRIFT_FREQ_LIMIT_HZ),
    max_sinusoids: int = 4,
) -> list[DriftSpec]:
    """Draw n random drift specs: slope plus 1..max_sinusoids sinusoids."""
    if n_scenarios < 1:
        raise ValueError("n_scenarios must be >= 1")
    if amplitude_range_v is None:
        script = default_trial_script()
        guide = default_target_guide()
        angles = [guide.angle(t) for t, _ in script.fixations]
        step = max(abs(b - a) for a, b in zip(angles, angles[1:]))
        big = step * script.amplitude_scale_v_per_deg
        amplitude_range_v = (0.2 * big, 1.0 * big)
    rng = np.random.default_rng(seed)
    specs = []
    for _ in range(n_scenarios):
        slope = rng.uniform(*slope_range_v_per_s)
        k = int(rng.integers(1, max_sinusoids + 1))
        sinusoids = []
        for _ in range(k):
            amp = rng.uniform(*amplitude_range_v)
            freq = rng.uniform(freq_range_hz[0], freq_range_hz[1])
            phase = rng.uniform(0.0, 2.0 * np.pi)
            sinusoids.append((float(amp), float(freq), float(phase)))
        specs.append(DriftSpec(slope, sinusoids))
    return specs


EVENT_COLUMNS = ["start_idx", "end_idx", "from_deg", "to_deg", "target_id"]
BLINK_COLUMNS = ["start_idx", "end_idx", "amplitude_v"]


def read_scenario(in_dir: str | Path) -> GroundTruth:
    """Load a scenario directory written by write_scenario."""
    d = Path(in_dir)
    meta = toolkit_io.read_json(d / "meta.json")
    script = TrialScript(
        fixations=[(tid, float(dur)) for tid, dur in meta["fixations"]],
        amplitude_scale_v_per_deg=float(meta["amplitude_scale_v_per_deg"]),
        saccade_duration_s=float(meta["saccade_duration_s"]),
    )
    guide = TargetGuide({k: float(v) for k, v in meta["targets_deg"].items()})
    events = [
        TrueSaccade(
            int(r["start_idx"]), int(r["end_idx"]),
            float(r["from_deg"]), float(r["to_deg"]), str(r["target_id"]),
        )
        for r in toolkit_io.read_events_csv(d / "events.csv")
    ]
    blinks = []
    if (d / "blinks.csv").exists():
        blinks = [
            TrueBlink(int(r["start_idx"]), int(r["end_idx"]), float(r["amplitude_v"]))
            for r in toolkit_io.read_events_csv(d / "blinks.csv")
        ]
    fs = float(meta["fs_hz"])

    def sig(name: str) -> SampledSignal:
        # meta.json is authoritative for the rate; the CSV time column only
        # approximates it, so inferring fs there would perturb rewrites
        loaded = toolkit_io.read_signal_csv(d / name)
        return SampledSignal(fs_hz=fs, samples=loaded.samples, t0_s=loaded.t0_s)

    return GroundTruth(
        fs_hz=fs,
        seed=int(meta["seed"]),
        script=script,
        guide=guide,
        clean=sig("clean.csv"),
        drift=sig("drift.csv"),
        noise=sig("noise.csv"),
        gaze=sig("gaze.csv"),
        events=events,
        blinks=blinks,
        drift_spec=DriftSpec.from_dict(meta["drift_spec"]),
        noise_std_v=float(meta["noise_std_v"]),
    )


def write_scenario(out_dir: str | Path, gt: GroundTruth) -> None:
    """Write one scenario directory: component CSVs, events, and metadata."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    toolkit_io.write_signal_csv(out / "raw.csv", gt.raw)
    toolkit_io.write_signal_csv(out / "clean.csv", gt.clean)
    toolkit_io.write_signal_csv(out / "drift.csv", gt.drift)
    toolkit_io.write_signal_csv(out / "noise.csv", gt.noise)
    toolkit_io.write_signal_csv(out / "gaze.csv", gt.gaze)
    toolkit_io.write_events_csv(
        out / "events.csv",
        [
            {
                "start_idx": e.start_idx,
                "end_idx": e.end_idx,
                "from_deg": e.from_deg,
                "to_deg": e.to_deg,
                "target_id": e.target_id,
            }
            for e in gt.events
        ],
        EVENT_COLUMNS,
    )
    if gt.blinks:
        toolkit_io.write_events_csv(
            out / "blinks.csv",
            [
                {"start_idx": b.start_idx, "end_idx": b.end_idx, "amplitude_v": b.amplitude_v}
                for b in gt.blinks
            ],
            BLINK_COLUMNS,
        )
    toolkit_io.write_json(
        out / "meta.json",
        {
            "fs_hz": gt.fs_hz,
            "seed": gt.seed,
            "noise_std_v": gt.noise_std_v,
            "amplitude_scale_v_per_deg": gt.script.amplitude_scale_v_per_deg,
            "saccade_duration_s": gt.script.saccade_duration_s,
            "fixations": [[tid, dur] for tid, dur in gt.script.fixations],
            "targets_deg": gt.guide.angles_deg,
            "drift_spec": gt.drift_spec.to_dict(),
            "largest_step_v": gt.largest_step_v,
        },
    )
