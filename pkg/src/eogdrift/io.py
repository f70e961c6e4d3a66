"""CSV and JSON serialization shared by the library and the CLI.

Signal CSV format: header ``t_s,value``, one row per sample, uniform spacing.
Floats are written with repr (shortest round-trip form) so that a write/read
cycle is lossless and output files are byte-stable for identical inputs.
"""
from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .core import SampledSignal

# relative non-uniformity tolerated in the time column on load
SPACING_RTOL = 1e-6


def write_signal_csv(path: str | Path, signal: SampledSignal) -> None:
    """Write a signal as a t_s,value CSV."""
    t = signal.times()
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t_s", "value"])
        for ti, vi in zip(t, signal.samples):
            w.writerow([repr(float(ti)), repr(float(vi))])


def read_signal_csv(path: str | Path) -> SampledSignal:
    """Read a t_s,value CSV, validating the header and uniform spacing."""
    with open(path, newline="") as fh:
        r = csv.reader(fh)
        header = next(r, None)
        if header is None or [c.strip() for c in header[:2]] != ["t_s", "value"]:
            raise ValueError(f"{path}: expected header 't_s,value', got {header}")
        t_vals, x_vals = [], []
        for row in r:
            if not row:
                continue
            t_vals.append(float(row[0]))
            x_vals.append(float(row[1]))
    if len(x_vals) < 2:
        raise ValueError(f"{path}: need at least 2 samples, got {len(x_vals)}")
    t = np.asarray(t_vals)
    dt = np.diff(t)
    dt_med = float(np.median(dt))
    if dt_med <= 0:
        raise ValueError(f"{path}: time column is not increasing")
    if np.max(np.abs(dt - dt_med)) > SPACING_RTOL * dt_med:
        raise ValueError(
            f"{path}: non-uniform sample spacing (worst deviation "
            f"{np.max(np.abs(dt - dt_med)):.3g} s against step {dt_med:.3g} s)"
        )
    # the median step carries ulp-level noise from the written time column;
    # rounding the rate to nano-hertz keeps read/write cycles byte-stable
    fs = round(1.0 / dt_med, 9)
    return SampledSignal(fs_hz=fs, samples=np.asarray(x_vals), t0_s=float(t[0]))


def write_events_csv(path: str | Path, rows: list[dict], columns: list[str]) -> None:
    """Write event records with a fixed column order."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(columns)
        for row in rows:
            w.writerow([_fmt(row[c]) for c in columns])


def read_events_csv(path: str | Path) -> list[dict]:
    """Read an events CSV into dicts, converting numeric strings."""
    with open(path, newline="") as fh:
        r = csv.DictReader(fh)
        out = []
        for row in r:
            out.append({k: _coerce(v) for k, v in row.items()})
        return out


def write_json(path: str | Path, obj) -> None:
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_json(path: str | Path):
    with open(path) as fh:
        return json.load(fh)


def _fmt(v):
    if isinstance(v, float):
        return repr(v)
    return v


def _coerce(v: str):
    try:
        return int(v)
    except (TypeError, ValueError):
        pass
    try:
        return float(v)
    except (TypeError, ValueError):
        return v
