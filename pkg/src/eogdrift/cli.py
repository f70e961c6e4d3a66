"""Command-line front end.

Thin wrappers over the library: every command reads/writes the shared CSV
and JSON formats and echoes the effective configuration next to its outputs
so runs can be reproduced exactly. Exit codes: 0 success, 2 bad usage or
invalid input, 1 internal error.
"""
from __future__ import annotations

import functools
import sys
from pathlib import Path

import click
import numpy as np

from . import io as toolkit_io
from .config import ToolkitConfig, load_config
from .core import SampledSignal, differentiate
from .blink import detect_blinks, remove_blinks
from .evaluate import (
    build_report,
    fit_regression,
    format_report,
    predict_gaze,
    saccade_errors,
)
from .methods import METHOD_IDS, run_method
from .saccades import detect_saccades
from .simulate import (
    default_trial_script,
    inject_drift,
    random_drift_scenarios,
    read_scenario,
    synthesize,
    write_scenario,
    DriftSpec,
    TrialScript,
)
from .wavelet import approx_band_edge_hz

BAND_EDGE_WARN_HZ = 1.0


class Ctx:
    def __init__(self, config: ToolkitConfig, seed: int, fs_hz: float | None):
        self.config = config
        self.seed = seed
        self.fs_hz = fs_hz


def _usage_guard(fn):
    """Map validation failures to exit code 2, keep real bugs at 1."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (ValueError, FileNotFoundError, NotADirectoryError, KeyError) as exc:
            raise click.UsageError(str(exc)) from exc

    return wrapper


def _echo_config(out_dir: Path, ctx: Ctx) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    payload = ctx.config.to_dict()
    payload["seed"] = ctx.seed
    if ctx.fs_hz is not None:
        payload["fs_hz_override"] = ctx.fs_hz
    toolkit_io.write_json(out_dir / "effective_config.json", payload)


def _warn_band_edge(fs_hz: float, level: int) -> None:
    edge = approx_band_edge_hz(fs_hz, level)
    if edge > BAND_EDGE_WARN_HZ:
        click.secho(
            f"warning: approximation band reaches {edge:.3g} Hz at level "
            f"{level} and fs {fs_hz:g} Hz; drift estimates may absorb signal "
            f"content (consider a deeper level)",
            fg="yellow",
            err=True,
        )


@click.group()
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Toolkit JSON config.")
@click.option("--seed", type=int, default=0, show_default=True,
              help="Base random seed.")
@click.option("--fs-hz", type=float, default=None,
              help="Override the configured sampling rate for generation.")
@click.pass_context
@_usage_guard
def main(click_ctx, config_path, seed, fs_hz):
    """EOG de-drifting toolkit: synthesize, detect, de-drift, evaluate."""
    cfg = load_config(config_path) if config_path else ToolkitConfig()
    click_ctx.obj = Ctx(cfg, seed, fs_hz)


@main.command()
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@click.option("--n-scenarios", default=10, show_default=True, type=int)
@click.option("--drift/--no-drift", "with_drift", default=True, show_default=True,
              help="Inject a random slow-drift scenario into each trial.")
@click.option("--blink-rate", type=float, default=None,
              help="Blink rate in Hz (overrides config).")
@click.option("--noise-std", type=float, default=None,
              help="White noise std in volts (overrides config).")
@click.option("--script", "script_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Trial script JSON (fixations etc.).")
@click.pass_obj
@_usage_guard
def synth(ctx: Ctx, out_dir, n_scenarios, with_drift, blink_rate, noise_std, script_path):
    """Generate a corpus of synthetic trials with ground truth."""
    if n_scenarios < 1:
        raise ValueError("--n-scenarios must be >= 1")
    sim = ctx.config.sim
    fs = ctx.fs_hz if ctx.fs_hz is not None else sim.fs_hz
    noise = noise_std if noise_std is not None else sim.noise_std_v
    rate = blink_rate if blink_rate is not None else sim.blink_rate_hz
    script = _load_script(script_path) if script_path else default_trial_script()
    specs = (
        random_drift_scenarios(n_scenarios, seed=ctx.seed)
        if with_drift
        else [DriftSpec() for _ in range(n_scenarios)]
    )
    out = Path(out_dir)
    for i in range(n_scenarios):
        scen_seed = int(np.random.SeedSequence([ctx.seed, i]).generate_state(1)[0])
        gt = synthesize(
            script=script, fs_hz=fs, noise_std_v=noise,
            blink_rate_hz=rate, seed=scen_seed,
        )
        gt = inject_drift(gt, specs[i])
        write_scenario(out / f"scenario_{i:03d}", gt)
    _echo_config(out, ctx)
    click.echo(f"wrote {n_scenarios} scenarios to {out}")


def _load_script(path) -> TrialScript:
    d = toolkit_io.read_json(path)
    return TrialScript(
        fixations=[(tid, float(dur)) for tid, dur in d["fixations"]],
        amplitude_scale_v_per_deg=float(
            d.get("amplitude_scale_v_per_deg", TrialScript([("C", 1.0)]).amplitude_scale_v_per_deg)
        ),
        saccade_duration_s=float(d.get("saccade_duration_s", 0.05)),
    )


@main.command("inject-drift")
@click.option("--scenario", "scenario_dir", required=True,
              type=click.Path(exists=True, file_okay=False))
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@click.option("--spec", "spec_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Drift spec JSON; otherwise one random spec.")
@click.pass_obj
@_usage_guard
def inject_drift_cmd(ctx: Ctx, scenario_dir, out_dir, spec_path):
    """Replace the drift component of an existing scenario."""
    gt = read_scenario(scenario_dir)
    if spec_path:
        spec = DriftSpec.from_dict(toolkit_io.read_json(spec_path))
    else:
        spec = random_drift_scenarios(1, seed=ctx.seed)[0]
    gt = inject_drift(gt, spec)
    write_scenario(out_dir, gt)
    _echo_config(Path(out_dir), ctx)
    click.echo(f"injected drift into {out_dir}")


@main.command("blink-remove")
@click.option("--in", "in_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
@click.option("--events-out", type=click.Path(dir_okay=False), default=None)
@click.pass_obj
@_usage_guard
def blink_remove(ctx: Ctx, in_path, out_path, events_out):
    """Detect blink pulses and interpolate them away."""
    signal = toolkit_io.read_signal_csv(in_path)
    events = detect_blinks(signal, ctx.config.blink)
    cleaned = remove_blinks(signal, events)
    toolkit_io.write_signal_csv(out_path, cleaned)
    if events_out:
        toolkit_io.write_events_csv(
            events_out,
            [
                {"start_idx": e.start_idx, "peak_idx": e.peak_idx, "end_idx": e.end_idx}
                for e in events
            ],
            ["start_idx", "peak_idx", "end_idx"],
        )
    click.echo(f"removed {len(events)} blink(s) -> {out_path}")


@main.command()
@click.option("--in", "in_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
@click.pass_obj
@_usage_guard
def detect(ctx: Ctx, in_path, out_path):
    """Write detected saccade windows as an events CSV."""
    signal = toolkit_io.read_signal_csv(in_path)
    deriv = differentiate(signal, ctx.config.detect.lag_n)
    events = detect_saccades(deriv, ctx.config.detect)
    toolkit_io.write_events_csv(
        out_path,
        [
            {
                "peak_idx": e.peak_idx,
                "start_idx": e.start_idx,
                "end_idx": e.end_idx,
                "polarity": e.polarity,
            }
            for e in events
        ],
        ["peak_idx", "start_idx", "end_idx", "polarity"],
    )
    click.echo(f"detected {len(events)} saccade(s) -> {out_path}")


@main.command()
@click.option("--in", "in_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--method", type=click.Choice(METHOD_IDS), default="fgd", show_default=True)
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
@click.option("--trend-out", type=click.Path(dir_okay=False), default=None)
@click.pass_obj
@_usage_guard
def dedrift(ctx: Ctx, in_path, method, out_path, trend_out):
    """De-drift one signal CSV with the chosen method."""
    signal = toolkit_io.read_signal_csv(in_path)
    m = ctx.config.methods
    if method in ("fgd", "wavelet"):
        _warn_band_edge(signal.fs_hz, ctx.config.wavelet.level)
    result = run_method(
        method, signal, fgd_cfg=ctx.config.fgd(),
        poly_order=m.poly_order, cutoff_hz=m.highpass_cutoff_hz,
        butter_order=m.highpass_order,
    )
    toolkit_io.write_signal_csv(out_path, result.dedrifted)
    if trend_out:
        toolkit_io.write_signal_csv(trend_out, result.trend)
    click.echo(f"{method}: de-drifted {in_path} -> {out_path}")


def _scenario_dirs(corpus: Path) -> list[Path]:
    dirs = sorted(p for p in corpus.iterdir() if p.is_dir() and (p / "meta.json").exists())
    if not dirs:
        raise ValueError(f"no scenario directories under {corpus}")
    return dirs


@main.command()
@click.option("--corpus", "corpus_dir", required=True,
              type=click.Path(exists=True, file_okay=False))
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@click.option("--write-signals/--no-write-signals", default=True, show_default=True,
              help="Also write per-scenario de-drifted and trend CSVs.")
@click.pass_obj
@_usage_guard
def compare(ctx: Ctx, corpus_dir, out_dir, write_signals):
    """Run all methods over a corpus and tabulate gaze accuracy.

    The angle regression is fitted on the first scenario and applied to the
    rest, which are the ones scored.
    """
    corpus = Path(corpus_dir)
    out = Path(out_dir)
    dirs = _scenario_dirs(corpus)
    if len(dirs) < 2:
        raise ValueError("compare needs at least 2 scenarios (1 to fit, 1+ to score)")
    scenarios = [read_scenario(d) for d in dirs]
    out.mkdir(parents=True, exist_ok=True)
    m = ctx.config.methods
    _warn_band_edge(scenarios[0].fs_hz, ctx.config.wavelet.level)
    summary = {}
    for method in METHOD_IDS:
        results = [
            run_method(
                method, gt.raw, fgd_cfg=ctx.config.fgd(),
                poly_order=m.poly_order, cutoff_hz=m.highpass_cutoff_hz,
                butter_order=m.highpass_order,
            )
            for gt in scenarios
        ]
        fit = fit_regression(results[0].dedrifted, scenarios[0].gaze)
        errors = []
        for gt, res in zip(scenarios[1:], results[1:]):
            predicted = predict_gaze(res.dedrifted, fit)
            errors.extend(
                saccade_errors(predicted, gt.gaze, gt.events, cfg=ctx.config.eval)
            )
        report = build_report(errors, method, ctx.config.eval)
        summary[method] = report.to_dict()
        summary[method]["regression"] = {
            "slope_deg_per_v": fit.slope_deg_per_v,
            "intercept_deg": fit.intercept_deg,
            "r_squared": fit.r_squared,
        }
        toolkit_io.write_json(out / f"report_{method}.json", report.to_dict())
        (out / f"report_{method}.txt").write_text(format_report(report) + "\n")
        if write_signals:
            for d, res in zip(dirs, results):
                mdir = out / method / d.name
                mdir.mkdir(parents=True, exist_ok=True)
                toolkit_io.write_signal_csv(mdir / "dedrifted.csv", res.dedrifted)
                toolkit_io.write_signal_csv(mdir / "trend.csv", res.trend)
        click.echo(format_report(report))
        click.echo("")
    toolkit_io.write_json(out / "summary.json", summary)
    _echo_config(out, ctx)
    click.echo(f"comparison written to {out}")


@main.command()
@click.option("--dedrifted", "dedrifted_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--scenario", "scenario_dir", required=True,
              type=click.Path(exists=True, file_okay=False))
@click.option("--fit-scenario", "fit_dir", type=click.Path(exists=True, file_okay=False),
              default=None, help="Scenario used to fit the angle regression "
              "(defaults to --scenario; pass the de-drifted CSV's own scenario "
              "for a self-fit).")
@click.option("--fit-dedrifted", "fit_dedrifted_path",
              type=click.Path(exists=True, dir_okay=False), default=None,
              help="De-drifted CSV matching --fit-scenario.")
@click.option("--method-label", default="custom", show_default=True)
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None)
@click.pass_obj
@_usage_guard
def evaluate(ctx: Ctx, dedrifted_path, scenario_dir, fit_dir, fit_dedrifted_path,
             method_label, out_path):
    """Score one de-drifted signal against a scenario's ground truth."""
    gt = read_scenario(scenario_dir)
    dedrifted = toolkit_io.read_signal_csv(dedrifted_path)
    if dedrifted.n != gt.gaze.n:
        raise ValueError(
            f"de-drifted length {dedrifted.n} does not match scenario "
            f"length {gt.gaze.n}"
        )
    if fit_dir is not None:
        fit_gt = read_scenario(fit_dir)
        fit_signal = (
            toolkit_io.read_signal_csv(fit_dedrifted_path)
            if fit_dedrifted_path
            else dedrifted
        )
        fit = fit_regression(fit_signal, fit_gt.gaze)
    else:
        fit = fit_regression(dedrifted, gt.gaze)
    predicted = predict_gaze(dedrifted, fit)
    errors = saccade_errors(predicted, gt.gaze, gt.events, cfg=ctx.config.eval)
    report = build_report(errors, method_label, ctx.config.eval)
    if out_path:
        toolkit_io.write_json(out_path, report.to_dict())
    click.echo(format_report(report))


if __name__ == "__main__":
    main()
