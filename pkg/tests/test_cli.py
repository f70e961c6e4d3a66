"""End-to-end checks of the command-line interface."""
import json
from pathlib import Path

import numpy as np
import pytest
from click.testing import CliRunner

from eogdrift import io as toolkit_io
from eogdrift.cli import main
from eogdrift.methods import METHOD_IDS

SCENARIO_FILES = [
    "raw.csv",
    "clean.csv",
    "drift.csv",
    "noise.csv",
    "gaze.csv",
    "events.csv",
    "meta.json",
]


def run(*args):
    return CliRunner().invoke(main, [str(a) for a in args])


@pytest.fixture(scope="module")
def corpus(tmp_path_factory):
    out = tmp_path_factory.mktemp("cli") / "corpus"
    res = run("--seed", 7, "synth", "--out", out, "--n-scenarios", 3)
    assert res.exit_code == 0, res.output
    return out


def test_synth_writes_scenarios_and_config(corpus):
    for i in range(3):
        scen = corpus / f"scenario_{i:03d}"
        for name in SCENARIO_FILES:
            assert (scen / name).exists(), name
    eff = json.loads((corpus / "effective_config.json").read_text())
    assert eff["seed"] == 7
    assert eff["detect"]["k_peak"] == 3.0


def test_synth_is_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        res = run("--seed", 12, "synth", "--out", out, "--n-scenarios", 2)
        assert res.exit_code == 0, res.output
    for i in range(2):
        for name in ("raw.csv", "meta.json", "events.csv"):
            pa = a / f"scenario_{i:03d}" / name
            pb = b / f"scenario_{i:03d}" / name
            assert pa.read_bytes() == pb.read_bytes(), name


def test_synth_rejects_zero_scenarios(tmp_path):
    res = run("synth", "--out", tmp_path / "x", "--n-scenarios", 0)
    assert res.exit_code == 2


def test_synth_fs_override(tmp_path):
    out = tmp_path / "fast"
    res = run("--fs-hz", 500, "synth", "--out", out, "--n-scenarios", 1)
    assert res.exit_code == 0, res.output
    meta = json.loads((out / "scenario_000" / "meta.json").read_text())
    assert meta["fs_hz"] == 500.0
    eff = json.loads((out / "effective_config.json").read_text())
    assert eff["fs_hz_override"] == 500.0


def test_detect_recovers_script_saccades(corpus, tmp_path):
    events_path = tmp_path / "events.csv"
    res = run("detect", "--in", corpus / "scenario_000" / "raw.csv",
              "--out", events_path)
    assert res.exit_code == 0, res.output
    rows = toolkit_io.read_events_csv(events_path)
    assert len(rows) == 16
    assert set(rows[0]) == {"peak_idx", "start_idx", "end_idx", "polarity"}


def test_dedrift_trend_plus_output_reproduces_input(corpus, tmp_path):
    raw_path = corpus / "scenario_000" / "raw.csv"
    out_path = tmp_path / "dedrifted.csv"
    trend_path = tmp_path / "trend.csv"
    res = run("dedrift", "--in", raw_path, "--method", "fgd",
              "--out", out_path, "--trend-out", trend_path)
    assert res.exit_code == 0, res.output
    raw = toolkit_io.read_signal_csv(raw_path)
    out = toolkit_io.read_signal_csv(out_path)
    trend = toolkit_io.read_signal_csv(trend_path)
    assert np.allclose(out.samples + trend.samples, raw.samples, atol=1e-12)


def test_dedrift_every_method_runs(corpus, tmp_path):
    raw_path = corpus / "scenario_001" / "raw.csv"
    for method in METHOD_IDS:
        out_path = tmp_path / f"{method}.csv"
        res = run("dedrift", "--in", raw_path, "--method", method,
                  "--out", out_path)
        assert res.exit_code == 0, (method, res.output)
        assert out_path.exists()


def test_dedrift_unknown_method_is_usage_error(corpus, tmp_path):
    res = run("dedrift", "--in", corpus / "scenario_000" / "raw.csv",
              "--method", "median", "--out", tmp_path / "x.csv")
    assert res.exit_code == 2


def test_missing_input_is_usage_error(tmp_path):
    res = run("dedrift", "--in", tmp_path / "nope.csv",
              "--out", tmp_path / "x.csv")
    assert res.exit_code == 2


def test_band_edge_warning_on_high_rate_signal(tmp_path):
    out = tmp_path / "fast"
    res = run("--fs-hz", 1000, "synth", "--out", out, "--n-scenarios", 1)
    assert res.exit_code == 0, res.output
    res = run("dedrift", "--in", out / "scenario_000" / "raw.csv",
              "--method", "wavelet", "--out", tmp_path / "w.csv")
    assert res.exit_code == 0, res.output
    assert "approximation band" in res.stderr


def test_blink_remove_round_trip(tmp_path):
    out = tmp_path / "blinky"
    res = run("--seed", 7, "synth", "--out", out, "--n-scenarios", 1,
              "--blink-rate", 0.3)
    assert res.exit_code == 0, res.output
    raw_path = out / "scenario_000" / "raw.csv"
    cleaned_path = tmp_path / "cleaned.csv"
    events_path = tmp_path / "blinks.csv"
    res = run("blink-remove", "--in", raw_path, "--out", cleaned_path,
              "--events-out", events_path)
    assert res.exit_code == 0, res.output
    true_blinks = toolkit_io.read_events_csv(out / "scenario_000" / "blinks.csv")
    found = toolkit_io.read_events_csv(events_path)
    assert len(found) == len(true_blinks)
    raw = toolkit_io.read_signal_csv(raw_path)
    cleaned = toolkit_io.read_signal_csv(cleaned_path)
    assert cleaned.n == raw.n
    assert not np.array_equal(cleaned.samples, raw.samples)


def test_inject_drift_replaces_only_drift(corpus, tmp_path):
    spec_path = tmp_path / "spec.json"
    spec_path.write_text(json.dumps(
        {"linear_slope_v_per_s": 0.02, "sinusoids": [[0.1, 0.05, 0.0]]}
    ))
    out = tmp_path / "redrifted"
    res = run("inject-drift", "--scenario", corpus / "scenario_000",
              "--out", out, "--spec", spec_path)
    assert res.exit_code == 0, res.output
    clean_a = (corpus / "scenario_000" / "clean.csv").read_bytes()
    assert (out / "clean.csv").read_bytes() == clean_a
    drift = toolkit_io.read_signal_csv(out / "drift.csv")
    t = drift.times()
    expected = 0.02 * t + 0.1 * np.sin(2 * np.pi * 0.05 * t)
    assert np.allclose(drift.samples, expected, atol=1e-12)


def test_compare_writes_reports_for_every_method(corpus, tmp_path):
    out = tmp_path / "cmp"
    res = run("compare", "--corpus", corpus, "--out", out, "--no-write-signals")
    assert res.exit_code == 0, res.output
    summary = json.loads((out / "summary.json").read_text())
    assert set(summary) == set(METHOD_IDS)
    for method in METHOD_IDS:
        assert (out / f"report_{method}.json").exists()
        assert (out / f"report_{method}.txt").exists()
        assert "regression" in summary[method]
        assert summary[method]["n_evaluated"] > 0
    # the guided method should beat the undetected baselines on this corpus
    assert summary["fgd"]["overall_mean_deg"] < summary["poly"]["overall_mean_deg"]
    assert not (out / "fgd").exists()


def test_compare_write_signals(corpus, tmp_path):
    out = tmp_path / "cmp_sig"
    res = run("compare", "--corpus", corpus, "--out", out)
    assert res.exit_code == 0, res.output
    for method in METHOD_IDS:
        sig_dir = out / method / "scenario_001"
        assert (sig_dir / "dedrifted.csv").exists()
        assert (sig_dir / "trend.csv").exists()


def test_compare_needs_two_scenarios(tmp_path):
    solo = tmp_path / "solo"
    res = run("synth", "--out", solo, "--n-scenarios", 1)
    assert res.exit_code == 0, res.output
    res = run("compare", "--corpus", solo, "--out", tmp_path / "cmp")
    assert res.exit_code == 2
    assert "at least 2" in res.output


def test_compare_empty_dir_is_usage_error(tmp_path):
    empty = tmp_path / "empty"
    empty.mkdir()
    res = run("compare", "--corpus", empty, "--out", tmp_path / "cmp")
    assert res.exit_code == 2


def test_evaluate_cross_scenario_fit(corpus, tmp_path):
    ded_fit = tmp_path / "ded_fit.csv"
    ded_score = tmp_path / "ded_score.csv"
    for scen, out in (("scenario_000", ded_fit), ("scenario_001", ded_score)):
        res = run("dedrift", "--in", corpus / scen / "raw.csv", "--out", out)
        assert res.exit_code == 0, res.output
    report_path = tmp_path / "report.json"
    res = run("evaluate", "--dedrifted", ded_score,
              "--scenario", corpus / "scenario_001",
              "--fit-scenario", corpus / "scenario_000",
              "--fit-dedrifted", ded_fit,
              "--method-label", "fgd", "--out", report_path)
    assert res.exit_code == 0, res.output
    report = json.loads(report_path.read_text())
    assert report["method_id"] == "fgd"
    assert report["n_evaluated"] > 0
    assert report["overall_mean_deg"] < 5.0
    assert "R4" in report["per_target"]


def test_evaluate_length_mismatch_is_usage_error(corpus, tmp_path):
    raw = toolkit_io.read_signal_csv(corpus / "scenario_000" / "raw.csv")
    short = tmp_path / "short.csv"
    toolkit_io.write_signal_csv(short, raw.with_samples(raw.samples[:100]))
    res = run("evaluate", "--dedrifted", short,
              "--scenario", corpus / "scenario_000")
    assert res.exit_code == 2
    assert "does not match" in res.output


def test_bad_config_file_is_usage_error(tmp_path, corpus):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"detect": {"kpeak": 2.0}}))
    res = run("--config", cfg, "detect",
              "--in", corpus / "scenario_000" / "raw.csv",
              "--out", tmp_path / "e.csv")
    assert res.exit_code == 2
    assert "unknown keys" in res.output


def test_config_file_changes_behavior(tmp_path, corpus):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"detect": {"k_peak": 1e9}}))
    events_path = tmp_path / "events.csv"
    res = run("--config", cfg, "detect",
              "--in", corpus / "scenario_000" / "raw.csv",
              "--out", events_path)
    assert res.exit_code == 0, res.output
    assert toolkit_io.read_events_csv(events_path) == []
