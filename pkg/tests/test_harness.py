"""Configuration, pipeline, preset, and CLI integration tests."""

import json
import os

import numpy as np
import pytest

from semiphase import (
    ConfigError,
    ExpectationSeries,
    RunConfig,
    cli,
    compare_runs,
    io,
    preset_catalog,
    run_pipeline,
    torsional_eps_values,
)


def small_config(tmp=None, **overrides):
    """Tiny harmonic run that finishes in well under a second."""
    data = {
        "eps": 0.05,
        "potential": {"name": "harmonic", "dim": 1},
        "initial_state": {"family": "gaussian", "center": [1.0, 0.0]},
        "methods": ["spectrogram"],
        "sampler": {"mode": "mc", "count": 200, "seeds": [0, 1]},
        "integrator": {"scheme": "strang", "dt": 0.05, "t_final": 0.5,
                       "record_stride": 2},
        "observables": ["q1", "p1"],
        "reference": {"enabled": True, "mins": [-6.0], "maxs": [6.0],
                      "nodes": [64], "dt": 0.01, "record_stride": 10},
    }
    data.update(overrides)
    return data


# ---------------------------------------------------------------- RunConfig


def test_config_round_trips_through_dict():
    data = small_config()
    cfg = RunConfig.from_dict(data)
    assert cfg.to_dict() == data
    assert RunConfig.from_dict(cfg.to_dict()) == cfg


def test_config_from_file(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps(small_config()))
    cfg = RunConfig.from_file(path)
    assert cfg.eps == 0.05
    assert cfg.methods == ["spectrogram"]
    assert cfg.seeds == [0, 1]


def test_schema_error_carries_json_pointer():
    with pytest.raises(ConfigError, match="/eps"):
        RunConfig.from_dict(small_config(eps=-1.0))
    with pytest.raises(ConfigError, match="/methods/0"):
        RunConfig.from_dict(small_config(methods=["telepathy"]))
    with pytest.raises(ConfigError, match="/sampler/count"):
        RunConfig.from_dict(small_config(
            sampler={"mode": "mc", "count": 0}))


def test_missing_required_field_rejected():
    data = small_config()
    del data["integrator"]
    with pytest.raises(ConfigError, match="integrator"):
        RunConfig.from_dict(data)


def test_unknown_top_level_key_rejected():
    with pytest.raises(ConfigError, match="frobnicate"):
        RunConfig.from_dict(small_config(frobnicate=1))


def test_cross_check_dimension_mismatch():
    with pytest.raises(ConfigError, match="dimension"):
        RunConfig.from_dict(small_config(
            potential={"name": "harmonic", "dim": 2}))


def test_cross_check_wigner_needs_gaussian():
    with pytest.raises(ConfigError, match="wigner"):
        RunConfig.from_dict(small_config(
            methods=["wigner"],
            initial_state={"family": "hermite", "center": [1.0, 0.0],
                           "k": [1]}))


def test_cross_check_unknown_observable():
    with pytest.raises(ConfigError, match="/observables"):
        RunConfig.from_dict(small_config(observables=["q1", "banana"]))


def test_cross_check_reference_needs_dt():
    ref = {"enabled": True, "mins": [-6.0], "maxs": [6.0], "nodes": [64]}
    with pytest.raises(ConfigError, match="dt"):
        RunConfig.from_dict(small_config(reference=ref))


def test_reference_boundary_defaults():
    cfg = RunConfig.from_dict(small_config())
    assert cfg.reference_boundary_tol() == 1e-10
    assert cfg.reference_boundary_warn() == 1e-8


# ---------------------------------------------------------------- pipelines


def test_run_pipeline_artifacts_and_metadata(tmp_path):
    cfg = RunConfig.from_dict(small_config())
    out = tmp_path / "run"
    run_pipeline(cfg, str(out))
    names = sorted(os.listdir(out))
    assert names == ["estimate-spectrogram-seed0.csv",
                     "estimate-spectrogram-seed1.csv",
                     "metadata.json", "reference.csv"]
    with open(out / "metadata.json") as fh:
        payload = json.load(fh)
    assert RunConfig.from_dict(payload["config"]) == cfg
    assert sorted(payload["run"]["artifacts"]) == [n for n in names
                                                   if n.endswith(".csv")]
    assert payload["run"]["reference_norm_drift"] < 1e-12


def test_pipeline_outputs_are_byte_identical(tmp_path):
    cfg = RunConfig.from_dict(small_config())
    run_pipeline(cfg, str(tmp_path / "a"))
    run_pipeline(cfg, str(tmp_path / "b"))
    for name in os.listdir(tmp_path / "a"):
        a = (tmp_path / "a" / name).read_bytes()
        b = (tmp_path / "b" / name).read_bytes()
        assert a == b, name


def test_series_csv_round_trip(tmp_path):
    times = np.linspace(0.0, 1.0, 7)
    values = {"q1": np.sin(times), "p1": np.cos(times)}
    series = ExpectationSeries(times, values, "spectrogram", {})
    path = io.write_series_csv(tmp_path / "s.csv", series)
    times2, values2 = io.read_series_csv(path)
    assert np.array_equal(times, times2)
    for name in values:
        assert np.array_equal(values[name], values2[name])


def _synthetic_run_dir(root, eps, error):
    """Run directory whose spectrogram error against the reference is
    exactly ``error`` for q1 at every time."""
    out = os.path.join(root, f"eps{eps:g}")
    os.makedirs(out)
    times = np.linspace(0.0, 1.0, 5)
    ref = ExpectationSeries(times, {"q1": np.zeros(5)}, "reference", {})
    est = ExpectationSeries(times, {"q1": np.full(5, error)}, "spectrogram", {})
    io.write_series_csv(os.path.join(out, "reference.csv"), ref)
    io.write_series_csv(os.path.join(out, "estimate-spectrogram-seed0.csv"), est)
    io.write_metadata(os.path.join(out, "metadata.json"),
                      small_config(eps=eps))
    return out


def test_compare_runs_errors_and_slopes(tmp_path):
    dirs = [_synthetic_run_dir(tmp_path, eps, eps**2)
            for eps in (0.1, 0.05, 0.01)]
    compare_path, slopes_path, rows, slope_rows = compare_runs(
        dirs, str(tmp_path / "cmp"), observables=["q1"])
    assert os.path.exists(compare_path) and os.path.exists(slopes_path)
    errs = {eps: err for _, eps, _, err in rows}
    assert errs[0.1] == pytest.approx(0.01, rel=1e-12)
    assert slope_rows == [("q1", "spectrogram",
                           pytest.approx(2.0, abs=1e-9))]


# ------------------------------------------------------------------ presets


def test_preset_catalog_paper_scale_parameters():
    cat = preset_catalog("paper")
    assert torsional_eps_values("paper") == [1e-1, 5e-2, 1e-2, 5e-3, 1e-3]

    fine = cat["torsional-eps0.001-mc"]
    assert fine.raw["sampler"]["count"] == 10_000_000
    assert fine.raw["integrator"] == {"scheme": "order8", "dt": 0.1,
                                      "t_final": 20.0, "record_stride": 10}
    assert fine.raw["reference"]["nodes"] == [2048, 2048]
    assert fine.raw["reference"]["dt"] == pytest.approx(20.0 / 10_000)
    assert cat["torsional-eps0.001-halton"].raw["sampler"]["count"] == 2_000_000
    assert cat["torsional-eps0.1-mc"].raw["reference"]["nodes"] == [1536, 1536]

    hh = cat["henon-heiles"]
    assert hh.eps == 0.0029
    assert hh.raw["potential"]["dim"] == 32
    assert hh.raw["sampler"]["count"] == 2**17
    assert hh.raw["integrator"]["dt"] == 0.02
    assert hh.methods == ["spectrogram", "naive-husimi", "wigner"]

    cw = cat["cubic-well-k3"]
    assert cw.eps == 0.4642
    assert cw.raw["initial_state"] == {"family": "hermite",
                                       "center": [0.4642, -1.0], "k": [3]}
    assert cw.raw["sampler"]["count"] == 2**14
    assert cw.raw["integrator"]["t_final"] == 10.0
    assert "cubic-well-k0" in cat and "cubic-well-k6" in cat


def test_preset_catalog_desk_scale_shrinks_runs():
    cat = preset_catalog("desk")
    assert torsional_eps_values("desk") == [1e-1, 5e-2, 1e-2]
    assert cat["torsional-eps0.1-mc"].raw["sampler"]["count"] == 50_000 // 16
    assert cat["torsional-eps0.1-mc"].raw["reference"]["nodes"] == [256, 256]
    assert cat["henon-heiles"].raw["sampler"]["count"] == 2**13
    assert cat["henon-heiles"].raw["integrator"]["scheme"] == "strang"
    with pytest.raises(ValueError):
        preset_catalog("poster")


def test_presets_all_validate():
    for scale in ("desk", "paper"):
        for name, cfg in preset_catalog(scale).items():
            assert isinstance(cfg, RunConfig), name


# ---------------------------------------------------------------------- CLI


def test_cli_density_grid_writes_csv(tmp_path):
    out = tmp_path / "grid.csv"
    code = cli.main(["density-grid", "--eps", "0.1", "--family", "gaussian",
                     "--center", "1,0", "--q-min", "-2", "--q-max", "2",
                     "--p-min", "-2", "--p-max", "2", "--nq", "8", "--np", "8",
                     "--out", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "q,p,wigner,husimi,mu"
    assert len(lines) == 1 + 8 * 8


def test_cli_rejects_bad_config_with_exit_2(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(small_config(observables=["banana"])))
    code = cli.main(["estimate", "--config", str(path),
                     "--out-dir", str(tmp_path / "out")])
    assert code == 2


def test_cli_reference_requires_reference_section(tmp_path):
    data = small_config()
    del data["reference"]
    path = tmp_path / "noref.json"
    path.write_text(json.dumps(data))
    code = cli.main(["reference", "--config", str(path),
                     "--out-dir", str(tmp_path / "out")])
    assert code == 2


def test_cli_sample_dumps_signed_mixture(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(small_config()))
    out = tmp_path / "points.csv"
    code = cli.main(["sample", "--config", str(path), "--seed", "3",
                     "--out", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "component,weight,q1,p1"
    # gaussian in d=1: positive component plus one negative component
    assert len(lines) == 1 + 2 * 200


def test_cli_run_and_compare(tmp_path):
    dirs = []
    for eps in (0.1, 0.05, 0.025):
        path = tmp_path / f"cfg{eps:g}.json"
        path.write_text(json.dumps(small_config(
            eps=eps,
            sampler={"mode": "halton", "count": 256})))
        out = tmp_path / f"run{eps:g}"
        assert cli.main(["run", "--config", str(path),
                         "--out-dir", str(out)]) == 0
        dirs.append(str(out))
    args = ["compare", "--out-dir", str(tmp_path / "cmp")]
    for d in dirs:
        args += ["--run", d]
    assert cli.main(args) == 0
    text = (tmp_path / "cmp" / "slopes.csv").read_text()
    assert text.startswith("observable,method,slope\n")
    assert "q1,spectrogram," in text
