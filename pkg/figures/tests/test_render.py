"""Rendering tests over synthetic CSVs in the documented artifact formats."""

import numpy as np
import pytest

from phasefig import diverging_levels
from phasefig.cli import main


def write_density_grid(path, n=12):
    qs = np.linspace(-1.0, 1.0, n)
    ps = np.linspace(-1.0, 1.0, n)
    with open(path, "w") as fh:
        fh.write("q,p,wigner,husimi,mu\n")
        for q in qs:
            for p in ps:
                r2 = q * q + p * p
                w = np.exp(-r2)
                fh.write(f"{q},{p},{w},{0.5 * w},{w - 0.3}\n")
    return path


def write_compare(path):
    with open(path, "w") as fh:
        fh.write("observable,epsilon,method,error\n")
        for method, order in (("spectrogram", 2), ("naive-husimi", 1)):
            for eps in (0.1, 0.05, 0.01):
                for obs in ("q1", "p1"):
                    fh.write(f"{obs},{eps},{method},{eps ** order}\n")
    return path


def write_series(path, columns):
    t = np.linspace(0.0, 5.0, 21)
    names = list(columns)
    with open(path, "w") as fh:
        fh.write(",".join(["t"] + names) + "\n")
        for i, ti in enumerate(t):
            fh.write(",".join([str(ti)] + [str(columns[n](ti)) for n in names])
                     + "\n")
    return path


def render(figure, inputs, out):
    argv = ["render", "--figure", figure, "--out", str(out)]
    for path in inputs:
        argv += ["--in", str(path)]
    return main(argv)


# ------------------------------------------------------------------- levels


def test_diverging_levels_zero_centered():
    levels = diverging_levels(np.array([-0.2, 1.5]))
    assert len(levels) == 21
    assert levels[10] == 0.0
    assert np.allclose(levels, -levels[::-1])
    assert levels[-1] == 1.5


def test_diverging_levels_all_zero_input():
    levels = diverging_levels(np.zeros(5))
    assert len(levels) == 21 and levels[0] < 0 < levels[-1]


# --------------------------------------------------------------------- jobs


def test_density_panels_renders(tmp_path):
    csv = write_density_grid(tmp_path / "grid.csv")
    out = tmp_path / "fig.png"
    assert render("density-panels", [csv], out) == 0
    assert out.exists() and out.stat().st_size > 0


def test_convergence_renders(tmp_path):
    csv = write_compare(tmp_path / "compare.csv")
    out = tmp_path / "fig.png"
    assert render("convergence", [csv], out) == 0
    assert out.exists() and out.stat().st_size > 0


def test_energy_cross_check_renders_multiple_inputs(tmp_path):
    inputs = []
    for name in ("estimate-spectrogram-seed0.csv", "estimate-wigner-seed0.csv"):
        inputs.append(write_series(tmp_path / name,
                                   {"potential": np.cos, "kinetic": np.sin}))
    out = tmp_path / "fig.png"
    assert render("energy-cross-check", inputs, out) == 0
    assert out.exists() and out.stat().st_size > 0


def test_density_profile_renders(tmp_path):
    csv = write_density_grid(tmp_path / "grid.csv")
    out = tmp_path / "fig.png"
    assert render("density-profile", [csv], out) == 0
    assert out.exists() and out.stat().st_size > 0


def test_phase_plane_renders(tmp_path):
    est = write_series(tmp_path / "estimate-spectrogram-seed0.csv",
                       {"q1": np.cos, "p1": lambda t: -np.sin(t)})
    ref = write_series(tmp_path / "reference.csv",
                       {"q1": np.cos, "p1": lambda t: -np.sin(t)})
    out = tmp_path / "fig.png"
    assert render("phase-plane", [est, ref], out) == 0
    assert out.exists() and out.stat().st_size > 0


def test_escape_renders(tmp_path):
    est = write_series(tmp_path / "estimate-spectrogram-seed0.csv",
                       {"escape": lambda t: min(1.0, 0.2 * t)})
    ref = write_series(tmp_path / "reference.csv",
                       {"escape": lambda t: min(1.0, 0.21 * t)})
    out = tmp_path / "fig.png"
    assert render("escape", [est, ref], out) == 0
    assert out.exists() and out.stat().st_size > 0


def test_rendering_is_deterministic(tmp_path):
    csv = write_density_grid(tmp_path / "grid.csv")
    a, b = tmp_path / "a.png", tmp_path / "b.png"
    assert render("density-panels", [csv], a) == 0
    assert render("density-panels", [csv], b) == 0
    assert a.read_bytes() == b.read_bytes()


# ------------------------------------------------------------------- errors


def test_missing_column_reported_by_name(tmp_path, capsys):
    path = tmp_path / "bad.csv"
    path.write_text("q,p,wigner,husimi\n0,0,1,1\n")
    out = tmp_path / "fig.png"
    assert render("density-panels", [path], out) == 1
    err = capsys.readouterr().err
    assert "mu" in err
    assert not out.exists()


def test_missing_series_column_reported(tmp_path, capsys):
    path = write_series(tmp_path / "series.csv", {"potential": np.cos})
    out = tmp_path / "fig.png"
    assert render("escape", [path], out) == 1
    assert "escape" in capsys.readouterr().err


def test_empty_input_is_warned_noop(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("q,p,wigner,husimi,mu\n")
    out = tmp_path / "fig.png"
    with pytest.warns(UserWarning, match="no data rows"):
        assert render("density-panels", [path], out) == 0
    assert not out.exists()


def test_unknown_figure_rejected(tmp_path):
    with pytest.raises(SystemExit):
        main(["render", "--figure", "pie-chart", "--in", "x.csv",
              "--out", str(tmp_path / "f.png")])
