"""End-to-end pipelines: estimate runs, reference runs, error comparison.

Each run writes into an output directory:

- ``estimate-<method>-seed<seed>.csv``   expectation series per method/seed
- ``reference.csv``                      grid-solver expectation series
- ``metadata.json``                      full config echo plus run summary

``compare_runs`` consumes a set of such directories (one per epsilon) and
emits ``compare.csv`` (observable,epsilon,method,error) and ``slopes.csv``.
"""

from __future__ import annotations

import json
import os

import numpy as np

from . import io
from .config import RunConfig
from .estimator import ExpectationSeries, convergence_slope, run_estimator, time_averaged_error
from .reference import run_reference

__all__ = [
    "estimate_pipeline",
    "reference_pipeline",
    "run_pipeline",
    "compare_runs",
    "experiment_pipeline",
]


def estimate_pipeline(cfg, out_dir, log=None):
    """Run every (method, seed) estimator for a config; returns written paths."""
    state, pot = cfg.state(), cfg.potential()
    observables = cfg.observables()
    integrator = cfg.integrator()
    paths = []
    for method in cfg.methods:
        seeds = cfg.seeds if cfg.sampler().mode == "mc" else [cfg.seeds[0]]
        for seed in seeds:
            series = run_estimator(state, method, observables, cfg.sampler(seed),
                                   integrator, pot,
                                   gaussian_negative=cfg.gaussian_negative)
            path = os.path.join(out_dir, f"estimate-{method}-seed{seed}.csv")
            io.write_series_csv(path, series)
            paths.append(path)
            if log:
                log(f"wrote {path}")
    return paths


def reference_pipeline(cfg, out_dir, log=None):
    """Run the grid solver for a config; returns (path, series) or None."""
    grid = cfg.reference_grid()
    if grid is None:
        return None
    series = run_reference(cfg.state(), cfg.potential(), grid, cfg.reference_dt(),
                           cfg.integrator().t_final, cfg.observables(),
                           record_stride=cfg.reference_record_stride(),
                           boundary_tol=cfg.reference_boundary_tol(),
                           boundary_warn=cfg.reference_boundary_warn())
    path = os.path.join(out_dir, "reference.csv")
    io.write_series_csv(path, series)
    if log:
        log(f"wrote {path}")
    return path, series


def run_pipeline(cfg, out_dir, log=None):
    """Estimates plus reference plus metadata for one config."""
    os.makedirs(out_dir, exist_ok=True)
    paths = estimate_pipeline(cfg, out_dir, log=log)
    ref = reference_pipeline(cfg, out_dir, log=log)
    extra = {"artifacts": [os.path.basename(p) for p in paths]}
    if ref is not None:
        extra["artifacts"].append(os.path.basename(ref[0]))
        extra["reference_norm_drift"] = ref[1].meta.get("norm_drift")
    io.write_metadata(os.path.join(out_dir, "metadata.json"), cfg.to_dict(), extra)
    return out_dir


def _load_run(run_dir):
    with open(os.path.join(run_dir, "metadata.json")) as fh:
        cfg = RunConfig.from_dict(json.load(fh)["config"])
    ref_times, ref_values = io.read_series_csv(os.path.join(run_dir, "reference.csv"))
    reference = ExpectationSeries(ref_times, ref_values, "reference", {})
    by_method = {}
    for name in sorted(os.listdir(run_dir)):
        if not (name.startswith("estimate-") and name.endswith(".csv")):
            continue
        method = name[len("estimate-"):name.rindex("-seed")]
        times, values = io.read_series_csv(os.path.join(run_dir, name))
        by_method.setdefault(method, []).append(
            ExpectationSeries(times, values, method, {}))
    return cfg, by_method, reference


def compare_runs(run_dirs, out_dir, observables=None):
    """Time-averaged |estimate - reference| per (observable, epsilon, method),
    seed-averaged, plus log-log slopes in epsilon per (observable, method)."""
    rows = []
    for run_dir in run_dirs:
        cfg, by_method, reference = _load_run(run_dir)
        for method, seed_series in by_method.items():
            per_seed = [time_averaged_error(s, reference) for s in seed_series]
            names = observables or sorted(per_seed[0])
            for obs in names:
                err = float(np.mean([e[obs] for e in per_seed]))
                rows.append((obs, cfg.eps, method, err))
    os.makedirs(out_dir, exist_ok=True)
    compare_path = io.write_compare_csv(os.path.join(out_dir, "compare.csv"), rows)

    slope_rows = []
    keys = sorted({(obs, method) for obs, _, method, _ in rows})
    for obs, method in keys:
        pairs = [(eps, err) for o, eps, m, err in rows if (o, m) == (obs, method)]
        if len(pairs) >= 3:
            slope_rows.append((obs, method, convergence_slope(pairs)))
    slopes_path = io.write_slopes_csv(os.path.join(out_dir, "slopes.csv"), slope_rows)
    return compare_path, slopes_path, rows, slope_rows


def experiment_pipeline(name, scale, out_dir, log=None):
    """Full preset pipeline for one experiment at desk or paper scale."""
    from .presets import preset_catalog, torsional_eps_values

    catalog = preset_catalog(scale)
    os.makedirs(out_dir, exist_ok=True)
    written = []
    if name == "torsional":
        run_dirs = []
        for eps in torsional_eps_values(scale):
            key = f"torsional-eps{eps:g}-halton"
            run_dir = os.path.join(out_dir, key)
            run_pipeline(catalog[key], run_dir, log=log)
            run_dirs.append(run_dir)
            written.append(run_dir)
        compare_path, slopes_path, _, _ = compare_runs(run_dirs, out_dir)
        written += [compare_path, slopes_path]
    elif name == "henon-heiles":
        written.append(run_pipeline(catalog["henon-heiles"],
                                    os.path.join(out_dir, "henon-heiles"), log=log))
    elif name == "cubic-well":
        ks = (0, 1, 3, 6) if scale == "paper" else (1, 3)
        for k in ks:
            key = f"cubic-well-k{k}"
            written.append(run_pipeline(catalog[key], os.path.join(out_dir, key),
                                        log=log))
    else:
        raise ValueError(f"unknown experiment {name!r}")
    return written
