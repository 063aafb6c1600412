"""Command-line entry point.

Subcommands
-----------
density-grid   evaluate wigner/husimi/mu on a phase-space grid -> CSV
sample         draw signed-mixture samples for a config -> point-dump CSV
estimate       run the trajectory-ensemble estimator for a config
reference      run the grid Schroedinger solver for a config
compare        time-averaged errors + log-log slopes across run directories
experiment     full preset pipeline (torsional | henon-heiles | cubic-well)

Configuration errors exit with status 2 and print the offending JSON
pointer; numerical failures exit with status 1.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import io, sampling
from .config import ConfigError, RunConfig
from .densities import density_grid
from .harness import compare_runs, experiment_pipeline, run_pipeline
from .states import Gaussian, GaussianSuperposition, TranslatedHermite

__all__ = ["main"]


def _floats(text):
    return [float(x) for x in text.split(",") if x.strip()]


def _build_state(args):
    if args.family == "gaussian":
        return Gaussian(_floats(args.center), args.eps)
    if args.family == "hermite":
        k = tuple(int(x) for x in args.k.split(","))
        return TranslatedHermite(_floats(args.center), k, args.eps)
    centers = tuple(tuple(_floats(c)) for c in args.centers.split(";"))
    return GaussianSuperposition(centers, args.eps)


def _cmd_density_grid(args):
    state = _build_state(args)
    fixed = None if args.fixed is None else _floats(args.fixed)
    _, _, _, cols = density_grid(state, (args.q_min, args.q_max),
                                 (args.p_min, args.p_max), args.nq, args.np,
                                 axis=args.axis, fixed=fixed)
    qs = np.linspace(args.q_min, args.q_max, args.nq)
    ps = np.linspace(args.p_min, args.p_max, args.np)
    io.write_density_grid_csv(args.out, qs, ps, cols)
    print(f"wrote {args.out}")
    return 0


def _cmd_sample(args):
    cfg = RunConfig.from_file(args.config)
    mixture = sampling.signed_mixture_decomposition(
        cfg.state(), gaussian_negative=cfg.gaussian_negative)
    sampler = cfg.sampler(args.seed)
    rows = []
    for idx, (weight, comp) in enumerate(mixture.components):
        for pt in sampling.sample_component(comp, sampler, idx):
            rows.append((idx, weight, pt))
    io.write_points_csv(args.out, rows)
    print(f"wrote {args.out} ({len(rows)} points)")
    return 0


def _cmd_estimate(args):
    cfg = RunConfig.from_file(args.config)
    os.makedirs(args.out_dir, exist_ok=True)
    from .harness import estimate_pipeline
    paths = estimate_pipeline(cfg, args.out_dir, log=print)
    io.write_metadata(os.path.join(args.out_dir, "metadata.json"), cfg.to_dict(),
                      {"artifacts": [os.path.basename(p) for p in paths]})
    return 0


def _cmd_reference(args):
    cfg = RunConfig.from_file(args.config)
    os.makedirs(args.out_dir, exist_ok=True)
    from .harness import reference_pipeline
    out = reference_pipeline(cfg, args.out_dir, log=print)
    if out is None:
        print("config has no enabled reference section", file=sys.stderr)
        return 2
    io.write_metadata(os.path.join(args.out_dir, "metadata.json"), cfg.to_dict(),
                      {"artifacts": [os.path.basename(out[0])]})
    return 0


def _cmd_run(args):
    cfg = RunConfig.from_file(args.config)
    run_pipeline(cfg, args.out_dir, log=print)
    return 0


def _cmd_compare(args):
    compare_path, slopes_path, _, slope_rows = compare_runs(args.run, args.out_dir)
    print(f"wrote {compare_path}")
    print(f"wrote {slopes_path}")
    for obs, method, slope in slope_rows:
        print(f"slope[{obs}, {method}] = {slope:.3f}")
    return 0


def _cmd_experiment(args):
    written = experiment_pipeline(args.name, args.scale, args.out_dir, log=print)
    for w in written:
        print(f"artifact: {w}")
    return 0


def _parser():
    p = argparse.ArgumentParser(prog="semiphase",
                                description="semiclassical phase-space estimators")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("density-grid", help="evaluate densities on a grid")
    g.add_argument("--eps", type=float, required=True)
    g.add_argument("--family", choices=["gaussian", "hermite", "superposition"],
                   default="gaussian")
    g.add_argument("--center", help="comma-separated q...,p...")
    g.add_argument("--centers", help="semicolon-separated centers for superposition")
    g.add_argument("--k", help="comma-separated hermite orders")
    g.add_argument("--q-min", type=float, required=True)
    g.add_argument("--q-max", type=float, required=True)
    g.add_argument("--p-min", type=float, required=True)
    g.add_argument("--p-max", type=float, required=True)
    g.add_argument("--nq", type=int, default=200)
    g.add_argument("--np", type=int, default=200)
    g.add_argument("--axis", type=int, default=0)
    g.add_argument("--fixed", help="comma-separated values for the frozen axes")
    g.add_argument("--out", required=True)
    g.set_defaults(fn=_cmd_density_grid)

    s = sub.add_parser("sample", help="dump signed-mixture sample points")
    s.add_argument("--config", required=True)
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("--out", required=True)
    s.set_defaults(fn=_cmd_sample)

    e = sub.add_parser("estimate", help="trajectory-ensemble expectation runs")
    e.add_argument("--config", required=True)
    e.add_argument("--out-dir", required=True)
    e.set_defaults(fn=_cmd_estimate)

    r = sub.add_parser("reference", help="grid Schroedinger solver run")
    r.add_argument("--config", required=True)
    r.add_argument("--out-dir", required=True)
    r.set_defaults(fn=_cmd_reference)

    u = sub.add_parser("run", help="estimate + reference + metadata for one config")
    u.add_argument("--config", required=True)
    u.add_argument("--out-dir", required=True)
    u.set_defaults(fn=_cmd_run)

    c = sub.add_parser("compare", help="errors and slopes across run directories")
    c.add_argument("--run", action="append", required=True,
                   help="run directory (repeatable)")
    c.add_argument("--out-dir", required=True)
    c.set_defaults(fn=_cmd_compare)

    x = sub.add_parser("experiment", help="full preset pipeline")
    x.add_argument("name", choices=["torsional", "henon-heiles", "cubic-well"])
    x.add_argument("--scale", choices=["desk", "paper"], default="desk")
    x.add_argument("--out-dir", required=True)
    x.set_defaults(fn=_cmd_experiment)

    return p


def main(argv=None):
    args = _parser().parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, FloatingPointError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
