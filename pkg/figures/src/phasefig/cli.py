"""Command-line entry point: render one figure from CSV artifacts.

Usage: ``phasefig render --figure <id> --in <csv> [--in <csv> ...] --out <path>``

Empty inputs are a warned no-op with exit status 0; missing columns and bad
data exit with status 1 and name the problem.
"""

from __future__ import annotations

import argparse
import sys

from . import render

__all__ = ["main"]

FIGURES = {
    "density-panels": render.density_panels,
    "density-profile": render.density_profile,
    "convergence": render.convergence,
    "energy-cross-check": render.energy_cross_check,
    "escape": render.escape,
    "phase-plane": render.phase_plane,
}


def _parser():
    p = argparse.ArgumentParser(prog="phasefig",
                                description="render figures from CSV artifacts")
    sub = p.add_subparsers(dest="command", required=True)
    r = sub.add_parser("render", help="render one figure")
    r.add_argument("--figure", required=True, choices=sorted(FIGURES))
    r.add_argument("--in", dest="inputs", action="append", required=True,
                   help="input CSV (repeatable)")
    r.add_argument("--out", required=True, help="output image path")
    return p


def main(argv=None):
    args = _parser().parse_args(argv)
    try:
        wrote = FIGURES[args.figure](args.inputs, args.out)
    except render.MissingColumnError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if wrote:
        print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
