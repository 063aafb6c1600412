"""Figure jobs over the estimator pipeline's CSV artifacts.

Every job reads one or more documented CSV files and renders them verbatim:
no smoothing, no rescaling beyond axis transforms.  Jobs return True when an
image was written and False for a no-op on empty input.
"""

from __future__ import annotations

import csv
import os
import warnings

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = [
    "MissingColumnError",
    "diverging_levels",
    "density_panels",
    "density_profile",
    "convergence",
    "energy_cross_check",
    "escape",
    "phase_plane",
]


class MissingColumnError(ValueError):
    """An input CSV lacks a column the figure job needs."""


def _read_table(path, required):
    """CSV contents as (header list, float array of shape (rows, cols))."""
    with open(path) as fh:
        header = fh.readline().strip().split(",")
        missing = [name for name in required if name not in header]
        if missing:
            raise MissingColumnError(
                f"{path}: missing columns: {', '.join(missing)}")
        rows = [line for line in fh if line.strip()]
    if not rows:
        return header, np.empty((0, len(header)))
    data = np.loadtxt(rows, delimiter=",", ndmin=2)
    return header, data


def _column(header, data, name):
    return data[:, header.index(name)]


def _warn_empty(path):
    warnings.warn(f"{path}: no data rows, nothing to render", stacklevel=3)
    return False


def diverging_levels(values, count=21):
    """Contour levels symmetric about zero spanning the value range."""
    vmax = float(np.max(np.abs(values)))
    if vmax == 0.0:
        vmax = 1.0
    return np.linspace(-vmax, vmax, count)


def _series_label(path):
    """Human label from an artifact filename, e.g. the method name."""
    stem = os.path.splitext(os.path.basename(path))[0]
    if stem.startswith("estimate-"):
        stem = stem[len("estimate-"):]
        if "-seed" in stem:
            stem = stem[:stem.rindex("-seed")]
    return stem


def density_panels(inputs, out):
    """Three contour panels (wigner, husimi, mu) from one density-grid CSV,
    each on a diverging colormap centered at zero."""
    (path,) = inputs
    header, data = _read_table(path, ("q", "p", "wigner", "husimi", "mu"))
    if data.shape[0] == 0:
        return _warn_empty(path)
    qs = np.unique(_column(header, data, "q"))
    ps = np.unique(_column(header, data, "p"))
    shape = (qs.size, ps.size)

    fig, axes = plt.subplots(1, 3, figsize=(12, 4), sharey=True)
    for ax, name in zip(axes, ("wigner", "husimi", "mu")):
        grid = _column(header, data, name).reshape(shape)
        cs = ax.contourf(qs, ps, grid.T, levels=diverging_levels(grid),
                         cmap="RdBu_r")
        ax.set_title(name)
        ax.set_xlabel("q")
        fig.colorbar(cs, ax=ax)
    axes[0].set_ylabel("p")
    fig.tight_layout()
    fig.savefig(out)
    plt.close(fig)
    return True


def density_profile(inputs, out):
    """One-dimensional cut of the three densities along q, taken through the
    grid row where the Husimi function is largest."""
    (path,) = inputs
    header, data = _read_table(path, ("q", "p", "wigner", "husimi", "mu"))
    if data.shape[0] == 0:
        return _warn_empty(path)
    qs = np.unique(_column(header, data, "q"))
    ps = np.unique(_column(header, data, "p"))
    shape = (qs.size, ps.size)
    husimi = _column(header, data, "husimi").reshape(shape)
    j = int(np.unravel_index(np.argmax(husimi), shape)[1])

    fig, ax = plt.subplots(figsize=(5, 4))
    for name in ("wigner", "husimi", "mu"):
        grid = _column(header, data, name).reshape(shape)
        ax.plot(qs, grid[:, j], label=name)
    ax.axhline(0.0, color="gray", linewidth=0.8)
    ax.set_xlabel("q")
    ax.set_ylabel(f"density at p = {ps[j]:g}")
    ax.legend()
    fig.tight_layout()
    fig.savefig(out)
    plt.close(fig)
    return True


def convergence(inputs, out):
    """Log-log plot of time-averaged error against epsilon per method, with
    first- and second-order slope guides."""
    (path,) = inputs
    with open(path) as fh:
        reader = csv.DictReader(fh)
        required = ("observable", "epsilon", "method", "error")
        missing = [n for n in required if n not in (reader.fieldnames or ())]
        if missing:
            raise MissingColumnError(
                f"{path}: missing columns: {', '.join(missing)}")
        rows = list(reader)
    if not rows:
        return _warn_empty(path)

    by_method = {}
    for row in rows:
        key = (row["method"], float(row["epsilon"]))
        by_method.setdefault(key, []).append(float(row["error"]))

    fig, ax = plt.subplots(figsize=(5, 4))
    eps_all = sorted({eps for _, eps in by_method})
    for method in sorted({m for m, _ in by_method}):
        eps = [e for e in eps_all if (method, e) in by_method]
        err = [np.mean(by_method[(method, e)]) for e in eps]
        ax.loglog(eps, err, "o-", label=method)
        anchor = err[eps.index(max(eps))]
        for order, style in ((1, ":"), (2, "--")):
            guide = [anchor * (e / max(eps)) ** order for e in eps]
            ax.loglog(eps, guide, style, color="gray", linewidth=0.8)
    ax.set_xlabel("epsilon")
    ax.set_ylabel("time-averaged error")
    ax.legend()
    fig.tight_layout()
    fig.savefig(out)
    plt.close(fig)
    return True


def _series_plot(inputs, out, column, ylabel):
    fig, ax = plt.subplots(figsize=(5, 4))
    plotted = False
    for path in inputs:
        header, data = _read_table(path, ("t", column))
        if data.shape[0] == 0:
            _warn_empty(path)
            continue
        ax.plot(_column(header, data, "t"), _column(header, data, column),
                label=_series_label(path))
        plotted = True
    if not plotted:
        plt.close(fig)
        return False
    ax.set_xlabel("t")
    ax.set_ylabel(ylabel)
    ax.legend()
    fig.tight_layout()
    fig.savefig(out)
    plt.close(fig)
    return True


def energy_cross_check(inputs, out):
    """Potential-energy expectation over time, one curve per input series."""
    return _series_plot(inputs, out, "potential", "potential energy")


def escape(inputs, out):
    """Escape probability over time, one curve per input series."""
    return _series_plot(inputs, out, "escape", "escape probability")


def phase_plane(inputs, out):
    """Mean-trajectory phase portrait: p1 against q1 per input series."""
    fig, ax = plt.subplots(figsize=(5, 4))
    plotted = False
    for path in inputs:
        header, data = _read_table(path, ("q1", "p1"))
        if data.shape[0] == 0:
            _warn_empty(path)
            continue
        ax.plot(_column(header, data, "q1"), _column(header, data, "p1"),
                label=_series_label(path))
        plotted = True
    if not plotted:
        plt.close(fig)
        return False
    ax.set_xlabel("q1")
    ax.set_ylabel("p1")
    ax.legend()
    fig.tight_layout()
    fig.savefig(out)
    plt.close(fig)
    return True
