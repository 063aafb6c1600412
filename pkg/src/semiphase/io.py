"""CSV and metadata emission.

All floats are serialized with 17 significant digits so that identical
configurations reproduce byte-identical artifacts.
"""

from __future__ import annotations

import json
import os

import numpy as np

__all__ = [
    "fmt",
    "write_series_csv",
    "read_series_csv",
    "write_density_grid_csv",
    "write_points_csv",
    "write_compare_csv",
    "write_slopes_csv",
    "write_metadata",
]


def fmt(x):
    return format(float(x), ".17g")


def _ensure_dir(path):
    parent = os.path.dirname(os.path.abspath(path))
    os.makedirs(parent, exist_ok=True)


def write_series_csv(path, series):
    """Expectation series CSV: header ``t,<observable names...>``."""
    _ensure_dir(path)
    names = list(series.values.keys())
    with open(path, "w") as fh:
        fh.write(",".join(["t"] + names) + "\n")
        for i, t in enumerate(series.times):
            row = [fmt(t)] + [fmt(series.values[n][i]) for n in names]
            fh.write(",".join(row) + "\n")
    return path


def read_series_csv(path):
    """Inverse of write_series_csv: returns (times, {name: values})."""
    with open(path) as fh:
        header = fh.readline().strip().split(",")
        data = np.loadtxt(fh, delimiter=",", ndmin=2)
    times = data[:, 0]
    values = {name: data[:, i + 1] for i, name in enumerate(header[1:])}
    return times, values


def write_density_grid_csv(path, qs, ps, cols):
    """Phase space grid CSV with header ``q,p,wigner,husimi,mu``."""
    _ensure_dir(path)
    with open(path, "w") as fh:
        fh.write("q,p,wigner,husimi,mu\n")
        for i, qv in enumerate(qs):
            for j, pv in enumerate(ps):
                fh.write(",".join([
                    fmt(qv), fmt(pv),
                    fmt(cols["wigner"][i, j]),
                    fmt(cols["husimi"][i, j]),
                    fmt(cols["mu"][i, j]),
                ]) + "\n")
    return path


def write_points_csv(path, rows):
    """Sample dump: rows of (component index, weight, point array)."""
    _ensure_dir(path)
    with open(path, "w") as fh:
        first = rows[0][2]
        d = len(first) // 2
        header = (["component", "weight"]
                  + [f"q{i + 1}" for i in range(d)]
                  + [f"p{i + 1}" for i in range(d)])
        fh.write(",".join(header) + "\n")
        for comp, weight, pt in rows:
            fh.write(",".join([str(comp), fmt(weight)] + [fmt(x) for x in pt]) + "\n")
    return path


def write_compare_csv(path, rows):
    """Error table rows: (observable, epsilon, method, error)."""
    _ensure_dir(path)
    with open(path, "w") as fh:
        fh.write("observable,epsilon,method,error\n")
        for obs, eps, method, err in rows:
            fh.write(f"{obs},{fmt(eps)},{method},{fmt(err)}\n")
    return path


def write_slopes_csv(path, rows):
    """Slope summary rows: (observable, method, slope)."""
    _ensure_dir(path)
    with open(path, "w") as fh:
        fh.write("observable,method,slope\n")
        for obs, method, slope in rows:
            fh.write(f"{obs},{method},{fmt(slope)}\n")
    return path


def write_metadata(path, config_dict, extra=None):
    """JSON sidecar echoing the executed configuration."""
    _ensure_dir(path)
    payload = {"config": config_dict}
    if extra:
        payload["run"] = extra
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True, default=_jsonable)
        fh.write("\n")
    return path


def _jsonable(x):
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, (np.integer, np.floating)):
        return x.item()
    raise TypeError(f"not JSON-serializable: {type(x)!r}")
