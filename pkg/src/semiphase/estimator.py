"""Trajectory-ensemble estimation of time-evolved quantum expectations.

An initial density (the second-order signed mixture, the plain Husimi
function, or the Gaussian Wigner function) is sampled, every point is
advanced along the classical flow, and observables are averaged with the
mixture's signed weights at the recorded times.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import sampling
from .dynamics import IntegratorConfig, propagate
from .states import Gaussian, TranslatedHermite, split_blocks

__all__ = [
    "Observable",
    "position",
    "momentum",
    "kinetic",
    "potential_energy",
    "total_energy",
    "escape_probability",
    "monomial",
    "observable_from_name",
    "evaluate_observable",
    "ExpectationSeries",
    "run_estimator",
    "time_averaged_error",
    "convergence_slope",
]

METHODS = ("spectrogram", "naive-husimi", "wigner")


@dataclass(frozen=True)
class Observable:
    """Phase space symbol a(q, p) evaluated pointwise on ensembles.

    ``kind`` is one of position/momentum/kinetic/potential/total/escape/
    monomial; ``depends`` records whether the symbol involves only q,
    only p, or both ("mixed") -- the grid solver accepts q-only, p-only,
    and total-energy symbols.
    """

    name: str
    kind: str
    depends: str
    fn: callable

    def __call__(self, points, pot=None):
        q, p = split_blocks(np.asarray(points, dtype=float))
        return self.fn(q, p, pot)


def position(i):
    return Observable(f"q{i + 1}", "position", "q", lambda q, p, pot: q[..., i])


def momentum(i):
    return Observable(f"p{i + 1}", "momentum", "p", lambda q, p, pot: p[..., i])


def kinetic():
    return Observable("kinetic", "kinetic", "p",
                      lambda q, p, pot: 0.5 * np.sum(p**2, axis=-1))


def potential_energy():
    return Observable("potential", "potential", "q",
                      lambda q, p, pot: pot.value(q))


def total_energy():
    return Observable("total_energy", "total", "qp",
                      lambda q, p, pot: 0.5 * np.sum(p**2, axis=-1) + pot.value(q))


def escape_probability(x_max, width=0.01):
    """Smooth cutoff supported left of the barrier top (d = 1 only).

    r(q, p) = exp(-width/(q - x_max)^2) for q < x_max, 0 otherwise; the
    vanishing limit extends continuously to q = x_max.
    """

    def fn(q, p, pot):
        x = q[..., 0]
        out = np.zeros_like(x)
        left = x < x_max
        out[left] = np.exp(-width / (x[left] - x_max) ** 2)
        return out

    return Observable("escape", "escape", "q", fn)


def monomial(q_exponents, p_exponents):
    """Monomial prod q_i^{a_i} prod p_i^{b_i}."""
    qa = tuple(int(a) for a in q_exponents)
    pb = tuple(int(b) for b in p_exponents)

    def fn(q, p, pot):
        out = np.ones(q.shape[:-1])
        for i, a in enumerate(qa):
            if a:
                out = out * q[..., i] ** a
        for i, b in enumerate(pb):
            if b:
                out = out * p[..., i] ** b
        return out

    if all(b == 0 for b in pb):
        depends = "q"
    elif all(a == 0 for a in qa):
        depends = "p"
    else:
        depends = "mixed"
    name = "*".join(
        [f"q{i + 1}^{a}" for i, a in enumerate(qa) if a]
        + [f"p{i + 1}^{b}" for i, b in enumerate(pb) if b]
    ) or "1"
    return Observable(name, "monomial", depends, fn)


def observable_from_name(name, dim, pot=None):
    """Resolve an observable from its config-file name."""
    if name == "kinetic":
        return kinetic()
    if name == "potential":
        return potential_energy()
    if name == "total_energy":
        return total_energy()
    if name == "escape":
        if pot is None or pot.params is None or "x_max" not in pot.params:
            raise ValueError("escape observable needs a barrier potential")
        if dim != 1:
            raise ValueError("escape observable is d = 1 only")
        return escape_probability(pot.params["x_max"])
    if name and name[0] in "qp":
        try:
            i = int(name[1:]) - 1
        except ValueError:
            raise ValueError(f"unknown observable {name!r}") from None
        if not 0 <= i < dim:
            raise ValueError(f"observable {name!r} out of range for d={dim}")
        return position(i) if name[0] == "q" else momentum(i)
    raise ValueError(f"unknown observable {name!r}")


def evaluate_observable(obs, points, pot=None):
    """Pointwise symbol values on an ensemble (N, 2d)."""
    return obs(points, pot)


@dataclass(frozen=True)
class ExpectationSeries:
    """Per-observable expectation time series with method/sampling metadata."""

    times: np.ndarray
    values: dict  # observable name -> array over times
    method: str
    meta: dict

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        if t.size > 1 and not np.all(np.diff(t) > 0):
            raise ValueError("times must be strictly increasing")
        for name, v in self.values.items():
            if not np.all(np.isfinite(v)):
                raise ValueError(f"non-finite values in series {name!r}")
        object.__setattr__(self, "times", t)


def _initial_ensembles(state, method, sampler_cfg, gaussian_negative):
    """(weights, list of ensembles) for the requested estimator method."""
    if method == "spectrogram":
        mixture = sampling.signed_mixture_decomposition(
            state, gaussian_negative=gaussian_negative
        )
        weights, ensembles = [], []
        for idx, (w, comp) in enumerate(mixture.components):
            weights.append(w)
            ensembles.append(sampling.sample_component(comp, sampler_cfg, idx))
        return np.array(weights), ensembles
    if method == "naive-husimi":
        if isinstance(state, Gaussian):
            comp = sampling.ProductDensity(state.center, (0,) * state.dim, state.eps)
        elif isinstance(state, TranslatedHermite):
            comp = sampling.ProductDensity(state.center, state.k, state.eps)
        else:
            raise ValueError("naive-husimi sampling supports Gaussian and Hermite states")
        return np.array([1.0]), [sampling.sample_component(comp, sampler_cfg, 0)]
    if method == "wigner":
        if not isinstance(state, Gaussian):
            raise ValueError("the Wigner baseline requires a Gaussian initial state")
        # The Wigner function of a Gaussian is i.i.d. normal with variance
        # eps/2 per coordinate; drawing it per block as (uniform angle,
        # exponential squared radius) is the same law and consumes the same
        # uniform layout as the Husimi ensembles, so quasi-Monte Carlo noise
        # is shared across methods instead of independent.
        comp = sampling.ProductDensity(state.center, (0,) * state.dim,
                                       0.5 * state.eps)
        return np.array([1.0]), [sampling.sample_component(comp, sampler_cfg, 0)]
    raise ValueError(f"unknown estimator method {method!r}")


def run_estimator(state, method, observables, sampler_cfg, integrator_cfg, pot,
                  gaussian_negative="factorized"):
    """Sample, propagate classically, and return the expectation series.

    The estimate at each recorded time is sum_c w_c * mean_c a(Phi_t(.)).
    """
    if pot.dim != state.dim:
        raise ValueError("state and potential dimensions differ")
    weights, ensembles = _initial_ensembles(state, method, sampler_cfg, gaussian_negative)
    sizes = [len(e) for e in ensembles]
    points = np.concatenate(ensembles, axis=0)
    bounds = np.concatenate([[0], np.cumsum(sizes)])

    times = []
    acc = {obs.name: [] for obs in observables}

    def record(t, pts):
        times.append(t)
        for obs in observables:
            vals = evaluate_observable(obs, pts, pot)
            est = 0.0
            for c, w in enumerate(weights):
                est += w * float(np.mean(vals[bounds[c]:bounds[c + 1]]))
            acc[obs.name].append(est)

    propagate(points, integrator_cfg, pot, on_record=record)
    meta = {
        "method": method,
        "N": sampler_cfg.count,
        "mode": sampler_cfg.mode,
        "seed": sampler_cfg.seed,
        "dt": integrator_cfg.dt,
        "scheme": integrator_cfg.scheme,
        "weights": weights.tolist(),
    }
    values = {name: np.array(v) for name, v in acc.items()}
    return ExpectationSeries(np.array(times), values, method, meta)


def estimator_standard_errors(state, method, observables, sampler_cfg, integrator_cfg,
                              pot, gaussian_negative="factorized"):
    """Like run_estimator but also returns the per-time standard error of the
    signed-mixture mean: SE^2 = sum_c w_c^2 Var_c / N_c."""
    weights, ensembles = _initial_ensembles(state, method, sampler_cfg, gaussian_negative)
    sizes = [len(e) for e in ensembles]
    points = np.concatenate(ensembles, axis=0)
    bounds = np.concatenate([[0], np.cumsum(sizes)])

    times = []
    acc = {obs.name: [] for obs in observables}
    errs = {obs.name: [] for obs in observables}

    def record(t, pts):
        times.append(t)
        for obs in observables:
            vals = evaluate_observable(obs, pts, pot)
            est, var = 0.0, 0.0
            for c, w in enumerate(weights):
                chunk = vals[bounds[c]:bounds[c + 1]]
                est += w * float(np.mean(chunk))
                var += w**2 * float(np.var(chunk, ddof=1)) / chunk.size
            acc[obs.name].append(est)
            errs[obs.name].append(np.sqrt(var))

    propagate(points, integrator_cfg, pot, on_record=record)
    series = ExpectationSeries(
        np.array(times), {k: np.array(v) for k, v in acc.items()}, method,
        {"method": method, "N": sampler_cfg.count, "mode": sampler_cfg.mode,
         "seed": sampler_cfg.seed, "dt": integrator_cfg.dt},
    )
    return series, {k: np.array(v) for k, v in errs.items()}


def time_averaged_error(series, reference):
    """Trapezoid time average of |series - reference| per shared observable.

    The reference is linearly interpolated onto the series' time grid when
    the grids differ; the grids must overlap.
    """
    t = series.times
    t_ref = reference.times
    if t[0] < t_ref[0] - 1e-12 or t[-1] > t_ref[-1] + 1e-12:
        if t[-1] < t_ref[0] or t[0] > t_ref[-1]:
            raise ValueError("time ranges do not overlap")
        keep = (t >= t_ref[0] - 1e-12) & (t <= t_ref[-1] + 1e-12)
        t = t[keep]
    else:
        keep = slice(None)
    out = {}
    span = t[-1] - t[0]
    for name, vals in series.values.items():
        if name not in reference.values:
            continue
        ref = np.interp(t, t_ref, reference.values[name])
        diff = np.abs(np.asarray(vals)[keep] - ref)
        out[name] = float(np.trapezoid(diff, t) / span)
    return out


def convergence_slope(pairs):
    """Least-squares slope of log(error) against log(eps)."""
    pairs = [(float(e), float(err)) for e, err in pairs]
    if len(pairs) < 3:
        raise ValueError("need at least 3 (eps, error) points")
    if any(e <= 0 or err <= 0 for e, err in pairs):
        raise ValueError("eps and error values must be positive")
    x = np.log([e for e, _ in pairs])
    y = np.log([err for _, err in pairs])
    return float(np.polyfit(x, y, 1)[0])
