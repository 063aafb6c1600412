"""Classical Hamiltonian flows for h(q, p) = |p|^2/2 + V(q).

Potentials provide analytic values and gradients; ensembles of phase
points are advanced with Strang (velocity-Verlet) splitting or a
fifteen-stage eighth-order symplectic composition of Strang steps.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .states import split_blocks

__all__ = [
    "Potential",
    "harmonic",
    "torsional",
    "henon_heiles",
    "cubic_well",
    "IntegratorConfig",
    "step_strang",
    "step_order8",
    "flow_ensemble",
    "propagate",
    "hamiltonian",
    "ORDER8_WEIGHTS",
]


@dataclass(frozen=True)
class Potential:
    """Smooth potential with analytic value and gradient.

    ``value`` maps (N, d) -> (N,);  ``gradient`` maps (N, d) -> (N, d).
    """

    name: str
    dim: int
    value: callable
    gradient: callable
    params: dict | None = None

    def __call__(self, q):
        return self.value(np.atleast_2d(q))


def harmonic(dim=1):
    """Isotropic harmonic well |q|^2/2; flow is a rigid rotation."""

    def v(q):
        return 0.5 * np.sum(q**2, axis=-1)

    def grad(q):
        return q

    return Potential("harmonic", dim, v, grad)


def torsional():
    """Two-dimensional torsional potential 2 - cos q1 - cos q2."""

    def v(q):
        return 2.0 - np.cos(q[..., 0]) - np.cos(q[..., 1])

    def grad(q):
        return np.sin(q)

    return Potential("torsional", 2, v, grad)


def henon_heiles(dim=32, coupling=1.8436, confinement=0.4):
    """Chain-coupled Henon-Heiles potential with quartic confinement.

    V = |q|^2/2 + coupling * sum_j (q_j^2 q_{j+1} - q_{j+1}^3/3)
              + confinement * sum_j (q_j^2 + q_{j+1}^2)^2
    over neighbor pairs j = 1..d-1.  The confinement keeps every
    trajectory bounded.
    """
    if dim < 2:
        raise ValueError("chain coupling needs dim >= 2")

    def v(q):
        a, b = q[..., :-1], q[..., 1:]
        cubic = np.sum(a**2 * b - b**3 / 3.0, axis=-1)
        quart = np.sum((a**2 + b**2) ** 2, axis=-1)
        return 0.5 * np.sum(q**2, axis=-1) + coupling * cubic + confinement * quart

    def grad(q):
        a, b = q[..., :-1], q[..., 1:]
        g = q.copy()
        q2 = q * q
        s = q2[..., :-1] + q2[..., 1:]
        t = a * b
        t *= 2.0 * coupling
        t += (4.0 * confinement) * (a * s)
        g[..., :-1] += t
        t = q2[..., :-1] - q2[..., 1:]
        t *= coupling
        t += (4.0 * confinement) * (b * s)
        g[..., 1:] += t
        return g

    return Potential(
        "henon-heiles", dim, v, grad,
        params={"coupling": coupling, "confinement": confinement},
    )


def cubic_well(quadratic=2.328, confinement=0.025):
    """One-dimensional barrier potential q^2-term + q^3 + small q^4 confinement."""

    def v(q):
        x = q[..., 0]
        return quadratic * x**2 + x**3 + confinement * x**4

    def grad(q):
        x = q[..., 0]
        return (2.0 * quadratic * x + 3.0 * x**2 + 4.0 * confinement * x**3)[..., None]

    # barrier top: the larger nonzero root of V'(x) = x(4c x^2 + 3x + 2a) = 0
    disc = np.sqrt(9.0 - 32.0 * confinement * quadratic)
    x_max = (-3.0 + disc) / (8.0 * confinement)
    pot = Potential("cubic-well", 1, v, grad,
                    params={"quadratic": quadratic, "confinement": confinement,
                            "x_max": x_max})
    return pot


def hamiltonian(points, pot):
    """Total energy |p|^2/2 + V(q) per phase point."""
    q, p = split_blocks(points)
    return 0.5 * np.sum(p**2, axis=-1) + pot.value(q)


# Yoshida's fifteen-stage eighth-order composition, solution D of the
# m = 7 family.  A Strang step of size w_i * dt is applied in the
# palindromic order w7 .. w1, w0, w1 .. w7 with w0 = 1 - 2 sum(w).
_W = (
    0.102799849391985e0,
    -0.196061023297549e1,
    0.193813913762276e1,
    -0.158240635368243e0,
    -0.144485223686048e1,
    0.253693336566229e0,
    0.914844246229740e0,
)
_W0 = 1.0 - 2.0 * sum(_W)
ORDER8_WEIGHTS = tuple(reversed(_W)) + (_W0,) + _W


def step_strang(points, dt, pot):
    """One kick-drift-kick Strang step over the ensemble (N, 2d), in place."""
    d = pot.dim
    q = points[:, :d]
    p = points[:, d:]
    p -= (0.5 * dt) * pot.gradient(q)
    q += dt * p
    p -= (0.5 * dt) * pot.gradient(q)
    return points


def step_order8(points, dt, pot):
    """One eighth-order step: palindromic composition of 15 Strang sub-steps.

    Adjacent half-kicks of consecutive sub-steps are merged, so one step
    costs 16 gradient evaluations.
    """
    d = pot.dim
    q = points[:, :d]
    p = points[:, d:]
    w = ORDER8_WEIGHTS
    p -= (0.5 * dt * w[0]) * pot.gradient(q)
    for i in range(len(w)):
        q += (dt * w[i]) * p
        kick = w[i] + w[i + 1] if i + 1 < len(w) else w[i]
        p -= (0.5 * dt * kick) * pot.gradient(q)
    return points


_STEPPERS = {"strang": step_strang, "order8": step_order8}


@dataclass(frozen=True)
class IntegratorConfig:
    scheme: str = "order8"
    dt: float = 0.1
    t_final: float = 20.0
    record_stride: int = 10

    def __post_init__(self):
        if self.scheme not in _STEPPERS:
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if not 0 < self.dt <= self.t_final:
            raise ValueError("need 0 < dt <= t_final")
        if self.record_stride < 1:
            raise ValueError("record_stride must be >= 1")
        n = self.t_final / self.dt
        if abs(n - round(n)) > 1e-9 * max(n, 1.0):
            raise ValueError("t_final must be an integer multiple of dt")

    @property
    def n_steps(self):
        return round(self.t_final / self.dt)

    @property
    def record_times(self):
        stride = self.record_stride
        idx = np.arange(0, self.n_steps + 1, stride)
        if idx[-1] != self.n_steps:
            idx = np.append(idx, self.n_steps)
        return idx * self.dt


def propagate(points, cfg, pot, on_record=None):
    """Advance an ensemble in place, invoking ``on_record(t, points)``
    at t = 0 and every ``record_stride`` steps (plus the final time).

    Raises if any trajectory leaves the finite range; the offending point
    indices are reported.
    """
    points = np.asarray(points, dtype=float)
    if points.ndim != 2 or points.shape[1] != 2 * pot.dim:
        raise ValueError("ensemble must have shape (N, 2d) matching the potential")
    if on_record is not None:
        on_record(0.0, points)
    n = cfg.n_steps

    def checkpoint(i):
        bad = np.flatnonzero(~np.all(np.isfinite(points), axis=1))
        if bad.size:
            raise FloatingPointError(
                f"non-finite trajectories at t={i * cfg.dt:g}: indices {bad[:10].tolist()}"
            )
        if on_record is not None:
            on_record(i * cfg.dt, points)

    # blow-ups surface as non-finite values at the next checkpoint instead
    # of as floating-point warnings mid-step
    with np.errstate(over="ignore", invalid="ignore"):
        if cfg.scheme == "strang":
            # merge adjacent half-kicks between checkpoints: a segment of m
            # kick-drift-kick steps costs m+1 gradient evaluations
            d, dt = pot.dim, cfg.dt
            q, p = points[:, :d], points[:, d:]
            i = 0
            while i < n:
                m = min(cfg.record_stride - i % cfg.record_stride, n - i)
                p -= (0.5 * dt) * pot.gradient(q)
                for _ in range(m - 1):
                    q += dt * p
                    p -= dt * pot.gradient(q)
                q += dt * p
                p -= (0.5 * dt) * pot.gradient(q)
                i += m
                checkpoint(i)
            return points

        step = _STEPPERS[cfg.scheme]
        for i in range(1, n + 1):
            step(points, cfg.dt, pot)
            if i % cfg.record_stride == 0 or i == n:
                checkpoint(i)
    return points


def flow_ensemble(points, cfg, pot):
    """Propagate and collect snapshots; returns (times, snapshots).

    ``snapshots`` has shape (n_times, N, 2d).  Intended for small
    ensembles; large runs should reduce observables on the fly via
    ``propagate``.
    """
    points = np.array(points, dtype=float, copy=True)
    times, snaps = [], []

    def record(t, pts):
        times.append(t)
        snaps.append(pts.copy())

    propagate(points, cfg, pot, on_record=record)
    return np.array(times), np.array(snaps)
