import numpy as np
import pytest


def phase_grid(center, eps, half, n, dim):
    """Tensor grid over a box of the given half-width around a phase-space
    center; returns (points (n^(2dim), 2dim), cell volume)."""
    axes = [np.linspace(c - half, c + half, n) for c in center]
    mesh = np.meshgrid(*axes, indexing="ij")
    pts = np.stack([m.ravel() for m in mesh], axis=-1)
    dx = 2.0 * half / (n - 1)
    return pts, dx ** (2 * dim)


def quad(fn, center, eps, half, n, dim):
    """Tensor-trapezoid quadrature of fn over the phase-space box.

    Trapezoid weights equal interior-cell volume except at the box faces;
    with Gaussian-tail integrands below 1e-12 at the boundary the plain
    Riemann sum is indistinguishable, so that is what we use.
    """
    pts, vol = phase_grid(center, eps, half, n, dim)
    return float(np.sum(fn(pts)) * vol)


def gaussian_moment_1d(mu, var, k):
    """E[X^k] for X ~ N(mu, var), by the binomial/central-moment expansion."""
    from math import comb
    total = 0.0
    for j in range(0, k + 1, 2):
        central = var ** (j // 2) * np.prod(np.arange(1, j, 2), dtype=float)
        total += comb(k, j) * central * mu ** (k - j)
    return float(total)


def wigner_gaussian_moment(center, eps, q_exp, p_exp):
    """Analytic monomial moment of the Gaussian state's Wigner measure,
    i.e. of N(center, (eps/2) I) on phase space."""
    d = len(q_exp)
    m = 1.0
    for i in range(d):
        m *= gaussian_moment_1d(center[i], eps / 2.0, q_exp[i])
        m *= gaussian_moment_1d(center[d + i], eps / 2.0, p_exp[i])
    return m


@pytest.fixture
def rng():
    return np.random.default_rng(20260826)
