"""Closed-form phase space densities for the analytic state families.

All evaluators accept evaluation points ``w`` of shape ``(..., 2d)`` and
return arrays of shape ``(...)``.  The supported states are coherent
Gaussians, translated multivariate Hermite functions, and unit-coefficient
superpositions of two Gaussians.
"""

from __future__ import annotations

import numpy as np
from scipy.special import eval_laguerre, gammaln

from .states import Gaussian, GaussianSuperposition, TranslatedHermite, split_blocks

__all__ = [
    "symplectic_form",
    "gaussian_inner_product",
    "eval_wigner_gaussian",
    "eval_wigner",
    "eval_husimi",
    "eval_hermite_spectrogram",
    "eval_hermite_spectrogram_sum",
    "eval_mu",
    "eval_mu_ladder_oracle",
    "fbi_hermite",
    "hermite_husimi_factor",
    "density_grid",
]


def symplectic_form(z1, z2):
    """Standard symplectic form q1.p2 - p1.q2, batched over leading axes."""
    q1, p1 = split_blocks(z1)
    q2, p2 = split_blocks(z2)
    if q1.shape[-1] != q2.shape[-1]:
        raise ValueError("dimension mismatch between phase space points")
    return np.sum(q1 * p2 - p1 * q2, axis=-1)


def gaussian_inner_product(z1, z2, eps):
    """L2 inner product <g_{z1}, g_{z2}> of two coherent Gaussians.

    Equals exp(-|z1-z2|^2/(4 eps)) times the symplectic phase
    exp(i Omega(z1, z2)/(2 eps)).
    """
    z1 = np.asarray(z1, dtype=float)
    z2 = np.asarray(z2, dtype=float)
    if z1.shape[-1] != z2.shape[-1]:
        raise ValueError("dimension mismatch between phase space points")
    dist2 = np.sum((z1 - z2) ** 2, axis=-1)
    return np.exp(-dist2 / (4.0 * eps) + 0.5j * symplectic_form(z1, z2) / eps)


def eval_wigner_gaussian(w, center, eps):
    """Wigner function of a coherent Gaussian: a strictly positive Gaussian."""
    w = np.asarray(w, dtype=float)
    center = np.asarray(center, dtype=float)
    if w.shape[-1] != center.shape[-1]:
        raise ValueError("dimension mismatch")
    d = center.size // 2
    r2 = np.sum((w - center) ** 2, axis=-1)
    return (np.pi * eps) ** (-d) * np.exp(-r2 / eps)


def hermite_husimi_factor(n, block_disp2, eps):
    """Husimi factor h_n of a univariate Hermite function for one 2-D block.

    ``block_disp2`` is the squared block displacement |w_j - z_j|^2.  The
    factor is evaluated in log-space so that large orders and small eps do
    not overflow the n-th power or the factorial.
    """
    rho = np.asarray(block_disp2, dtype=float) / (2.0 * eps)
    if n == 0:
        log_pow = np.zeros_like(rho)
    else:
        with np.errstate(divide="ignore"):
            log_pow = n * np.log(rho)
    return np.exp(log_pow - rho - gammaln(n + 1)) / (2.0 * np.pi * eps)


def _block_disp2(w, center):
    """Per-block squared displacements, shape (..., d)."""
    dq, dp = split_blocks(np.asarray(w, dtype=float) - center)
    return dq**2 + dp**2


def eval_husimi(state, w):
    """Husimi function of the state at points ``w``; nonnegative."""
    w = np.asarray(w, dtype=float)
    eps = state.eps
    d = state.dim
    if w.shape[-1] != 2 * d:
        raise ValueError("dimension mismatch")
    if isinstance(state, Gaussian):
        r2 = np.sum((w - state.center) ** 2, axis=-1)
        return (2.0 * np.pi * eps) ** (-d) * np.exp(-r2 / (2.0 * eps))
    if isinstance(state, TranslatedHermite):
        b2 = _block_disp2(w, state.center)
        out = np.ones(w.shape[:-1])
        for j, n in enumerate(state.k):
            out = out * hermite_husimi_factor(n, b2[..., j], eps)
        return out
    if isinstance(state, GaussianSuperposition):
        z1, z2 = state.centers
        r1 = np.sum((w - z1) ** 2, axis=-1)
        r2 = np.sum((w - z2) ** 2, axis=-1)
        phase = 0.5 * symplectic_form(z1 - z2, w) / eps
        cross = 2.0 * np.exp(-(r1 + r2) / (4.0 * eps)) * np.cos(phase)
        return (2.0 * np.pi * eps) ** (-d) * (
            np.exp(-r1 / (2.0 * eps)) + np.exp(-r2 / (2.0 * eps)) + cross
        )
    raise TypeError(f"unsupported state type {type(state).__name__}")


def _hermite_bracket(n, block_disp2, eps):
    """Nonnegative combination n h_{n-1} - 2n h_n + (n+1) h_{n+1} for one block.

    Uses the factored form (n - rho)^2 rho^{n-1} e^{-rho} / (2 pi eps n!),
    which is nonnegative by construction.
    """
    if n == 0:
        # 0*h_{-1} - 0 + 1*h_1 collapses to the first-order factor
        return hermite_husimi_factor(1, block_disp2, eps)
    rho = np.asarray(block_disp2, dtype=float) / (2.0 * eps)
    if n == 1:
        log_pow = np.zeros_like(rho)
    else:
        with np.errstate(divide="ignore"):
            log_pow = (n - 1) * np.log(rho)
    return (n - rho) ** 2 * np.exp(log_pow - rho - gammaln(n + 1)) / (2.0 * np.pi * eps)


def eval_hermite_spectrogram(state, j, w):
    """Spectrogram of the state against the j-th first-order Hermite window.

    ``j`` is the zero-based block index.  The result is nonnegative for all
    supported states.
    """
    w = np.asarray(w, dtype=float)
    eps = state.eps
    d = state.dim
    if not 0 <= j < d:
        raise ValueError(f"block index {j} out of range for dimension {d}")
    if w.shape[-1] != 2 * d:
        raise ValueError("dimension mismatch")
    if isinstance(state, Gaussian):
        b2 = _block_disp2(w, state.center)
        r2 = np.sum(b2, axis=-1)
        pref = b2[..., j] / (2.0 * eps)
        return (2.0 * np.pi * eps) ** (-d) * pref * np.exp(-r2 / (2.0 * eps))
    if isinstance(state, TranslatedHermite):
        b2 = _block_disp2(w, state.center)
        out = _hermite_bracket(state.k[j], b2[..., j], eps)
        for n in range(d):
            if n != j:
                out = out * hermite_husimi_factor(state.k[n], b2[..., n], eps)
        return out
    if isinstance(state, GaussianSuperposition):
        return _superposition_spectrogram(state, j, w)
    raise TypeError(f"unsupported state type {type(state).__name__}")


def _superposition_spectrogram(state, j, w):
    """Per-block Hermite spectrogram of a two-Gaussian superposition.

    Real-arithmetic expansion of the squared modulus: two translated
    one-Gaussian spectrograms plus an interference term combining the block
    dot product and block symplectic form with the oscillatory phase.
    """
    eps = state.eps
    d = state.dim
    z1, z2 = state.centers
    u1 = w - z1
    u2 = w - z2
    r1 = np.sum(u1**2, axis=-1)
    r2 = np.sum(u2**2, axis=-1)
    q1j, p1j = u1[..., j], u1[..., d + j]
    q2j, p2j = u2[..., j], u2[..., d + j]
    b1 = q1j**2 + p1j**2
    b2 = q2j**2 + p2j**2
    dot_j = q1j * q2j + p1j * p2j
    om_j = q1j * p2j - p1j * q2j
    theta = 0.5 * symplectic_form(z1 - z2, w) / eps
    direct = (b1 * np.exp(-r1 / (2.0 * eps)) + b2 * np.exp(-r2 / (2.0 * eps))) / (2.0 * eps)
    cross = (
        np.exp(-(r1 + r2) / (4.0 * eps))
        * (dot_j * np.cos(theta) - om_j * np.sin(theta))
        / eps
    )
    return (2.0 * np.pi * eps) ** (-d) * (direct + cross)


def eval_hermite_spectrogram_sum(state, w):
    """Sum of the d block spectrograms."""
    w = np.asarray(w, dtype=float)
    out = np.zeros(w.shape[:-1])
    for j in range(state.dim):
        out = out + eval_hermite_spectrogram(state, j, w)
    return out


def eval_mu(state, w):
    """Second-order phase space density: reweighted Husimi minus spectrograms.

    Equals (1 + d/2) * Husimi - (1/2) * sum_j spectrogram_j; may be negative.
    """
    d = state.dim
    return (1.0 + 0.5 * d) * eval_husimi(state, w) - 0.5 * eval_hermite_spectrogram_sum(state, w)


def _coherent_overlaps(state, w):
    """<g_w, psi> for states that are sums of coherent Gaussians."""
    if isinstance(state, Gaussian):
        return gaussian_inner_product(w, state.center, state.eps)
    z1, z2 = state.centers
    return gaussian_inner_product(w, z1, state.eps) + gaussian_inner_product(w, z2, state.eps)


def _hermite_fbi_overlap(v, k, eps):
    """<g_v, phi_k> for the Hermite function at the origin, complex-valued."""
    v = np.asarray(v, dtype=float)
    d = v.shape[-1] // 2
    q, p = split_blocks(v)
    zc = (q - 1j * p) / np.sqrt(2.0 * eps)
    out = np.exp(-np.sum(v**2, axis=-1) / (4.0 * eps)).astype(complex)
    for j, n in enumerate(k):
        if n > 0:
            out = out * zc[..., j] ** n / np.sqrt(np.exp(gammaln(n + 1)))
    return out


def eval_mu_ladder_oracle(state, w):
    """Independent evaluation of the second-order density via ladder overlaps.

    Expresses the density through |<g_w, psi>|^2 and the raising-operator
    overlaps |<T_w A_j^+ g_0, psi>|^2, built from the explicit Gaussian and
    Hermite inner products.  Cross-checks the closed forms of ``eval_mu``.
    """
    w = np.asarray(w, dtype=float)
    eps = state.eps
    d = state.dim
    s2e = np.sqrt(2.0 * eps)
    wq, wp = split_blocks(w)
    wc = (wq + 1j * wp) / s2e

    if isinstance(state, (Gaussian, GaussianSuperposition)):
        centers = [state.center] if isinstance(state, Gaussian) else list(state.centers)
        base = np.zeros(w.shape[:-1], dtype=complex)
        ladders = [np.zeros(w.shape[:-1], dtype=complex) for _ in range(d)]
        for zm in centers:
            ov = gaussian_inner_product(w, zm, eps)
            base = base + ov
            zq, zp = split_blocks(zm)
            zc = (zq + 1j * zp) / s2e
            for j in range(d):
                ladders[j] = ladders[j] + (zc[..., j] - wc[..., j]) * ov
    elif isinstance(state, TranslatedHermite):
        zc_center = state.center
        k = state.k
        v = w - zc_center
        phase = np.exp(0.5j * symplectic_form(w, zc_center) / eps)
        fk = _hermite_fbi_overlap(v, k, eps)
        base = phase * fk
        zq, zp = split_blocks(zc_center)
        zcc = (zq + 1j * zp) / s2e
        ladders = []
        for j in range(d):
            term = (zcc[..., j] - wc[..., j]) * fk
            if k[j] > 0:
                k_lower = tuple(n - 1 if i == j else n for i, n in enumerate(k))
                term = term + np.sqrt(k[j]) * _hermite_fbi_overlap(v, k_lower, eps)
            ladders.append(phase * term)
    else:
        raise TypeError(f"unsupported state type {type(state).__name__}")

    total = (1.0 + 0.5 * d) * np.abs(base) ** 2
    for j in range(d):
        total = total - 0.5 * np.abs(ladders[j]) ** 2
    return (2.0 * np.pi * eps) ** (-d) * total


def fbi_hermite(z, k, eps):
    """FBI transform of the Hermite function with multi-index ``k`` at ``z``."""
    z = np.asarray(z, dtype=float)
    d = z.shape[-1] // 2
    k = tuple(int(n) for n in np.atleast_1d(k))
    if len(k) != d:
        raise ValueError("multi-index length must match dimension")
    return (2.0 * np.pi * eps) ** (-d / 2.0) * _hermite_fbi_overlap(z, k, eps)


def eval_wigner(state, w):
    """Wigner function of the state, from the closed forms per family."""
    w = np.asarray(w, dtype=float)
    eps = state.eps
    d = state.dim
    if isinstance(state, Gaussian):
        return eval_wigner_gaussian(w, state.center, eps)
    if isinstance(state, GaussianSuperposition):
        z1, z2 = state.centers
        mid = 0.5 * (z1 + z2)
        r2 = np.sum((w - mid) ** 2, axis=-1)
        phase = (symplectic_form(z1 - z2, w) - 0.5 * symplectic_form(z1, z2)) / eps
        cross = 2.0 * (np.pi * eps) ** (-d) * np.exp(-r2 / eps) * np.cos(phase)
        return (
            eval_wigner_gaussian(w, z1, eps)
            + eval_wigner_gaussian(w, z2, eps)
            + cross
        )
    if isinstance(state, TranslatedHermite):
        # per-block Laguerre form of the Hermite Wigner function
        b2 = _block_disp2(w, state.center)
        out = (np.pi * eps) ** (-d) * np.exp(-np.sum(b2, axis=-1) / eps)
        for j, n in enumerate(state.k):
            out = out * (-1.0) ** n * eval_laguerre(n, 2.0 * b2[..., j] / eps)
        return out
    raise TypeError(f"unsupported state type {type(state).__name__}")


def density_grid(state, q_range, p_range, n_q, n_p, axis=0, fixed=None):
    """Evaluate Wigner/Husimi/mu on a rectangular phase space grid.

    For d = 1 the grid spans (q, p).  For d >= 2 the grid spans the
    (q_axis, p_axis) plane of one block while the remaining coordinates are
    frozen at ``fixed`` (defaults to the state's first center).

    Returns (q_nodes, p_nodes, points, columns) where ``columns`` is a dict
    with keys 'wigner', 'husimi', 'mu' of shape (n_q, n_p).
    """
    d = state.dim
    qs = np.linspace(q_range[0], q_range[1], n_q)
    ps = np.linspace(p_range[0], p_range[1], n_p)
    Q, P = np.meshgrid(qs, ps, indexing="ij")
    if fixed is None:
        fixed = state.center if hasattr(state, "center") else state.centers[0]
    pts = np.broadcast_to(np.asarray(fixed, dtype=float), Q.shape + (2 * d,)).copy()
    pts[..., axis] = Q
    pts[..., d + axis] = P
    cols = {
        "wigner": eval_wigner(state, pts),
        "husimi": eval_husimi(state, pts),
        "mu": eval_mu(state, pts),
    }
    return qs, ps, pts, cols
