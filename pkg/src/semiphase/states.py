"""Initial-state descriptions and phase space conventions.

Phase space points live in R^{2d} and are stored as flat arrays
``z = (q_1, ..., q_d, p_1, ..., p_d)``.  The j-th block is the pair
``z_j = (q_j, p_j)``.  Ensembles are arrays of shape ``(N, 2d)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "phase_point",
    "split_blocks",
    "Gaussian",
    "TranslatedHermite",
    "GaussianSuperposition",
]


def phase_point(q, p):
    """Pack position and momentum vectors into a single phase space point."""
    q = np.atleast_1d(np.asarray(q, dtype=float))
    p = np.atleast_1d(np.asarray(p, dtype=float))
    if q.shape != p.shape or q.ndim != 1:
        raise ValueError(f"q and p must be equal-length vectors, got {q.shape} and {p.shape}")
    return np.concatenate([q, p])


def split_blocks(z):
    """Split points ``(..., 2d)`` into position and momentum halves ``(..., d)``."""
    z = np.asarray(z, dtype=float)
    if z.shape[-1] % 2 != 0:
        raise ValueError("phase space points must have even length")
    d = z.shape[-1] // 2
    return z[..., :d], z[..., d:]


def _check_center(center):
    center = np.asarray(center, dtype=float)
    if center.ndim != 1 or center.size % 2 != 0 or center.size < 2:
        raise ValueError("center must be a flat (q, p) vector of even length >= 2")
    return center


@dataclass(frozen=True)
class Gaussian:
    """Coherent Gaussian wave packet centered at a phase space point."""

    center: np.ndarray
    eps: float

    def __post_init__(self):
        object.__setattr__(self, "center", _check_center(self.center))
        if not self.eps > 0:
            raise ValueError("eps must be positive")

    @property
    def dim(self):
        return self.center.size // 2

    @property
    def norm_squared(self):
        return 1.0


@dataclass(frozen=True)
class TranslatedHermite:
    """Multivariate Hermite function shifted to a phase space center.

    ``k`` is the multi-index of per-axis excitation orders; ``k = 0``
    coincides with the Gaussian at the same center.
    """

    center: np.ndarray
    k: tuple
    eps: float

    def __post_init__(self):
        object.__setattr__(self, "center", _check_center(self.center))
        k = tuple(int(n) for n in np.atleast_1d(self.k))
        object.__setattr__(self, "k", k)
        if len(k) != self.center.size // 2:
            raise ValueError("multi-index length must match dimension")
        if any(n < 0 for n in k):
            raise ValueError("multi-index entries must be nonnegative")
        if not self.eps > 0:
            raise ValueError("eps must be positive")

    @property
    def dim(self):
        return self.center.size // 2

    @property
    def norm_squared(self):
        return 1.0


@dataclass(frozen=True)
class GaussianSuperposition:
    """Unit-coefficient superposition of two Gaussian wave packets."""

    centers: tuple
    eps: float

    def __post_init__(self):
        c1, c2 = self.centers
        c1 = _check_center(c1)
        c2 = _check_center(c2)
        if c1.size != c2.size:
            raise ValueError("both centers must share the same dimension")
        object.__setattr__(self, "centers", (c1, c2))
        if not self.eps > 0:
            raise ValueError("eps must be positive")

    @property
    def dim(self):
        return self.centers[0].size // 2

    @property
    def norm_squared(self):
        # ||g1 + g2||^2 = 2 + 2 Re <g1, g2>
        from .densities import gaussian_inner_product

        ov = gaussian_inner_product(self.centers[0], self.centers[1], self.eps)
        return 2.0 + 2.0 * float(np.real(ov))
