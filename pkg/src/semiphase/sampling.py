"""Signed-mixture decomposition and Gamma-based samplers.

The second-order density of a Gaussian or translated Hermite state is a
signed combination of product densities whose 2-D blocks factor into a
uniform angle and a Gamma-distributed squared radius.  Monte Carlo draws
use counter-based Philox streams keyed by (seed, component); quasi-Monte
Carlo draws transform a Halton sequence through the inverse CDFs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .states import Gaussian, GaussianSuperposition, TranslatedHermite

__all__ = [
    "ProductDensity",
    "SphereRadialDensity",
    "SignedMixture",
    "SamplerConfig",
    "signed_mixture_decomposition",
    "sample_product_density",
    "sample_sphere_radial",
    "sample_component",
    "gamma_inverse_cdf",
    "halton_points",
    "normal_inverse_cdf",
]

# first 80 primes; Halton bases (coordinate i uses the i-th prime)
_PRIMES = (
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67,
    71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149,
    151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199, 211, 223, 227,
    229, 233, 239, 241, 251, 257, 263, 269, 271, 277, 281, 283, 293, 307,
    311, 313, 317, 331, 337, 347, 349, 353, 359, 367, 373, 379, 383, 389,
    397, 401, 409,
)


@dataclass(frozen=True)
class ProductDensity:
    """Product of per-block Hermite-Husimi probability densities.

    Block j is h_{m_j}(w_j - z_j): angle uniform on [0, 2 pi), squared
    radius Gamma(m_j + 1, 2 eps).
    """

    center: np.ndarray
    orders: tuple
    eps: float

    def __post_init__(self):
        object.__setattr__(self, "center", np.asarray(self.center, dtype=float))
        object.__setattr__(self, "orders", tuple(int(m) for m in self.orders))
        if len(self.orders) != self.center.size // 2:
            raise ValueError("orders length must match dimension")
        if any(m < 0 for m in self.orders):
            raise ValueError("orders must be nonnegative")

    @property
    def dim(self):
        return self.center.size // 2


@dataclass(frozen=True)
class SphereRadialDensity:
    """Isotropic density: uniform direction on S^{2d-1}, Gamma(d+1, 2 eps) radius^2.

    For a Gaussian state this equals in law the uniform-over-j mixture of
    the first-order product densities.
    """

    center: np.ndarray
    eps: float

    def __post_init__(self):
        object.__setattr__(self, "center", np.asarray(self.center, dtype=float))

    @property
    def dim(self):
        return self.center.size // 2


@dataclass(frozen=True)
class SignedMixture:
    """List of (weight, component density) pairs; weights sum to ||psi||^2."""

    components: tuple

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))

    @property
    def weights(self):
        return np.array([w for w, _ in self.components], dtype=float)


@dataclass(frozen=True)
class SamplerConfig:
    mode: str = "mc"  # "mc" | "halton"
    count: int = 10_000
    seed: int = 0
    halton_skip: int = 64

    def __post_init__(self):
        if self.mode not in ("mc", "halton"):
            raise ValueError(f"unknown sampler mode {self.mode!r}")
        if self.count < 1:
            raise ValueError("count must be >= 1")
        if self.halton_skip < 0:
            raise ValueError("halton_skip must be >= 0")


def signed_mixture_decomposition(state, gaussian_negative="factorized"):
    """Decompose the second-order density into Gamma-sampleable components.

    Weights are accumulated in exact halves (Fraction arithmetic) and sum
    to one.  For a Gaussian state the negative part is either the d
    first-order product densities (``"factorized"``) or the equivalent
    single sphere-radial density (``"sphere"``).  Superpositions are not
    signed mixtures of product densities and are rejected.
    """
    if isinstance(state, GaussianSuperposition):
        raise ValueError("superposition states cannot be decomposed into product densities")
    d = state.dim
    eps = state.eps
    comps = []
    if isinstance(state, Gaussian):
        comps.append((Fraction(2 + d, 2), ProductDensity(state.center, (0,) * d, eps)))
        if gaussian_negative == "sphere":
            comps.append((Fraction(-d, 2), SphereRadialDensity(state.center, eps)))
        elif gaussian_negative == "factorized":
            for j in range(d):
                orders = tuple(1 if i == j else 0 for i in range(d))
                comps.append((Fraction(-1, 2), ProductDensity(state.center, orders, eps)))
        else:
            raise ValueError(f"unknown negative-part form {gaussian_negative!r}")
    elif isinstance(state, TranslatedHermite):
        k = state.k
        comps.append((Fraction(2 + d, 2) + sum(k), ProductDensity(state.center, k, eps)))
        for j in range(d):
            if k[j] > 0:
                lower = tuple(n - 1 if i == j else n for i, n in enumerate(k))
                comps.append((Fraction(-k[j], 2), ProductDensity(state.center, lower, eps)))
            upper = tuple(n + 1 if i == j else n for i, n in enumerate(k))
            comps.append((Fraction(-(k[j] + 1), 2), ProductDensity(state.center, upper, eps)))
    else:
        raise TypeError(f"unsupported state type {type(state).__name__}")

    assert sum(w for w, _ in comps) == 1
    return SignedMixture(tuple((float(w), c) for w, c in comps))


def _component_rng(seed, component_index):
    # one Philox stream per (seed, component); draws are made in a fixed
    # vectorized order, so output is independent of scheduling
    return np.random.Generator(np.random.Philox(key=seed).jumped(component_index))


def gamma_inverse_cdf(shape, scale, u):
    """Quantile of the integer-shape Gamma(shape, scale) distribution.

    Inverts the closed-form CDF 1 - e^{-x} sum_{m<n} x^m/m! by bisection
    bracketing followed by Newton iterations to 1e-12 relative accuracy.
    """
    n = int(shape)
    if n < 1:
        raise ValueError("shape must be a positive integer")
    if scale <= 0:
        raise ValueError("scale must be positive")
    u = np.asarray(u, dtype=float)
    if np.any(u <= 0.0) or np.any(u >= 1.0):
        raise ValueError("u must lie strictly inside (0, 1)")
    if n == 1:
        return -scale * np.log1p(-u)

    def cdf_pdf(x):
        # upper-tail series: Q = e^{-x} sum_{m<n} x^m / m!
        term = np.ones_like(x)
        total = np.ones_like(x)
        for m in range(1, n):
            term = term * x / m
            total = total + term
        ex = np.exp(-x)
        return 1.0 - ex * total, ex * term  # pdf of unit-scale Gamma(n)

    # initial bracket via Wilson-Hilferty start, then expand
    lo = np.full(u.shape, 1e-300)
    hi = np.full(u.shape, max(4.0 * n, 40.0))
    while True:
        c_hi, _ = cdf_pdf(hi)
        bad = c_hi < u
        if not np.any(bad):
            break
        hi = np.where(bad, 2.0 * hi, hi)
    x = np.full(u.shape, float(n))
    for _ in range(80):
        c, p = cdf_pdf(x)
        lo = np.where(c < u, x, lo)
        hi = np.where(c >= u, x, hi)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = (c - u) / p
        x_new = x - step
        outside = ~np.isfinite(x_new) | (x_new <= lo) | (x_new >= hi)
        x_new = np.where(outside, 0.5 * (lo + hi), x_new)
        if np.all(np.abs(x_new - x) <= 1e-13 * np.maximum(x_new, 1e-300)):
            x = x_new
            break
        x = x_new
    return scale * x


def normal_inverse_cdf(u):
    """Standard normal quantile: rational approximation plus one Newton step."""
    u = np.asarray(u, dtype=float)
    if np.any(u <= 0.0) or np.any(u >= 1.0):
        raise ValueError("u must lie strictly inside (0, 1)")
    # Acklam's rational approximation
    a = (-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
         1.383577518672690e+02, -3.066479806614716e+01, 2.506628277459239e+00)
    b = (-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
         6.680131188771972e+01, -1.328068155288572e+01)
    c = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
         -2.549732539343734e+00, 4.374664141464968e+00, 2.938163982698783e+00)
    dd = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
          3.754408661907416e+00)
    plow = 0.02425
    x = np.empty_like(u)

    lower = u < plow
    upper = u > 1.0 - plow
    mid = ~(lower | upper)

    if np.any(mid):
        q = u[mid] - 0.5
        r = q * q
        num = ((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]
        den = (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0)
        x[mid] = num * q / den
    for sel, sign in ((lower, 1.0), (upper, -1.0)):
        if np.any(sel):
            p = u[sel] if sign > 0 else 1.0 - u[sel]
            q = np.sqrt(-2.0 * np.log(p))
            num = ((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]
            den = ((((dd[0] * q + dd[1]) * q + dd[2]) * q + dd[3]) * q + 1.0)
            x[sel] = sign * num / den

    # one Newton refinement on Phi(x) - u using erfc for tail accuracy
    from scipy.special import erfc

    phi = 0.5 * erfc(-x / np.sqrt(2.0))
    pdf = np.exp(-0.5 * x * x) / np.sqrt(2.0 * np.pi)
    return x - (phi - u) / pdf


def halton_points(dim, count, skip=0):
    """Deterministic Halton sequence in [0, 1]^dim (i-th prime base per axis)."""
    if dim < 1 or dim > len(_PRIMES):
        raise ValueError(f"dim must be in [1, {len(_PRIMES)}]")
    if count < 1:
        raise ValueError("count must be >= 1")
    idx = np.arange(skip + 1, skip + count + 1, dtype=np.int64)
    out = np.empty((count, dim))
    for i in range(dim):
        base = _PRIMES[i]
        n = idx.copy()
        col = np.zeros(count)
        denom = 1.0
        while np.any(n > 0):
            denom *= base
            n, digit = np.divmod(n, base)
            col += digit / denom
        out[:, i] = col
    return out


def _uniforms(cfg, dim, component_index):
    if cfg.mode == "mc":
        rng = _component_rng(cfg.seed, component_index)
        return rng.random((cfg.count, dim))
    u = halton_points(dim, cfg.count, skip=cfg.halton_skip)
    # guard the open-interval requirement of the inverse CDFs
    return np.clip(u, 1e-15, 1.0 - 1e-15)


def sample_product_density(pd, cfg, component_index=0):
    """Draw ``cfg.count`` phase points from a product density, shape (N, 2d)."""
    d = pd.dim
    u = _uniforms(cfg, 2 * d, component_index)
    pts = np.empty((cfg.count, 2 * d))
    for j, m in enumerate(pd.orders):
        theta = 2.0 * np.pi * u[:, 2 * j]
        tau = gamma_inverse_cdf(m + 1, 2.0 * pd.eps, u[:, 2 * j + 1])
        r = np.sqrt(tau)
        pts[:, j] = pd.center[j] + r * np.cos(theta)
        pts[:, d + j] = pd.center[d + j] + r * np.sin(theta)
    return pts


def sample_sphere_radial(sd, cfg, component_index=0):
    """Draw from the sphere-radial density: normalized Gaussian direction,
    Gamma(d+1, 2 eps) squared radius."""
    d = sd.dim
    u = _uniforms(cfg, 2 * d + 1, component_index)
    y = normal_inverse_cdf(u[:, : 2 * d])
    y /= np.linalg.norm(y, axis=1, keepdims=True)
    tau = gamma_inverse_cdf(d + 1, 2.0 * sd.eps, u[:, 2 * d])
    return sd.center + np.sqrt(tau)[:, None] * y


def sample_component(density, cfg, component_index=0):
    if isinstance(density, ProductDensity):
        return sample_product_density(density, cfg, component_index)
    if isinstance(density, SphereRadialDensity):
        return sample_sphere_radial(density, cfg, component_index)
    raise TypeError(f"unknown component density {type(density).__name__}")
