import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semiphase import (
    Gaussian,
    GaussianSuperposition,
    TranslatedHermite,
    eval_hermite_spectrogram,
    eval_hermite_spectrogram_sum,
    eval_husimi,
    eval_mu,
    eval_wigner,
    gaussian_inner_product,
    symplectic_form,
)
from semiphase.densities import eval_mu_ladder_oracle, eval_wigner_gaussian, fbi_hermite

from conftest import quad, wigner_gaussian_moment

FIG_SUPERPOSITION = GaussianSuperposition(((0.0, 1.0), (1.0, -1.5)), 0.14)


# ---------------------------------------------------------------- symplectic


def test_symplectic_self_is_zero():
    z = np.array([0.3, -1.2, 0.7, 2.0])
    assert symplectic_form(z, z) == 0.0


def test_symplectic_canonical_pair():
    assert symplectic_form(np.array([1.0, 0.0]), np.array([0.0, 1.0])) == 1.0


def test_symplectic_direct_value():
    assert symplectic_form(np.array([2.0, 3.0]), np.array([5.0, 7.0])) == -1.0


def test_symplectic_dimension_mismatch():
    with pytest.raises(ValueError):
        symplectic_form(np.array([1.0, 0.0]), np.array([1.0, 0.0, 0.0, 0.0]))


@given(st.lists(st.floats(-10, 10), min_size=4, max_size=4),
       st.lists(st.floats(-10, 10), min_size=4, max_size=4))
def test_symplectic_antisymmetry(a, b):
    z1, z2 = np.array(a), np.array(b)
    assert symplectic_form(z1, z2) == pytest.approx(-symplectic_form(z2, z1), abs=1e-12)


# ---------------------------------------------------- gaussian inner product


def test_inner_product_identical_states():
    z = np.array([0.4, -0.3])
    assert gaussian_inner_product(z, z, 0.2) == pytest.approx(1.0 + 0.0j)


def test_inner_product_modulus(rng):
    for _ in range(20):
        z1, z2 = rng.normal(size=(2, 4))
        eps = rng.uniform(0.05, 1.0)
        val = gaussian_inner_product(z1, z2, eps)
        assert abs(val) == pytest.approx(np.exp(-np.sum((z1 - z2) ** 2) / (4 * eps)))


def test_inner_product_direct_value():
    val = gaussian_inner_product(np.array([0.0, 0.0]), np.array([1.0, 0.0]), 0.25)
    assert val == pytest.approx(np.exp(-1.0) + 0.0j, abs=1e-12)


# --------------------------------------------------------------------- wigner


def test_wigner_gaussian_peak_value():
    z = np.array([0.3, -0.4])
    assert eval_wigner_gaussian(z, z, 0.14) == pytest.approx(1.0 / (np.pi * 0.14))


def test_wigner_gaussian_normalization():
    z = np.array([0.5, -0.2])
    eps = 0.09
    total = quad(lambda w: eval_wigner_gaussian(w, z, eps), z, eps,
                 6 * np.sqrt(eps), 201, 1)
    assert total == pytest.approx(1.0, abs=1e-8)


def test_wigner_gaussian_radial_decay():
    z = np.zeros(2)
    radii = np.linspace(0.0, 2.0, 30)
    vals = [eval_wigner_gaussian(np.array([r, 0.0]), z, 0.1) for r in radii]
    assert np.all(np.diff(vals) < 0)


def test_wigner_hermite_matches_grid_quadrature_norm():
    state = TranslatedHermite([0.2, -0.1], (2,), 0.15)
    total = quad(lambda w: eval_wigner(state, w), state.center, state.eps,
                 8 * np.sqrt(state.eps) * 3, 301, 1)
    assert total == pytest.approx(1.0, abs=1e-6)


# --------------------------------------------------------------------- husimi


def test_husimi_gaussian_peak_value():
    z = np.array([1.0, 2.0])
    assert eval_husimi(Gaussian(z, 0.14), z) == pytest.approx(1.0 / (2 * np.pi * 0.14))


def test_husimi_hermite_zero_at_center():
    state = TranslatedHermite([0.7, -0.2], (1,), 0.3)
    assert eval_husimi(state, np.array(state.center)) == pytest.approx(0.0, abs=1e-300)


def test_husimi_superposition_coherent_doubling():
    z = (0.4, -0.8)
    eps = 0.2
    sup = GaussianSuperposition((z, z), eps)
    single = Gaussian(z, eps)
    w = np.array([0.1, 0.3])
    assert eval_husimi(sup, w) == pytest.approx(4 * eval_husimi(single, w))


def test_husimi_hermite_k0_equals_gaussian(rng):
    g = Gaussian([0.3, 0.1, -0.2, 0.5], 0.11)
    h = TranslatedHermite(g.center, (0, 0), g.eps)
    for w in rng.normal(size=(25, 4)):
        assert eval_husimi(h, w) == pytest.approx(eval_husimi(g, w), rel=1e-13)


def test_husimi_bound(rng):
    states = [
        Gaussian([0.2, -0.1], 0.1),
        TranslatedHermite([0.2, -0.1], (3,), 0.1),
        FIG_SUPERPOSITION,
    ]
    for state in states:
        bound = state.norm_squared / (2 * np.pi * state.eps) ** state.dim
        for w in rng.normal(size=(200, 2 * state.dim)):
            assert eval_husimi(state, w) <= bound * (1 + 1e-12)


# --------------------------------------------------------------- spectrogram


def test_spectrogram_gaussian_zero_at_center():
    g = Gaussian([0.5, 0.5, 0.1, -0.1], 0.2)
    for j in range(2):
        assert eval_hermite_spectrogram(g, j, np.array(g.center)) == pytest.approx(0.0)


def test_spectrogram_gaussian_closed_form(rng):
    g = Gaussian([0.5, -0.2], 0.13)
    for w in rng.normal(size=(20, 2)):
        disp2 = np.sum((w - g.center) ** 2)
        expected = (disp2 / (2 * g.eps)) * np.exp(-disp2 / (2 * g.eps)) \
            / (2 * np.pi * g.eps)
        assert eval_hermite_spectrogram(g, 0, w) == pytest.approx(expected, rel=1e-12)


def test_spectrogram_hermite_k0_reduces_to_gaussian(rng):
    g = Gaussian([0.1, 0.4, -0.3, 0.2], 0.17)
    h = TranslatedHermite(g.center, (0, 0), g.eps)
    for w in rng.normal(size=(20, 4)):
        for j in range(2):
            assert eval_hermite_spectrogram(h, j, w) == pytest.approx(
                eval_hermite_spectrogram(g, j, w), rel=1e-12)


def test_spectrogram_hermite_k1_root_at_unit_radius():
    # three-term combination h_0 - 2 h_1 + 2 h_2 vanishes where the squared
    # block radius over 2 eps equals the order
    eps = 0.2
    state = TranslatedHermite([0.0, 0.0], (1,), eps)
    r = np.sqrt(2 * eps)  # rho = 1
    val = eval_hermite_spectrogram(state, 0, np.array([r, 0.0]))
    assert val == pytest.approx(0.0, abs=1e-14)


def test_spectrogram_three_term_oracle(rng):
    # factored evaluation equals the literal k h_{k-1} - 2k h_k + (k+1) h_{k+1}
    from semiphase.densities import hermite_husimi_factor
    eps = 0.12
    for k in (1, 2, 5):
        state = TranslatedHermite([0.3, -0.5], (k,), eps)
        for w in rng.normal(size=(20, 2)):
            rho2 = np.sum((w - state.center) ** 2)
            hs = [hermite_husimi_factor(n, rho2, eps) for n in (k - 1, k, k + 1)]
            literal = k * hs[0] - 2 * k * hs[1] + (k + 1) * hs[2]
            assert eval_hermite_spectrogram(state, 0, w) == pytest.approx(
                literal, rel=1e-9, abs=1e-30)


def test_spectrogram_nonnegative(rng):
    states = [
        Gaussian([0.0, 0.0], 0.1),
        TranslatedHermite([0.4, -0.3], (2,), 0.25),
        FIG_SUPERPOSITION,
    ]
    for state in states:
        for w in rng.normal(size=(300, 2 * state.dim)):
            for j in range(state.dim):
                assert eval_hermite_spectrogram(state, j, w) >= -1e-14


# ------------------------------------------------------------------------ mu


def test_mu_gaussian_peak_value():
    z = np.array([0.0, 0.0])
    assert eval_mu(Gaussian(z, 0.14), z) == pytest.approx(1.5 / (2 * np.pi * 0.14))


def test_mu_gaussian_sign_change_radius():
    eps, d = 0.07, 1
    g = Gaussian([0.0, 0.0], eps)
    r2 = 4 * eps * (1 + d / 2)
    r = np.sqrt(r2)
    inner = eval_mu(g, np.array([r * (1 - 1e-3), 0.0]))
    outer = eval_mu(g, np.array([r * (1 + 1e-3), 0.0]))
    at_root = eval_mu(g, np.array([r, 0.0]))
    assert inner > 0 > outer
    assert abs(at_root) < 1e-10


@pytest.mark.parametrize("state", [
    Gaussian([0.3, -0.5], 0.08),
    TranslatedHermite([0.3, -0.5], (2,), 0.08),
    FIG_SUPERPOSITION,
])
def test_mu_normalization(state):
    k_max = max(getattr(state, "k", (0,)))
    centers = getattr(state, "centers", None)
    center = np.mean(np.atleast_2d(centers if centers is not None else state.center),
                     axis=0)
    half = 8 * np.sqrt(state.eps) * (1 + k_max) + 1.0
    total = quad(lambda w: eval_mu(state, w), center, state.eps, half, 401, 1)
    assert total == pytest.approx(state.norm_squared, abs=1e-6)


def test_husimi_normalization_families():
    for state in (Gaussian([0.1, 0.2], 0.12), TranslatedHermite([0.1, 0.2], (1,), 0.12)):
        total = quad(lambda w: eval_husimi(state, w), state.center, state.eps,
                     8 * np.sqrt(state.eps) * 2, 301, 1)
        assert total == pytest.approx(1.0, abs=1e-6)


def test_mu_covariance_under_translation(rng):
    eps = 0.21
    shift = np.array([0.7, -1.1, 0.4, 0.9])
    at_origin = TranslatedHermite([0.0] * 4, (1, 2), eps)
    shifted = TranslatedHermite(shift, (1, 2), eps)
    for w in rng.normal(size=(30, 4)):
        assert eval_mu(shifted, w) == eval_mu(at_origin, w - shift)


def test_mu_is_husimi_minus_laplacian_correction():
    # second-order FD Laplacian of the Husimi converges at O(h^2) to the
    # spectrogram combination
    g = Gaussian([0.2, -0.3], 0.3)
    w = np.array([0.5, 0.1])

    def residual(h):
        lap = 0.0
        for i in range(2):
            e = np.zeros(2)
            e[i] = h
            lap += (eval_husimi(g, w + e) - 2 * eval_husimi(g, w)
                    + eval_husimi(g, w - e)) / h**2
        return abs(eval_mu(g, w) - (eval_husimi(g, w) - g.eps / 4 * lap))

    r1, r2 = residual(1e-2), residual(5e-3)
    assert r1 / r2 == pytest.approx(4.0, rel=0.15)


def test_mu_moment_exactness_degree_three(rng):
    for _ in range(3):
        center = rng.normal(scale=0.5, size=2)
        eps = 0.11
        g = Gaussian(center, eps)
        for kq in range(4):
            for kp in range(4 - kq):
                val = quad(lambda w: w[:, 0] ** kq * w[:, 1] ** kp * eval_mu(g, w),
                           center, eps, 9 * np.sqrt(eps), 501, 1)
                exact = wigner_gaussian_moment(center, eps, (kq,), (kp,))
                assert val == pytest.approx(exact, rel=1e-9, abs=1e-9)


# ------------------------------------------------------------- ladder oracle


def test_ladder_oracle_gaussian(rng):
    g = Gaussian([0.4, -0.2, 0.1, 0.8], 0.09)
    for w in rng.normal(size=(100, 4)):
        a, b = eval_mu(g, w), eval_mu_ladder_oracle(g, w)
        assert a == pytest.approx(b, rel=1e-12, abs=1e-300)


def test_ladder_oracle_superposition_grid():
    qs = np.linspace(-1.5, 2.5, 64)
    ps = np.linspace(-3.0, 2.5, 64)
    for q in qs[::4]:
        for p in ps[::4]:
            w = np.array([q, p])
            assert eval_mu(FIG_SUPERPOSITION, w) == pytest.approx(
                eval_mu_ladder_oracle(FIG_SUPERPOSITION, w), rel=1e-10, abs=1e-12)


def test_ladder_oracle_hermite(rng):
    state = TranslatedHermite([0.5, -1.0], (2,), 0.18)
    for w in rng.normal(size=(40, 2)):
        assert eval_mu(state, w) == pytest.approx(
            eval_mu_ladder_oracle(state, w), rel=1e-10, abs=1e-30)


# ----------------------------------------------------------------------- fbi


def test_fbi_ground_state_at_origin():
    eps = 0.3
    val = fbi_hermite(np.zeros(2), (0,), eps)
    assert val == pytest.approx((2 * np.pi * eps) ** -0.5 + 0.0j)


def test_fbi_modulus_squared_is_husimi(rng):
    eps = 0.22
    for k in ((0,), (1,), (3,)):
        state = TranslatedHermite([0.0, 0.0], k, eps)
        for z in rng.normal(size=(20, 2)):
            assert abs(fbi_hermite(z, k, eps)) ** 2 == pytest.approx(
                eval_husimi(state, z), rel=1e-12, abs=1e-300)


def test_fbi_first_hermite_along_q():
    eps = 0.4
    for q in (0.3, -1.2):
        z = np.array([q, 0.0])
        expected = (2 * np.pi * eps) ** -0.5 * (q / np.sqrt(2 * eps)) \
            * np.exp(-q**2 / (4 * eps))
        assert fbi_hermite(z, (1,), eps) == pytest.approx(expected + 0.0j, abs=1e-14)


# ----------------------------------------------------------- consistency net


def test_mu_equals_spectrogram_combination(rng):
    d = 2
    state = TranslatedHermite([0.1, 0.2, -0.4, 0.6], (1, 0), 0.15)
    for w in rng.normal(size=(20, 4)):
        combo = (1 + d / 2) * eval_husimi(state, w) \
            - 0.5 * eval_hermite_spectrogram_sum(state, w)
        assert eval_mu(state, w) == pytest.approx(combo, rel=1e-12, abs=1e-300)
