"""Structural identities of the auxiliary-dimension extension."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from specgap.ghost import (
    GhostExtension,
    extend,
    ghost_residual,
    reflect_extension_check,
    s_eval,
    s_prime,
    sandwich_check,
)
from specgap.linalg import eigendecompose
from specgap.schrodinger import AdmissibleDomain, Grid, PotentialField, build_hamiltonian

DOM = AdmissibleDomain.interval(0.0, 1.0)


@pytest.fixture(scope="module")
def operator():
    grid = Grid(DOM, 64, "dirichlet")
    rng = np.random.default_rng(17)
    v = PotentialField(grid, rng.uniform(-2.0, 2.0, grid.size))
    ham = build_hamiltonian(DOM, grid, v)
    return grid, v, ham, eigendecompose(ham)


def test_profile_branch_values():
    assert s_eval(2.0, 0.0) == 2.0
    assert s_eval(1.0, 4.0) == pytest.approx(np.sinh(2.0) / 2.0, rel=1e-14)
    assert s_eval(1.0, -np.pi**2) == pytest.approx(0.0, abs=1e-15)


def test_profile_continuity_across_branch_point():
    for t in (0.5, 1.0, 2.0):
        for eps in (1e-6, 1e-8):
            jump = abs(s_eval(t, eps) - s_eval(t, -eps))
            assert jump <= eps * t**3  # the two branches differ at O(lambda t^3)


@settings(derandomize=True, max_examples=40, deadline=None)
@given(
    st.floats(min_value=-2.0, max_value=2.0, allow_nan=False),
    st.floats(min_value=-40.0, max_value=40.0, allow_nan=False),
)
def test_profile_energy_identity(t, lam):
    resid = abs(s_prime(t, lam) ** 2 - lam * s_eval(t, lam) ** 2 - 1.0)
    scale = max(1.0, s_prime(t, lam) ** 2)
    assert resid / scale <= 1e-10


def test_single_mode_extension_exact(operator):
    _, _, _, dec = operator
    k = 4
    ext = extend(dec.eigenvectors[:, k], dec, t_max=0.4, m=65)
    lam = dec.eigenvalues[k]
    for i, t in enumerate(ext.times):
        np.testing.assert_allclose(
            ext.states[i], s_eval(t, lam) * dec.eigenvectors[:, k], atol=1e-12
        )


def test_two_mode_extension_analytic(operator):
    _, _, _, dec = operator
    c1, c2 = 0.8, -1.7
    psi = c1 * dec.eigenvectors[:, 1] + c2 * dec.eigenvectors[:, 3]
    ext = extend(psi, dec, t_max=0.3, m=33)
    l1, l3 = dec.eigenvalues[1], dec.eigenvalues[3]
    for i, t in enumerate(ext.times):
        expected = c1 * s_eval(t, l1) * dec.eigenvectors[:, 1] + c2 * s_eval(t, l3) * dec.eigenvectors[:, 3]
        np.testing.assert_allclose(ext.states[i], expected, atol=1e-12)


def test_extension_zero_and_odd(operator):
    _, _, _, dec = operator
    rng = np.random.default_rng(0)
    psi = dec.eigenvectors[:, :5] @ rng.standard_normal(5)
    ext = extend(psi, dec, t_max=0.5, m=129)
    mid = len(ext.times) // 2
    assert np.max(np.abs(ext.states[mid])) == 0.0
    assert np.max(np.abs(ext.states + ext.states[::-1])) <= 1e-13 * np.max(np.abs(ext.states))


def test_coefficients_partition_norm(operator):
    _, _, _, dec = operator
    rng = np.random.default_rng(1)
    psi = dec.eigenvectors @ rng.standard_normal(dec.n)
    ext = extend(psi, dec, t_max=0.2, m=17)
    assert np.sum(ext.coefficients**2) == pytest.approx(np.dot(psi, psi), rel=1e-12)


def test_window_leak_rejected(operator):
    _, _, _, dec = operator
    psi = dec.eigenvectors[:, 0] + 0.5 * dec.eigenvectors[:, 10]
    with pytest.raises(ValueError, match="outside the window"):
        extend(psi, dec, t_max=0.3, m=17, window=(dec.eigenvalues[0] - 1, dec.eigenvalues[5]))


def test_time_grid_validation(operator):
    _, _, _, dec = operator
    with pytest.raises(ValueError):
        extend(dec.eigenvectors[:, 0], dec, t_max=0.3, m=64)  # even
    with pytest.raises(ValueError):
        extend(dec.eigenvectors[:, 0], dec, t_max=0.3, m=1)


def test_derivative_at_zero_second_order(operator):
    _, _, _, dec = operator
    rng = np.random.default_rng(2)
    psi = dec.eigenvectors[:, :6] @ rng.standard_normal(6)
    errs = []
    for m in (33, 65, 129):
        ext = extend(psi, dec, t_max=0.4, m=m)
        errs.append(np.linalg.norm(ext.derivative_at_zero() - psi))
    orders = np.log2(np.array(errs[:-1]) / np.array(errs[1:]))
    assert np.min(orders) >= 1.9


def test_ghost_residual_second_order(operator):
    _, _, ham, dec = operator
    rng = np.random.default_rng(3)
    psi = dec.eigenvectors[:, :5] @ rng.standard_normal(5)
    r1 = ghost_residual(extend(psi, dec, t_max=0.4, m=65), ham)
    r2 = ghost_residual(extend(psi, dec, t_max=0.4, m=129), ham)
    assert r1 / r2 == pytest.approx(4.0, abs=0.6)


def test_ghost_residual_needs_three_samples(operator):
    _, _, ham, dec = operator
    ext = extend(dec.eigenvectors[:, 0], dec, t_max=0.1, m=3)
    ghost_residual(ext, ham)  # minimal valid case
    bad = GhostExtension(
        psi=ext.psi.copy(), times=ext.times[:2].copy(), states=ext.states[:2].copy(),
        eigenvalues=ext.eigenvalues.copy(), coefficients=ext.coefficients.copy(),
        eigenvectors=ext.eigenvectors.copy(), window=ext.window,
    )
    with pytest.raises(ValueError):
        ghost_residual(bad, ham)


def test_wrong_branch_residual_is_large(operator):
    _, _, ham, dec = operator
    rng = np.random.default_rng(4)
    psi = dec.eigenvectors[:, :2] @ rng.standard_normal(2)
    ext = extend(psi, dec, t_max=0.3, m=257)
    good = ghost_residual(ext, ham)
    lam = np.where(ext.eigenvalues > 0, ext.eigenvalues, 1e-12)
    prof = np.array([np.sin(np.sqrt(lam) * t) / np.sqrt(lam) for t in ext.times])
    bad_states = prof * ext.coefficients @ ext.eigenvectors.T
    bad = GhostExtension(
        psi=ext.psi.copy(), times=ext.times.copy(), states=bad_states,
        eigenvalues=ext.eigenvalues.copy(), coefficients=ext.coefficients.copy(),
        eigenvectors=ext.eigenvectors.copy(), window=ext.window,
    )
    assert ghost_residual(bad, ham) >= 1e3 * good


def test_sandwich_ground_state(operator):
    grid, v, ham, dec = operator
    ext = extend(dec.eigenvectors[:, 0], dec, t_max=0.5, m=129)
    rep = sandwich_check(ext, ham, tau=0.25, potential=v.values, weight=grid.quadrature_weight)
    assert rep.passed
    assert rep.lower < rep.value < rep.upper


def test_sandwich_zero_state(operator):
    grid, v, ham, dec = operator
    ext = extend(np.zeros(dec.n), dec, t_max=0.5, m=65)
    rep = sandwich_check(ext, ham, tau=0.25, potential=v.values, weight=grid.quadrature_weight)
    assert rep.lower == rep.value == rep.upper == 0.0
    assert rep.passed


def test_sandwich_high_energy_bound(operator):
    grid, v, ham, dec = operator
    # top of the spectral window drives the exponential factor of the bound
    psi = dec.eigenvectors[:, dec.n - 3]
    ext = extend(psi, dec, t_max=0.2, m=257)
    rep = sandwich_check(ext, ham, tau=0.2, potential=v.values, weight=grid.quadrature_weight)
    assert rep.passed


def test_sandwich_tau_validation(operator):
    grid, v, ham, dec = operator
    ext = extend(dec.eigenvectors[:, 0], dec, t_max=0.5, m=65)
    with pytest.raises(ValueError):
        sandwich_check(ext, ham, tau=0.9)
    with pytest.raises(ValueError):
        sandwich_check(ext, ham, tau=-0.1)


def test_reflection_extension(operator):
    grid, v, ham, dec = operator
    rng = np.random.default_rng(5)
    psi = dec.eigenvectors[:, :4] @ rng.standard_normal(4)
    ext = extend(psi, dec, t_max=0.3, m=65)
    rep = reflect_extension_check(ext, grid, v)
    assert rep.passed
    assert rep.seam_value == 0.0
    assert rep.residual_reflected <= 2.0 * rep.residual_original
