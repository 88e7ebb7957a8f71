"""Eigensolver, projector, and norm contracts."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from specgap.linalg import (
    HermitianMatrix,
    OrthogonalProjector,
    SpectralInterval,
    SymmetricMatrix,
    eigendecompose,
    operator_norm,
    principal_angle_norm,
    spectral_projector,
)


def test_diagonal_eigendecomposition():
    dec = eigendecompose(SymmetricMatrix(np.diag([3.0, 1.0, 2.0])))
    np.testing.assert_allclose(dec.eigenvalues, [1.0, 2.0, 3.0])
    # permutation eigenvectors, signs fixed positive
    perm = np.abs(dec.eigenvectors)
    np.testing.assert_allclose(perm, np.eye(3)[:, [1, 2, 0]], atol=1e-14)
    assert np.all(dec.eigenvectors[np.argmax(perm, axis=0), np.arange(3)] > 0)


def test_two_by_two_closed_form():
    dec = eigendecompose(SymmetricMatrix([[0.0, 1.0], [1.0, 0.0]]))
    np.testing.assert_allclose(dec.eigenvalues, [-1.0, 1.0], atol=1e-15)
    s = 1.0 / np.sqrt(2.0)
    np.testing.assert_allclose(dec.eigenvectors[:, 0], [s, -s], atol=1e-15)
    np.testing.assert_allclose(dec.eigenvectors[:, 1], [s, s], atol=1e-15)


def test_residual_orthonormality_on_random_matrix():
    rng = np.random.default_rng(0)
    raw = rng.standard_normal((200, 200))
    dec = eigendecompose(SymmetricMatrix(0.5 * (raw + raw.T)))
    assert dec.residual() <= 1e-10 * dec.norm
    assert dec.orthonormality_defect() <= 1e-10
    assert np.max(np.abs(dec.reconstruct() - dec.matrix.mat)) <= 1e-9 * dec.norm


def test_tridiagonal_path_matches_dense():
    rng = np.random.default_rng(1)
    d = rng.standard_normal(150)
    e = rng.standard_normal(149)
    tri = SymmetricMatrix.tridiagonal(d, e)
    assert tri.is_tridiagonal and tri.bandwidth == 1
    dec = eigendecompose(tri)
    dense = eigendecompose(SymmetricMatrix(tri.mat.copy()))
    np.testing.assert_allclose(dec.eigenvalues, dense.eigenvalues, atol=1e-11 * dec.norm)
    assert dec.residual() <= 1e-10 * dec.norm


def test_determinism_bitwise():
    rng = np.random.default_rng(2)
    raw = rng.standard_normal((40, 40))
    a = SymmetricMatrix(0.5 * (raw + raw.T))
    d1 = eigendecompose(a)
    d2 = eigendecompose(SymmetricMatrix(a.mat.copy()))
    assert np.array_equal(d1.eigenvalues, d2.eigenvalues)
    assert np.array_equal(d1.eigenvectors, d2.eigenvectors)


def test_spectral_projector_intervals():
    dec = eigendecompose(SymmetricMatrix(np.diag([0.0, 1.0, 2.0])))
    p1 = spectral_projector(dec, SpectralInterval.up_to(1.0))
    assert p1.rank == 2
    span = np.abs(p1.basis)
    assert span[2].max() < 1e-14  # e3 not in the range

    p2 = spectral_projector(dec, SpectralInterval.half_open(0.0, 2.0))
    assert p2.rank == 2
    assert np.abs(p2.basis)[0].max() < 1e-14  # e1 excluded by the open end

    p3 = spectral_projector(dec, SpectralInterval.half_open(1.5, 1.5))
    assert p3.rank == 0


def test_projector_snap_tolerance():
    dec = eigendecompose(SymmetricMatrix(np.diag([0.0, 1.0 + 1e-14, 2.0])))
    # eigenvalue numerically at the closed endpoint is included
    assert spectral_projector(dec, SpectralInterval.up_to(1.0)).rank == 2
    # and excluded at an open endpoint
    assert spectral_projector(dec, SpectralInterval.half_open(1.0, 3.0)).rank == 1


def test_projector_materialization_invariants():
    rng = np.random.default_rng(3)
    raw = rng.standard_normal((30, 30))
    dec = eigendecompose(SymmetricMatrix(0.5 * (raw + raw.T)))
    proj = spectral_projector(dec, SpectralInterval.up_to(0.0))
    pm = proj.matrix()
    assert np.max(np.abs(pm @ pm - pm)) <= 1e-10
    assert np.max(np.abs(pm - pm.T)) <= 1e-10


def test_operator_norm_examples():
    assert operator_norm(SymmetricMatrix(np.diag([1.0, -3.0]))) == pytest.approx(3.0, rel=1e-8)
    assert operator_norm(SymmetricMatrix([[0.0, 0.25], [0.25, 0.0]])) == pytest.approx(0.25, rel=1e-8)
    assert operator_norm(np.zeros((4, 4))) == 0.0


def test_operator_norm_against_svd():
    rng = np.random.default_rng(4)
    m = rng.standard_normal((50, 50))
    exact = np.linalg.svd(m, compute_uv=False)[0]
    assert operator_norm(m) == pytest.approx(exact, rel=1e-8)


def test_principal_angle_norm():
    e1 = OrthogonalProjector(np.array([[1.0], [0.0]]))
    assert principal_angle_norm(e1, e1) == 0.0
    e2 = OrthogonalProjector(np.array([[0.0], [1.0]]))
    assert principal_angle_norm(e1, e2) == pytest.approx(1.0, abs=1e-10)
    for phi in (0.1, 0.4, 1.2):
        rot = OrthogonalProjector(np.array([[np.cos(phi)], [np.sin(phi)]]))
        assert principal_angle_norm(e1, rot) == pytest.approx(np.sin(phi), abs=1e-10)


def test_principal_angle_dimension_mismatch():
    p = OrthogonalProjector(np.eye(3)[:, :1])
    q = OrthogonalProjector(np.eye(4)[:, :1])
    with pytest.raises(ValueError):
        principal_angle_norm(p, q)


def test_hermitian_embedding_eigenvalues():
    rng = np.random.default_rng(5)
    x = rng.standard_normal((8, 8))
    y = rng.standard_normal((8, 8))
    h = HermitianMatrix(x + x.T + 1j * (y - y.T))
    np.testing.assert_allclose(h.eigenvalues(), np.linalg.eigvalsh(h.mat), atol=1e-11)


def test_complement_projector():
    rng = np.random.default_rng(6)
    proj = OrthogonalProjector.from_span(rng.standard_normal((7, 3)))
    comp = proj.complement()
    assert comp.rank == 4
    assert np.max(np.abs(proj.basis.T @ comp.basis)) <= 1e-12


@settings(derandomize=True, max_examples=25, deadline=None)
@given(st.integers(min_value=2, max_value=25), st.integers(min_value=0, max_value=10_000))
def test_weyl_inequality_property(n, seed):
    rng = np.random.default_rng(seed)
    raw_a = rng.standard_normal((n, n))
    raw_b = rng.standard_normal((n, n))
    a = SymmetricMatrix(0.5 * (raw_a + raw_a.T))
    b = SymmetricMatrix(0.5 * (raw_b + raw_b.T))
    nb = np.linalg.norm(b.mat, 2)
    wa = eigendecompose(a).eigenvalues
    wab = eigendecompose(a + b).eigenvalues
    assert np.max(np.abs(wab - wa)) <= nb + 1e-10 * max(1.0, nb)
