"""Gap enumeration, non-positive subspaces, and the minimax principles."""

import json

import numpy as np
import pytest

from specgap.gaps import (
    enumerate_gap,
    perturbed_minimax,
    is_maximal_nonpositive,
    gap_infsup_value,
    random_nonpositive_subspace,
    automorphism_check,
)
from specgap.linalg import (
    OrthogonalProjector,
    SpectralInterval,
    SymmetricMatrix,
    eigendecompose,
    spectral_projector,
)
from specgap.verify import random_gapped, random_symmetric_with_norm


def test_enumerate_gap_example():
    dec = eigendecompose(SymmetricMatrix(np.diag([0.0, 0.5, 0.9, 3.0, 4.0])))
    gs = enumerate_gap(dec, 1.0)
    np.testing.assert_allclose(gs.left, [0.9, 0.5, 0.0])
    np.testing.assert_allclose(gs.right, [3.0, 4.0])
    assert gs.dist_left == pytest.approx(0.1)
    assert gs.dist_right == pytest.approx(2.0)
    assert gs.dist == pytest.approx(0.1)


def test_enumerate_gap_below_spectrum():
    dec = eigendecompose(SymmetricMatrix(np.diag([1.0, 2.0, 5.0])))
    gs = enumerate_gap(dec, 0.0)
    assert len(gs.left) == 0
    assert gs.dist_left == np.inf
    np.testing.assert_allclose(gs.right, [1.0, 2.0, 5.0])


def test_enumerate_gap_multiplicity():
    dec = eigendecompose(SymmetricMatrix(np.diag([1.0, 1.0, 5.0])))
    gs = enumerate_gap(dec, 2.0)
    np.testing.assert_allclose(gs.left, [1.0, 1.0])


def test_enumerate_gap_rejects_gamma_on_spectrum():
    dec = eigendecompose(SymmetricMatrix(np.diag([1.0, 2.0, 5.0])))
    with pytest.raises(ValueError, match="inside a gap"):
        enumerate_gap(dec, 2.0 + 1e-12)


def test_partition_property():
    rng = np.random.default_rng(0)
    for _ in range(5):
        raw = rng.standard_normal((20, 20))
        dec = eigendecompose(SymmetricMatrix(0.5 * (raw + raw.T)))
        w = dec.eigenvalues
        gaps_w = np.diff(w)
        i = int(np.argmax(gaps_w))
        gs = enumerate_gap(dec, float(0.5 * (w[i] + w[i + 1])))
        np.testing.assert_array_equal(gs.merged(), w)


def test_maximal_nonpositive_spectral_subspace():
    a = SymmetricMatrix(np.diag([-2.0, -1.0, 3.0]))
    dec = eigendecompose(a)
    m = spectral_projector(dec, SpectralInterval.up_to(0.0))
    wit = is_maximal_nonpositive(m, a, 0.0)
    assert wit.is_nonpositive and wit.is_maximal
    assert wit.max_inside == pytest.approx(-1.0)
    assert wit.min_complement == pytest.approx(3.0)


def test_maximal_nonpositive_perturbed_subspace():
    rng = np.random.default_rng(1)
    a = random_gapped(rng, 20, gamma=0.0, gap_width=2.0)
    dec = eigendecompose(a)
    gs = enumerate_gap(dec, 0.0)
    b = random_symmetric_with_norm(rng, 20, 0.45 * gs.dist)  # ||B|| < dist/2
    dec_ab = eigendecompose(a + b)
    m = spectral_projector(dec_ab, SpectralInterval.up_to(0.0))
    assert is_maximal_nonpositive(m, a, 0.0).is_maximal


def test_short_subspace_not_maximal():
    a = SymmetricMatrix(np.diag([-2.0, -1.0, 3.0]))
    short = OrthogonalProjector(np.eye(3)[:, :1])  # span(e1), one short
    wit = is_maximal_nonpositive(short, a, 0.0)
    assert wit.is_nonpositive and not wit.is_maximal


def test_gap_infsup_values():
    a = SymmetricMatrix(np.diag([-2.0, -1.0, 3.0]))
    dec = eigendecompose(a)
    m = spectral_projector(dec, SpectralInterval.up_to(0.0))
    assert gap_infsup_value(a, 0.0, m, 1) == pytest.approx(-1.0)
    assert gap_infsup_value(a, 0.0, m, 2) == pytest.approx(-2.0)
    with pytest.raises(ValueError):
        gap_infsup_value(a, 0.0, m, 3)


def test_gap_infsup_lower_bound_over_random_subspaces():
    rng = np.random.default_rng(2)
    a = random_gapped(rng, 24, gamma=0.0, gap_width=1.5)
    dec = eigendecompose(a)
    gs = enumerate_gap(dec, 0.0)
    for k in (1, 2):
        for seed in range(20):
            m = random_nonpositive_subspace(dec, 0.0, seed=seed)
            assert is_maximal_nonpositive(m, a, 0.0).is_maximal
            val = gap_infsup_value(a, 0.0, m, k)
            assert val >= gs.left[k - 1] - 1e-9 * dec.norm
        m_spec = spectral_projector(dec, SpectralInterval.up_to(0.0))
        attained = gap_infsup_value(a, 0.0, m_spec, k)
        assert attained == pytest.approx(gs.left[k - 1], abs=1e-10)


def test_minimax_unperturbed():
    a = SymmetricMatrix(np.diag([-2.0, -1.0, 3.0]))
    rep = perturbed_minimax(a, SymmetricMatrix(np.zeros((3, 3))), 0.0, 1)
    assert rep.hypotheses_ok
    assert rep.reference == pytest.approx(3.0)
    assert rep.achievability == pytest.approx(3.0, abs=1e-12)
    assert rep.passed


def test_minimax_randomized_instances():
    rng = np.random.default_rng(3)
    for trial in range(10):
        n = int(rng.integers(30, 50))
        a = random_gapped(rng, n, gamma=0.0, gap_width=2.0)
        b = random_symmetric_with_norm(rng, n, float(rng.uniform(0.2, 0.45)) * 2.0)
        scale = eigendecompose(a).norm
        for k in (1, 2, 3):
            rep = perturbed_minimax(a, b, 0.0, k, seed=trial)
            assert rep.hypotheses_ok
            assert rep.gap <= 1e-8 * max(1.0, scale)
            assert np.all(rep.lower_probes >= rep.reference - 1e-8 * max(1.0, scale))
            assert rep.passed


def test_minimax_index_bound():
    a = SymmetricMatrix(np.diag([-1.0, 2.0]))
    with pytest.raises(ValueError):
        perturbed_minimax(a, SymmetricMatrix(np.zeros((2, 2))), 0.0, 2)


def test_minimax_json_serialization():
    a = SymmetricMatrix(np.diag([-2.0, -1.0, 3.0]))
    rep = perturbed_minimax(a, SymmetricMatrix(np.zeros((3, 3))), 0.0, 1)
    payload = rep.to_json_dict()
    text = json.dumps(payload)  # must be JSON-serializable as-is
    loaded = json.loads(text)
    assert loaded["n"] == 1
    assert loaded["pass"] is True
    assert set(loaded["probes"]) == {"achievability", "lower_bound"}
    assert all({"name", "passed", "witness"} <= set(h) for h in loaded["hypotheses"])


def test_automorphism_unperturbed():
    a = SymmetricMatrix(np.diag([-2.0, -1.0, 3.0]))
    rep = automorphism_check(a, SymmetricMatrix(np.zeros((3, 3))), 0.0)
    assert rep.norm_s == 0.0
    assert rep.sylvester_residual == 0.0
    assert rep.neumann_error == 0.0
    assert rep.passed
    assert rep.domain_preservation == "trivial-finite-dimension"


def test_automorphism_randomized():
    rng = np.random.default_rng(4)
    for trial in range(10):
        n = int(rng.integers(20, 40))
        a = random_gapped(rng, n, gamma=0.0, gap_width=1.5)
        b = random_symmetric_with_norm(rng, n, float(rng.uniform(0.1, 0.45)) * 1.5)
        rep = automorphism_check(a, b, 0.0)
        assert rep.sylvester_residual <= 1e-12
        assert rep.neumann_error <= rep.neumann_bound * (1 + 1e-9) + 1e-15
        assert rep.t_min_singular >= rep.t_invertibility_bound - 1e-12
        assert rep.spectral_radius_estimate <= rep.norm_s + 1e-6
        assert rep.norm_s == pytest.approx(rep.norm_projector_product**2, rel=1e-6)
        assert rep.passed


def test_automorphism_requires_small_angle():
    # ||Q+ P-|| = 1 when the perturbation flips a spectral branch
    a = SymmetricMatrix(np.diag([-1.0, 1.0]))
    b = SymmetricMatrix(np.diag([3.0, 0.0]))  # pushes -1 above gamma
    with pytest.raises(ValueError):
        automorphism_check(a, b, 0.0)
