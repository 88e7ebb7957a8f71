"""Explicit constants and lifting certificates."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from specgap.lifting import (
    c_uc,
    davis_kahan_check,
    interval_movement_check,
    kappa,
    ucp_verify,
    verify_bottom_lifting,
    verify_gap_comparison_left,
    verify_gap_comparison_right,
    verify_gap_lifting_left,
    verify_gap_lifting_right,
)
from specgap.gaps import enumerate_gap
from specgap.linalg import SpectralInterval, SymmetricMatrix, eigendecompose, spectral_projector
from specgap.schrodinger import (
    AdmissibleDomain,
    Grid,
    PotentialField,
    build_hamiltonian,
    sample_equidistributed,
)
from specgap.verify import random_gapped, random_psd_with_norm, random_symmetric_with_norm


# -- constants ---------------------------------------------------------------


def test_c_uc_closed_form_zero_potential():
    const = c_uc(dimension=2, cell_scale=1.0, delta=0.25, v_min=0.0, v_max=0.0,
                 energy=0.0, exponent_n=2.0)
    assert const.shift == 0.0
    assert const.value == 0.0625  # (1/4)^(2*1), exponent factor minimized at 0


def test_c_uc_half_cell_limit():
    const = c_uc(dimension=1, cell_scale=1.0, delta=0.5 - 1e-9, v_min=0.0, v_max=0.0,
                 energy=-1.0, exponent_n=3.0)
    assert const.value == pytest.approx(0.5**3, rel=1e-7)


def test_c_uc_shift_covariance():
    base = dict(dimension=1, cell_scale=1.0, delta=0.2, v_min=-1.3, v_max=2.1,
                energy=5.0, exponent_n=4.0)
    ref = c_uc(**base).value
    for c in (0.6, 3.7, -11.0):
        moved = c_uc(**{**base, "v_min": base["v_min"] + c, "v_max": base["v_max"] + c,
                        "energy": base["energy"] + c}).value
        assert abs(moved - ref) <= 1e-12


def test_c_uc_value_at_most_one():
    const = c_uc(dimension=1, cell_scale=2.0, delta=0.9, v_min=-5.0, v_max=5.0,
                 energy=20.0, exponent_n=10.0)
    assert 0.0 < const.value <= 1.0


def test_c_uc_delta_range_validation():
    with pytest.raises(ValueError):
        c_uc(1, 1.0, 0.5, 0.0, 0.0, 0.0)
    with pytest.raises(ValueError):
        c_uc(1, 1.0, -0.1, 0.0, 0.0, 0.0)


def test_kappa_closed_form():
    const = kappa(dimension=1, cell_scale=1.0, delta=0.25, theta=1.0,
                  v_min=0.0, v_max=0.0, w_sup=1.0, energy=0.0, exponent_n=2.0)
    assert const.value == 0.25**4  # exponent 2*(1 + 1^{2/3}) at the optimal shift 0


def test_kappa_linear_in_theta():
    base = dict(dimension=1, cell_scale=1.0, delta=0.2, v_min=-1.0, v_max=1.0,
                w_sup=0.5, energy=3.0, exponent_n=5.0)
    v1 = kappa(theta=1.0, **base).value
    v2 = kappa(theta=2.0, **base).value
    assert v2 == pytest.approx(2.0 * v1, rel=1e-13)


@settings(derandomize=True, max_examples=30, deadline=None)
@given(
    st.floats(min_value=-5.0, max_value=5.0),
    st.floats(min_value=0.0, max_value=8.0),
)
def test_kappa_monotone_in_energy(s1, ds):
    base = dict(dimension=1, cell_scale=1.0, delta=0.2, theta=1.0,
                v_min=-1.0, v_max=1.0, w_sup=0.5, exponent_n=5.0)
    assert kappa(energy=s1 + ds, **base).value <= kappa(energy=s1, **base).value * (1 + 1e-12)


def test_constant_monotonicity_grids():
    base = dict(dimension=1, cell_scale=1.0, delta=0.2, v_min=-1.0, v_max=2.0,
                energy=5.0, exponent_n=4.0)
    vals_e = [c_uc(**{**base, "energy": e}).value for e in (0.0, 2.0, 5.0, 9.0)]
    assert np.all(np.diff(vals_e) <= 0.0)
    vals_v = [c_uc(**{**base, "v_min": -s, "v_max": s}).value for s in (0.5, 1.0, 2.0, 4.0)]
    assert np.all(np.diff(vals_v) <= 0.0)
    vals_d = [c_uc(**{**base, "delta": d}).value for d in (0.05, 0.1, 0.2, 0.4)]
    assert np.all(np.diff(vals_d) >= 0.0)


# -- bottom lifting -----------------------------------------------------------


def test_bottom_lifting_scalar_shift():
    rng = np.random.default_rng(0)
    raw = rng.standard_normal((30, 30))
    ham = SymmetricMatrix(0.5 * (raw + raw.T))
    kap = 0.3
    cert = verify_bottom_lifting(ham, kap * SymmetricMatrix.identity(30),
                                 energy=float(np.max(np.abs(ham.mat))) * 3, kap=kap)
    assert cert.passed and not cert.precondition_failed
    assert np.max(np.abs(cert.shifts - kap)) <= 1e-12


def test_bottom_lifting_schrodinger_indicator():
    dom = AdmissibleDomain.interval(0.0, 8.0)
    grid = Grid(dom, 32, "dirichlet")
    rng = np.random.default_rng(1)
    v = PotentialField(grid, rng.uniform(-3.0, 3.0, grid.size))
    ham = build_hamiltonian(dom, grid, v)
    s = sample_equidistributed(dom, grid, 0.2, seed=5)
    theta = 1.0
    w_op = SymmetricMatrix.from_diagonal(np.where(s.mask, theta, 0.0))
    energy = 40.0
    const = kappa(dimension=1, cell_scale=1.0, delta=0.2, theta=theta,
                  v_min=v.min_value, v_max=v.max_value, w_sup=theta,
                  energy=energy, exponent_n=10.0)
    cert = verify_bottom_lifting(ham, w_op, energy, const.value)
    assert cert.passed and not cert.precondition_failed
    assert cert.margin >= -cert.tol


def test_bottom_lifting_negative_control():
    rng = np.random.default_rng(2)
    raw = rng.standard_normal((20, 20))
    ham = SymmetricMatrix(0.5 * (raw + raw.T))
    w = random_psd_with_norm(rng, 20, 0.5)
    energy = float(np.max(np.abs(ham.mat))) * 3
    dec = eigendecompose(ham + w)
    proj = spectral_projector(dec, SpectralInterval.up_to(energy))
    honest = float(np.min(np.linalg.eigvalsh(proj.compress(w))))
    cert = verify_bottom_lifting(ham, w, energy, honest * 2.0 + 0.1)
    assert cert.precondition_failed and not cert.passed
    assert cert.margin is None


# -- gap lifting ---------------------------------------------------------------


def _kappa_on_perturbed(a, b, gamma):
    dec_ab = eigendecompose(a + b)
    proj = spectral_projector(dec_ab, SpectralInterval.up_to(gamma))
    return float(np.min(np.linalg.eigvalsh(proj.compress(b))))


def test_gap_left_scalar_shift_exact():
    a = SymmetricMatrix(np.diag([-3.0, -2.0, 2.0, 3.0]))
    kap = 0.2
    cert = verify_gap_lifting_left(a, kap * SymmetricMatrix.identity(4), 0.0, kap, variant="norm")
    assert cert.passed
    assert np.max(np.abs(cert.shifts - kap)) <= 1e-13


def test_gap_left_randomized_all_variants():
    rng = np.random.default_rng(3)
    for variant in ("norm", "positive", "opt"):
        for _ in range(5):
            n = int(rng.integers(40, 60))
            a = random_gapped(rng, n, gamma=0.0, gap_width=1.2)
            dec = eigendecompose(a)
            gs = enumerate_gap(dec, 0.0)
            if variant == "norm":
                b = random_symmetric_with_norm(rng, n, 0.4 * gs.dist)
            elif variant == "positive":
                b = random_psd_with_norm(rng, n, 0.9 * gs.dist)
            else:
                b = random_psd_with_norm(rng, n, 0.9 * gs.dist_left)
            kap = _kappa_on_perturbed(a, b, 0.0) if variant != "opt" else -1.0
            cert = verify_gap_lifting_left(a, b, 0.0, kap, variant=variant)
            assert not cert.precondition_failed, (variant, cert.preconditions)
            assert cert.passed
            assert cert.margin >= -1e-10 * dec.norm


def test_gap_left_negative_controls():
    rng = np.random.default_rng(4)
    a = random_gapped(rng, 40, gamma=0.0, gap_width=1.0)
    gs = enumerate_gap(eigendecompose(a), 0.0)
    big = random_symmetric_with_norm(rng, 40, 0.55 * gs.dist)
    assert verify_gap_lifting_left(a, big, 0.0, 0.0, variant="norm").precondition_failed
    indef = random_symmetric_with_norm(rng, 40, 0.3 * gs.dist)
    assert verify_gap_lifting_left(a, indef, 0.0, 0.0, variant="positive").precondition_failed
    over = random_psd_with_norm(rng, 40, 1.05 * gs.dist_left)
    assert verify_gap_lifting_left(a, over, 0.0, 0.0, variant="opt").precondition_failed


def test_gap_right_constructed_instance():
    rng = np.random.default_rng(5)
    a = random_gapped(rng, 40, gamma=0.0, gap_width=2.0)
    gs = enumerate_gap(eigendecompose(a), 0.0)
    b = random_psd_with_norm(rng, 40, 0.4)
    energy = float(gs.right[3] + 0.2)
    dec_ab = eigendecompose(a + b)
    proj = spectral_projector(dec_ab, SpectralInterval.up_to(energy))
    kap = float(np.min(np.linalg.eigvalsh(proj.compress(b))))
    cert = verify_gap_lifting_right(a, b, 0.0, kap, energy, variant="norm")
    assert cert.passed and cert.margin >= -1e-10 * eigendecompose(a).norm


def test_gap_right_opt_negative_control():
    rng = np.random.default_rng(6)
    a = random_gapped(rng, 40, gamma=0.0, gap_width=1.0)
    gs = enumerate_gap(eigendecompose(a), 0.0)
    over = random_psd_with_norm(rng, 40, 1.02 * gs.dist_left)
    cert = verify_gap_lifting_right(a, over, 0.0, 0.0, gs.right[0] + 0.5, variant="opt")
    assert cert.precondition_failed


def test_gap_comparison_left():
    rng = np.random.default_rng(7)
    a = random_gapped(rng, 40, gamma=0.0, gap_width=1.5)
    gs = enumerate_gap(eigendecompose(a), 0.0)
    c = random_psd_with_norm(rng, 40, 0.1 * gs.dist)
    b = c + random_psd_with_norm(rng, 40, 0.2 * gs.dist)
    cert = verify_gap_comparison_left(a, b, c, 0.0, variant="norm")
    assert cert.tag == "monotone"
    assert cert.passed and cert.margin >= -1e-10


def test_gap_comparison_right():
    rng = np.random.default_rng(8)
    a = random_gapped(rng, 40, gamma=0.0, gap_width=1.5)
    gs = enumerate_gap(eigendecompose(a), 0.0)
    c = random_psd_with_norm(rng, 40, 0.1 * gs.dist)
    b = c + random_psd_with_norm(rng, 40, 0.2 * gs.dist)
    cert = verify_gap_comparison_right(a, b, c, 0.0, energy=float(gs.right[3] + 0.2))
    assert cert.passed and cert.margin >= -1e-10


def test_certificate_serialization():
    a = SymmetricMatrix(np.diag([-3.0, -2.0, 2.0, 3.0]))
    cert = verify_gap_lifting_left(a, 0.2 * SymmetricMatrix.identity(4), 0.0, 0.2, variant="norm")
    payload = cert.to_json_dict()
    assert payload["tag"] == "gap-left"
    assert payload["pass"] is True
    assert all({"passed", "witness"} <= set(v) for v in payload["preconditions"].values())
    row = cert.csv_row()
    assert row.startswith("gap-left,") and row.endswith(",pass")


# -- projector distance and interval movement ---------------------------------


def test_davis_kahan_worked_example():
    a = SymmetricMatrix(np.diag([-1.0, 1.0]))
    b = SymmetricMatrix([[0.0, 0.25], [0.25, 0.0]])
    rep = davis_kahan_check(a, b, 0.0)
    assert rep.precondition_ok and rep.passed
    assert rep.measured == pytest.approx(0.1222, abs=5e-5)
    assert rep.bound == pytest.approx(np.sin(np.pi / 12.0), abs=1e-12)
    assert rep.bound == pytest.approx(0.2588, abs=5e-5)


def test_davis_kahan_zero_perturbation():
    a = SymmetricMatrix(np.diag([-1.0, 1.0]))
    rep = davis_kahan_check(a, SymmetricMatrix(np.zeros((2, 2))), 0.0)
    assert rep.measured == 0.0 and rep.bound == 0.0 and rep.passed


def test_davis_kahan_randomized():
    rng = np.random.default_rng(9)
    for _ in range(40):
        n = int(rng.integers(10, 30))
        a = random_gapped(rng, n, gamma=0.0, gap_width=float(rng.uniform(0.8, 2.0)))
        gs = enumerate_gap(eigendecompose(a), 0.0)
        b = random_symmetric_with_norm(rng, n, float(rng.uniform(0.05, 0.5)) * gs.dist)
        rep = davis_kahan_check(a, b, 0.0)
        assert rep.precondition_ok
        assert rep.measured <= rep.bound + 1e-10
        assert rep.bound <= 1.0 / np.sqrt(2.0) + 1e-15


def test_davis_kahan_precondition():
    a = SymmetricMatrix(np.diag([-1.0, 1.0]))
    rep = davis_kahan_check(a, SymmetricMatrix(np.diag([0.8, 0.0])), 0.0)
    assert not rep.precondition_ok and not rep.passed


def test_interval_movement_constant_shift():
    a = SymmetricMatrix(np.diag([-2.0, -1.0, 1.0, 2.0]))
    c = 0.4
    rep = interval_movement_check(a, c * SymmetricMatrix.identity(4), -1.0, 1.0)
    assert rep.precondition_ok and rep.passed and rep.violations == 0


def test_interval_movement_randomized():
    rng = np.random.default_rng(10)
    for _ in range(20):
        n = int(rng.integers(20, 50))
        a = random_gapped(rng, n, gamma=0.0, gap_width=float(rng.uniform(0.5, 2.0)))
        gs = enumerate_gap(eigendecompose(a), 0.0)
        b = random_psd_with_norm(rng, n, float(rng.uniform(0.1, 2.0)))
        rep = interval_movement_check(a, b, -gs.dist_left, gs.dist_right)
        assert rep.precondition_ok and rep.passed


def test_interval_movement_rejects_indefinite():
    rng = np.random.default_rng(11)
    a = random_gapped(rng, 20, gamma=0.0, gap_width=1.0)
    indef = random_symmetric_with_norm(rng, 20, 0.5)
    rep = interval_movement_check(a, indef, -0.5, 0.5)
    assert not rep.precondition_ok and not rep.passed


# -- unique continuation -------------------------------------------------------


def test_ucp_ground_state_ratio():
    dom = AdmissibleDomain.interval(0.0, 1.0)
    grid = Grid(dom, 512, "dirichlet")
    v = PotentialField.constant(grid, 0.0)
    dec = eigendecompose(build_hamiltonian(dom, grid, v))
    x = grid.coordinates()[:, 0]
    from specgap.schrodinger import EquidistributedSet

    s = EquidistributedSet(domain=dom, grid=grid, delta=0.125,
                           centers=np.array([[0.5]]), mask=np.abs(x - 0.5) <= 0.125)
    rep = ucp_verify(dec, s, v, energy=15.0, exponent_n=1.0)
    assert rep.used_modes == 1
    assert rep.ratios[0] == pytest.approx(0.4751, abs=5e-3)
    assert rep.constant.value < 0.4  # any N >= 1 certifies far below the ratio
    assert rep.passed


def test_ucp_full_cover_ratio_one():
    dom = AdmissibleDomain.interval(0.0, 1.0)
    grid = Grid(dom, 64, "dirichlet")
    v = PotentialField.constant(grid, 0.0)
    dec = eigendecompose(build_hamiltonian(dom, grid, v))
    from specgap.schrodinger import EquidistributedSet

    s = EquidistributedSet(domain=dom, grid=grid, delta=0.49,
                           centers=np.array([[0.5]]), mask=np.ones(grid.size, dtype=bool))
    rep = ucp_verify(dec, s, v, energy=100.0, exponent_n=10.0)
    assert np.all(rep.ratios == 1.0)
    assert rep.passed


def test_ucp_randomized_box():
    dom = AdmissibleDomain.interval(0.0, 8.0)
    grid = Grid(dom, 32, "dirichlet")
    rng = np.random.default_rng(12)
    v = PotentialField(grid, rng.uniform(-10.0, 10.0, grid.size))
    dec = eigendecompose(build_hamiltonian(dom, grid, v))
    for seed in range(5):
        s = sample_equidistributed(dom, grid, 0.2, seed=seed)
        rep = ucp_verify(dec, s, v, energy=50.0, exponent_n=10.0)
        assert rep.passed
        assert rep.min_ratio >= rep.constant.value
        assert rep.form_min >= rep.constant.value
        assert rep.n_prime <= rep.n_prime_max
        assert rep.used_modes > 0
        # trust cutoff keeps only resolvable modes
        assert np.all(rep.energies <= 0.1 / grid.h**2)
