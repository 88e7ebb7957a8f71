"""Explicit lifting constants and falsification-resistant inequality checks.

Two constants are evaluated here:

* ``c_uc`` — the scale-free unique-continuation constant: the best value of
  (delta/G) ** [N (1 + G^{4/3} ||V - lambda||_inf^{2/3} + G sqrt((E-lambda)_+))]
  over the spectral shift lambda.  It lower-bounds the mass fraction that
  any state from the spectral subspace up to E carries on an equidistributed
  ball arrangement.

* ``kappa`` — the guaranteed upward displacement of spectral values under a
  perturbation dominating theta * 1_S: the same optimization with
  ||V - lambda||_inf + ||W||_inf in the exponent, multiplied by theta.

Around them sit verifiers that replay the lifting inequalities on concrete
matrices: eigenvalues below an energy cutoff, eigenvalues enumerated into a
gap from either side (with the norm-optimal variants and the two-operator
comparison forms), the projector-angle bound, and rigid movement of spectral
gaps.  Every verifier first checks its own preconditions numerically and
records the witnesses, so a certificate is self-contained evidence; a
failed precondition yields ``precondition_failed`` and no claim.

The dimension constant N is never specified by the theory beyond existence;
it is a required input (default 10) and reports carry an empirical probe of
the critical N per sample so tightness can be studied.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (
    OrthogonalProjector,
    SpectralDecomposition,
    SpectralInterval,
    SymmetricMatrix,
    eigendecompose,
    operator_norm,
    principal_angle_norm,
    spectral_projector,
)
from .schrodinger import EquidistributedSet, PotentialField, restricted_mass, total_mass

__all__ = [
    "UcpConstant",
    "c_uc",
    "kappa",
    "LiftingCertificate",
    "verify_bottom_lifting",
    "verify_gap_lifting_left",
    "verify_gap_lifting_right",
    "verify_gap_comparison_left",
    "verify_gap_comparison_right",
    "DavisKahanReport",
    "davis_kahan_check",
    "IntervalMovementReport",
    "interval_movement_check",
    "UcpReport",
    "ucp_verify",
]


# -- explicit constants -----------------------------------------------------


@dataclass(frozen=True)
class UcpConstant:
    """Optimized unique-continuation constant and its inputs."""

    dimension: int
    cell_scale: float
    delta: float
    v_min: float
    v_max: float
    energy: float
    exponent_n: float
    w_sup: float
    theta: float
    shift: float          # optimizing lambda*
    exponent_factor: float  # 1 + G^{4/3}(...)^{2/3} + G sqrt((E-lambda*)_+)
    value: float

    def to_json_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "cell_scale": self.cell_scale,
            "delta": self.delta,
            "v_min": self.v_min,
            "v_max": self.v_max,
            "energy": self.energy,
            "exponent_n": self.exponent_n,
            "w_sup": self.w_sup,
            "theta": self.theta,
            "shift": self.shift,
            "exponent_factor": self.exponent_factor,
            "value": self.value,
        }


_GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


def _exponent_factor(lam: float, g: float, v_min: float, v_max: float, e: float, w_sup: float) -> float:
    """1 + G^{4/3}(||V-lam||_inf + W_sup)^{2/3} + G sqrt((E-lam)_+)."""
    v_dev = max(lam - v_min, v_max - lam)  # sup-norm distance of lam to the range of V
    return (
        1.0
        + g ** (4.0 / 3.0) * (v_dev + w_sup) ** (2.0 / 3.0)
        + g * np.sqrt(max(0.0, e - lam))
    )


def _optimize_shift(g, delta, v_min, v_max, e, w_sup, grid_points=512, tol=1e-10):
    """Minimize the exponent factor over the spectral shift lambda.

    Bracketing grid over [v_min - (E - v_min)_+ - 1, max(E, v_max) + 1]
    followed by golden-section refinement on the best bracket; the factor is
    continuous and piecewise smooth, so this is robust.  The kink/cusp
    candidates (E, the midpoint of the potential range, the range endpoints)
    are evaluated exactly on top, because golden-section cannot resolve the
    2/3-power cusp to full precision.
    """
    lo = v_min - max(0.0, e - v_min) - 1.0
    hi = max(e, v_max) + 1.0
    grid = np.linspace(lo, hi, grid_points)
    vals = np.array([_exponent_factor(x, g, v_min, v_max, e, w_sup) for x in grid])
    i = int(np.argmin(vals))
    a = grid[max(i - 1, 0)]
    b = grid[min(i + 1, grid_points - 1)]
    # golden-section on [a, b]
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1 = _exponent_factor(x1, g, v_min, v_max, e, w_sup)
    f2 = _exponent_factor(x2, g, v_min, v_max, e, w_sup)
    while b - a > tol:
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = _exponent_factor(x1, g, v_min, v_max, e, w_sup)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = _exponent_factor(x2, g, v_min, v_max, e, w_sup)
    lam_star = 0.5 * (a + b)
    best = _exponent_factor(lam_star, g, v_min, v_max, e, w_sup)
    for cand in (e, 0.5 * (v_min + v_max), v_min, v_max):
        f_cand = _exponent_factor(cand, g, v_min, v_max, e, w_sup)
        if f_cand < best:
            lam_star, best = cand, f_cand
    return lam_star, best


def c_uc(
    dimension: int,
    cell_scale: float,
    delta: float,
    v_min: float,
    v_max: float,
    energy: float,
    exponent_n: float = 10.0,
) -> UcpConstant:
    """Unique-continuation constant with the shift optimized out.

    The base delta/G lies in (0, 1/2), so maximizing the value means
    minimizing the exponent factor; shifting V and E by the same constant
    leaves the result invariant.
    """
    return kappa_constant(
        dimension, cell_scale, delta, theta=1.0, v_min=v_min, v_max=v_max,
        w_sup=0.0, energy=energy, exponent_n=exponent_n,
    )


def kappa_constant(
    dimension: int,
    cell_scale: float,
    delta: float,
    theta: float,
    v_min: float,
    v_max: float,
    w_sup: float,
    energy: float,
    exponent_n: float = 10.0,
) -> UcpConstant:
    """Shared optimizer for c_uc (theta=1, w_sup=0) and kappa."""
    g = float(cell_scale)
    if not 0.0 < delta < 0.5 * g:
        raise ValueError(f"delta must lie in (0, G/2) = (0, {0.5 * g}), got {delta}")
    if exponent_n <= 0:
        raise ValueError("the dimension constant N must be positive")
    if theta <= 0:
        raise ValueError("theta must be positive")
    lam_star, factor = _optimize_shift(g, delta, float(v_min), float(v_max), float(energy), float(w_sup))
    value = theta * (delta / g) ** (exponent_n * factor)
    return UcpConstant(
        dimension=dimension,
        cell_scale=g,
        delta=float(delta),
        v_min=float(v_min),
        v_max=float(v_max),
        energy=float(energy),
        exponent_n=float(exponent_n),
        w_sup=float(w_sup),
        theta=float(theta),
        shift=float(lam_star),
        exponent_factor=float(factor),
        value=float(value),
    )


def kappa(
    dimension: int,
    cell_scale: float,
    delta: float,
    theta: float,
    v_min: float,
    v_max: float,
    w_sup: float,
    energy: float,
    exponent_n: float = 10.0,
) -> UcpConstant:
    """Lifting constant kappa(s): theta times the optimized base power with
    ||V - lambda||_inf + ||W||_inf in the exponent and s = ``energy``."""
    return kappa_constant(
        dimension, cell_scale, delta, theta=theta, v_min=v_min, v_max=v_max,
        w_sup=w_sup, energy=energy, exponent_n=exponent_n,
    )


# -- certificates -----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class LiftingCertificate:
    """Self-contained record of one lifting verification.

    pass iff every precondition held and the minimal observed displacement
    margin (shift minus kappa) stays above -tol.  A failed precondition sets
    ``precondition_failed`` and makes no claim about margins.
    """

    tag: str
    inputs: dict
    kappa: float | None
    preconditions: dict
    precondition_failed: bool
    shifts: np.ndarray | None
    margin: float | None
    tol: float
    passed: bool

    def __post_init__(self):
        if self.shifts is not None:
            self.shifts.setflags(write=False)

    def to_json_dict(self) -> dict:
        return {
            "tag": self.tag,
            "inputs": {k: _jsonable(v) for k, v in self.inputs.items()},
            "kappa": None if self.kappa is None else float(self.kappa),
            "preconditions": {
                k: {"passed": bool(v[0]), "witness": _jsonable(v[1])}
                for k, v in self.preconditions.items()
            },
            "precondition_failed": bool(self.precondition_failed),
            "shifts": None if self.shifts is None else [float(x) for x in self.shifts],
            "margin": None if self.margin is None else float(self.margin),
            "tol": float(self.tol),
            "pass": bool(self.passed),
        }

    def csv_row(self) -> str:
        kap = "" if self.kappa is None else repr(float(self.kappa))
        marg = "" if self.margin is None else repr(float(self.margin))
        return f"{self.tag},{kap},{marg},{'pass' if self.passed else 'fail'}"


def _jsonable(v):
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    if isinstance(v, np.ndarray):
        return [float(x) for x in v]
    return v


def _failed_certificate(tag, inputs, kap, preconditions, tol):
    return LiftingCertificate(
        tag=tag, inputs=inputs, kappa=kap, preconditions=preconditions,
        precondition_failed=True, shifts=None, margin=None, tol=tol, passed=False,
    )


def _compression_min(op: SymmetricMatrix, basis: OrthogonalProjector) -> float:
    if basis.rank == 0:
        return np.inf
    return float(np.min(np.linalg.eigvalsh(basis.compress(op))))


def verify_bottom_lifting(
    ham: SymmetricMatrix,
    w_op: SymmetricMatrix,
    energy: float,
    kap: float,
    tol: float | None = None,
) -> LiftingCertificate:
    """Displacement of eigenvalues below an energy cutoff.

    Precondition: <x, W x> >= kappa |x|^2 on the spectral subspace of H + W
    up to ``energy`` (checked through the compression minimum).  Then every
    eigenvalue of H + W below the cutoff exceeds its unperturbed partner by
    at least kappa.
    """
    dec_hw = eigendecompose(ham + w_op)
    dec_h = eigendecompose(ham)
    scale = max(dec_hw.norm, 1e-300)
    if tol is None:
        tol = 1e-10 * scale
    proj = spectral_projector(dec_hw, SpectralInterval.up_to(energy))
    comp_min = _compression_min(w_op, proj)
    pre = {"positivity-on-perturbed-subspace": (comp_min >= kap - 1e-12 * scale, comp_min)}
    inputs = {"energy": energy, "n": ham.n}
    if not pre["positivity-on-perturbed-subspace"][0]:
        return _failed_certificate("bottom", inputs, kap, pre, tol)
    below = dec_hw.eigenvalues < energy
    shifts = dec_hw.eigenvalues[below] - dec_h.eigenvalues[: int(np.sum(below))]
    margin = float(np.min(shifts - kap)) if len(shifts) else np.inf
    return LiftingCertificate(
        tag="bottom", inputs=inputs, kappa=kap, preconditions=pre,
        precondition_failed=False, shifts=shifts, margin=margin, tol=tol,
        passed=bool(margin >= -tol),
    )


def _norm_condition(b: SymmetricMatrix, bound: float, strict: bool = True):
    nb = operator_norm(b)
    ok = nb < bound if strict else nb <= bound
    return ok, nb


def _psd_condition(b: SymmetricMatrix, tol: float):
    lam_min = float(np.min(np.linalg.eigvalsh(b.mat)))
    return lam_min >= -tol, lam_min


def verify_gap_lifting_left(
    a: SymmetricMatrix,
    b: SymmetricMatrix,
    gamma: float,
    kap: float,
    variant: str = "norm",
    tol: float | None = None,
) -> LiftingCertificate:
    """Lifting of the eigenvalues enumerated leftward from gamma.

    Variants and their preconditions:

    * ``norm``:     ||B|| < dist(gamma, spec(A)) / 2  (B may be indefinite);
    * ``positive``: 0 <= B and ||B|| < dist(gamma, spec(A));
    * ``opt``:      0 <= B and ||B|| < dist_left, with the positivity
                    <x,Bx> >= kappa |x|^2 required on the perturbed negative
                    subspaces at n intermediate couplings j B / n, where n is
                    the smallest integer exceeding ||B|| / dist_right.  The n
                    separate compression checks are conservative.

    All variants additionally verify the kappa-positivity on the relevant
    subspaces and then assert the per-index inequality on the left lists.
    """
    from .gaps import enumerate_gap

    dec_a = eigendecompose(a)
    scale = max(dec_a.norm, 1e-300)
    if tol is None:
        tol = 1e-10 * scale
    gap_a = enumerate_gap(dec_a, gamma)
    pre = {}
    inputs = {"gamma": gamma, "variant": variant, "n": a.n}
    tag = "gap-left-opt" if variant == "opt" else "gap-left"

    dec_ab = eigendecompose(a + b)
    if variant == "norm":
        ok, nb = _norm_condition(b, 0.5 * gap_a.dist)
        pre["norm-below-half-gap-distance"] = (ok, nb)
        proj = spectral_projector(dec_ab, SpectralInterval.up_to(gamma))
        comp_min = _compression_min(b, proj)
        pre["kappa-positivity-on-perturbed-subspace"] = (comp_min >= kap - 1e-12 * scale, comp_min)
    elif variant == "positive":
        ok_psd, lam_min = _psd_condition(b, 1e-12 * scale)
        pre["nonnegative-perturbation"] = (ok_psd, lam_min)
        ok, nb = _norm_condition(b, gap_a.dist)
        pre["norm-below-gap-distance"] = (ok, nb)
        proj = spectral_projector(dec_ab, SpectralInterval.up_to(gamma))
        comp_min = _compression_min(b, proj)
        pre["kappa-positivity-on-perturbed-subspace"] = (comp_min >= kap - 1e-12 * scale, comp_min)
    elif variant == "opt":
        ok_psd, lam_min = _psd_condition(b, 1e-12 * scale)
        pre["nonnegative-perturbation"] = (ok_psd, lam_min)
        nb = operator_norm(b)
        pre["norm-below-left-distance"] = (nb < gap_a.dist_left, nb)
        inputs["conservative"] = True
        if np.isfinite(gap_a.dist_right):
            steps = int(np.floor(nb / gap_a.dist_right)) + 1
        else:
            steps = 1
        inputs["couplings"] = steps
        comp_min = np.inf
        if pre["norm-below-left-distance"][0]:
            for j in range(1, steps + 1):
                dec_j = eigendecompose(a + (j / steps) * b)
                proj_j = spectral_projector(dec_j, SpectralInterval.up_to(gamma))
                comp_min = min(comp_min, _compression_min(b, proj_j))
        pre["kappa-positivity-on-intermediate-subspaces"] = (comp_min >= kap - 1e-12 * scale, comp_min)
    else:
        raise ValueError(f"unknown variant {variant!r}; use 'norm', 'positive' or 'opt'")

    if not all(ok for ok, _ in pre.values()):
        return _failed_certificate(tag, inputs, kap, pre, tol)

    gap_ab = enumerate_gap(dec_ab, gamma)
    count = min(len(gap_a.left), len(gap_ab.left))
    shifts = gap_ab.left[:count] - gap_a.left[:count]
    margin = float(np.min(shifts - kap)) if count else np.inf
    return LiftingCertificate(
        tag=tag, inputs=inputs, kappa=kap, preconditions=pre,
        precondition_failed=False, shifts=shifts, margin=margin, tol=tol,
        passed=bool(margin >= -tol),
    )


def verify_gap_lifting_right(
    a: SymmetricMatrix,
    b: SymmetricMatrix,
    gamma: float,
    kap: float,
    energy: float,
    variant: str = "norm",
    tol: float | None = None,
) -> LiftingCertificate:
    """Lifting of the eigenvalues enumerated rightward from gamma, below
    an energy cutoff.

    * ``norm``: ||B|| <= dist(gamma, spec(A)) / 2 (B may be indefinite);
    * ``opt``:  0 <= B and ||B|| < dist_left(gamma, spec(A)).

    Both require <x,Bx> >= kappa |x|^2 on the spectral subspace of A + B up
    to ``energy`` and assert the inequality for indices whose perturbed
    eigenvalue stays below the cutoff.
    """
    from .gaps import enumerate_gap

    if energy <= gamma:
        raise ValueError("the energy cutoff must exceed gamma")
    dec_a = eigendecompose(a)
    scale = max(dec_a.norm, 1e-300)
    if tol is None:
        tol = 1e-10 * scale
    gap_a = enumerate_gap(dec_a, gamma)
    pre = {}
    inputs = {"gamma": gamma, "energy": energy, "variant": variant, "n": a.n}
    tag = "gap-right-opt" if variant == "opt" else "gap-right"

    if variant == "norm":
        ok, nb = _norm_condition(b, 0.5 * gap_a.dist, strict=False)
        pre["norm-at-most-half-gap-distance"] = (ok, nb)
    elif variant == "opt":
        ok_psd, lam_min = _psd_condition(b, 1e-12 * scale)
        pre["nonnegative-perturbation"] = (ok_psd, lam_min)
        ok, nb = _norm_condition(b, gap_a.dist_left)
        pre["norm-below-left-distance"] = (ok, nb)
    else:
        raise ValueError(f"unknown variant {variant!r}; use 'norm' or 'opt'")

    dec_ab = eigendecompose(a + b)
    proj = spectral_projector(dec_ab, SpectralInterval.up_to(energy))
    comp_min = _compression_min(b, proj)
    pre["kappa-positivity-on-perturbed-subspace"] = (comp_min >= kap - 1e-12 * scale, comp_min)

    if not all(ok for ok, _ in pre.values()):
        return _failed_certificate(tag, inputs, kap, pre, tol)

    gap_ab = enumerate_gap(dec_ab, gamma)
    count = min(len(gap_a.right), len(gap_ab.right))
    below = gap_ab.right[:count] < energy
    shifts = gap_ab.right[:count][below] - gap_a.right[:count][below]
    margin = float(np.min(shifts - kap)) if len(shifts) else np.inf
    return LiftingCertificate(
        tag=tag, inputs=inputs, kappa=kap, preconditions=pre,
        precondition_failed=False, shifts=shifts, margin=margin, tol=tol,
        passed=bool(margin >= -tol),
    )


def verify_gap_comparison_left(
    a: SymmetricMatrix,
    b: SymmetricMatrix,
    c: SymmetricMatrix,
    gamma: float,
    variant: str = "norm",
    tol: float | None = None,
) -> LiftingCertificate:
    """Two-operator monotonicity on the left lists: with B dominating C on
    the perturbed negative subspace and B - C small against the gap of
    A + C, the left eigenvalues of A + B dominate those of A + C."""
    from .gaps import enumerate_gap

    dec_ac = eigendecompose(a + c)
    scale = max(dec_ac.norm, 1e-300)
    if tol is None:
        tol = 1e-10 * scale
    gap_ac = enumerate_gap(dec_ac, gamma)
    diff = b - c
    pre = {}
    inputs = {"gamma": gamma, "variant": variant, "side": "left", "n": a.n}

    if variant == "norm":
        ok, nd = _norm_condition(diff, 0.5 * gap_ac.dist)
        pre["difference-norm-below-half-gap"] = (ok, nd)
    elif variant == "positive":
        ok_psd, lam_min = _psd_condition(diff, 1e-12 * scale)
        pre["difference-nonnegative"] = (ok_psd, lam_min)
        ok, nd = _norm_condition(diff, gap_ac.dist)
        pre["difference-norm-below-gap"] = (ok, nd)
    else:
        raise ValueError(f"unknown variant {variant!r}; use 'norm' or 'positive'")

    dec_ab = eigendecompose(a + b)
    proj = spectral_projector(dec_ab, SpectralInterval.up_to(gamma))
    dom_min = _compression_min(diff, proj)
    pre["domination-on-perturbed-subspace"] = (dom_min >= -1e-12 * scale, dom_min)

    if not all(ok for ok, _ in pre.values()):
        return _failed_certificate("monotone", inputs, None, pre, tol)

    gap_ab = enumerate_gap(dec_ab, gamma)
    count = min(len(gap_ac.left), len(gap_ab.left))
    shifts = gap_ab.left[:count] - gap_ac.left[:count]
    margin = float(np.min(shifts)) if count else np.inf
    return LiftingCertificate(
        tag="monotone", inputs=inputs, kappa=None, preconditions=pre,
        precondition_failed=False, shifts=shifts, margin=margin, tol=tol,
        passed=bool(margin >= -tol),
    )


def verify_gap_comparison_right(
    a: SymmetricMatrix,
    b: SymmetricMatrix,
    c: SymmetricMatrix,
    gamma: float,
    energy: float,
    tol: float | None = None,
) -> LiftingCertificate:
    """Two-operator monotonicity on the right lists below an energy cutoff:
    0 <= C <= B < dist_left and B dominating C on the perturbed subspace up
    to the cutoff force the right eigenvalues of A + B above those of A + C."""
    from .gaps import enumerate_gap

    if energy <= gamma:
        raise ValueError("the energy cutoff must exceed gamma")
    dec_a = eigendecompose(a)
    scale = max(dec_a.norm, 1e-300)
    if tol is None:
        tol = 1e-10 * scale
    gap_a = enumerate_gap(dec_a, gamma)
    pre = {}
    inputs = {"gamma": gamma, "energy": energy, "side": "right", "n": a.n}

    ok_c, lam_min_c = _psd_condition(c, 1e-12 * scale)
    pre["lower-operator-nonnegative"] = (ok_c, lam_min_c)
    ok_d, lam_min_d = _psd_condition(b - c, 1e-12 * scale)
    pre["domination-everywhere"] = (ok_d, lam_min_d)
    ok_n, nb = _norm_condition(b, gap_a.dist_left)
    pre["norm-below-left-distance"] = (ok_n, nb)

    dec_ab = eigendecompose(a + b)
    proj = spectral_projector(dec_ab, SpectralInterval.up_to(energy))
    dom_min = _compression_min(b - c, proj)
    pre["domination-on-perturbed-subspace"] = (dom_min >= -1e-12 * scale, dom_min)

    if not all(ok for ok, _ in pre.values()):
        return _failed_certificate("monotone", inputs, None, pre, tol)

    dec_ac = eigendecompose(a + c)
    gap_ab = enumerate_gap(dec_ab, gamma)
    gap_ac = enumerate_gap(dec_ac, gamma)
    count = min(len(gap_ac.right), len(gap_ab.right))
    below = gap_ab.right[:count] < energy
    shifts = gap_ab.right[:count][below] - gap_ac.right[:count][below]
    margin = float(np.min(shifts)) if len(shifts) else np.inf
    return LiftingCertificate(
        tag="monotone", inputs=inputs, kappa=None, preconditions=pre,
        precondition_failed=False, shifts=shifts, margin=margin, tol=tol,
        passed=bool(margin >= -tol),
    )


# -- Davis-Kahan and interval movement ---------------------------------------


@dataclass(frozen=True)
class DavisKahanReport:
    """Measured projector distance against the sin-2-theta bound."""

    measured: float
    bound: float
    norm_b: float
    gap_distance: float
    precondition_ok: bool
    passed: bool

    def to_json_dict(self) -> dict:
        return {
            "measured": self.measured,
            "bound": self.bound,
            "norm_b": self.norm_b,
            "gap_distance": self.gap_distance,
            "precondition_ok": bool(self.precondition_ok),
            "pass": bool(self.passed),
        }


def davis_kahan_check(
    a: SymmetricMatrix,
    b: SymmetricMatrix,
    gamma: float,
    tol: float = 1e-10,
) -> DavisKahanReport:
    """||P_{A+B}(gamma) - P_A(gamma)|| <= sin(arcsin(2||B||/dist)/2) <= 1/sqrt(2).

    Requires 2||B|| <= dist(gamma, spec(A)) so the arcsine argument stays
    within [-1, 1].
    """
    from .gaps import enumerate_gap

    dec_a = eigendecompose(a)
    gap_a = enumerate_gap(dec_a, gamma)
    nb = operator_norm(b)
    pre_ok = 2.0 * nb <= gap_a.dist * (1.0 + 1e-12)
    if not pre_ok:
        return DavisKahanReport(
            measured=np.nan, bound=np.nan, norm_b=nb, gap_distance=gap_a.dist,
            precondition_ok=False, passed=False,
        )
    dec_ab = eigendecompose(a + b)
    p = spectral_projector(dec_a, SpectralInterval.up_to(gamma))
    q = spectral_projector(dec_ab, SpectralInterval.up_to(gamma))
    measured = principal_angle_norm(p, q)
    arg = min(1.0, 2.0 * nb / gap_a.dist)
    bound = float(np.sin(0.5 * np.arcsin(arg)))
    passed = measured <= bound + tol and bound <= 1.0 / np.sqrt(2.0) + 1e-15
    return DavisKahanReport(
        measured=float(measured), bound=bound, norm_b=float(nb),
        gap_distance=float(gap_a.dist), precondition_ok=True, passed=bool(passed),
    )


@dataclass(frozen=True)
class IntervalMovementReport:
    """Spectral-free interval (a, b) of A stays free as (a + ||B||, b) for A + B."""

    a: float
    b: float
    norm_b: float
    violations: int
    worst_penetration: float
    precondition_ok: bool
    passed: bool

    def to_json_dict(self) -> dict:
        return {
            "a": self.a, "b": self.b, "norm_b": self.norm_b,
            "violations": self.violations, "worst_penetration": self.worst_penetration,
            "precondition_ok": bool(self.precondition_ok), "pass": bool(self.passed),
        }


def interval_movement_check(
    a_op: SymmetricMatrix,
    b_op: SymmetricMatrix,
    a: float,
    b: float,
    slack: float | None = None,
) -> IntervalMovementReport:
    """Non-negative perturbations slide a spectral-free interval rigidly.

    Preconditions: B >= 0 and (a, b) free of the spectrum of A.  Then
    (a + ||B||, b) must contain no spectrum of A + B; eigenvalues may enter
    only up to the numerical ``slack``.
    """
    dec_a = eigendecompose(a_op)
    scale = max(dec_a.norm, 1e-300)
    if slack is None:
        slack = 1e-9 * scale
    ok_psd, lam_min = _psd_condition(b_op, 1e-12 * scale)
    inside_a = np.any((dec_a.eigenvalues > a + slack) & (dec_a.eigenvalues < b - slack))
    pre_ok = ok_psd and not inside_a
    nb = operator_norm(b_op)
    if not pre_ok:
        return IntervalMovementReport(
            a=a, b=b, norm_b=nb, violations=-1, worst_penetration=np.nan,
            precondition_ok=False, passed=False,
        )
    w = eigendecompose(a_op + b_op).eigenvalues
    lo = a + nb
    inside = (w > lo + slack) & (w < b - slack)
    if np.any(inside):
        pen = np.minimum(w[inside] - lo, b - w[inside])
        worst = float(np.max(pen))
    else:
        worst = 0.0
    return IntervalMovementReport(
        a=a, b=b, norm_b=float(nb), violations=int(np.sum(inside)),
        worst_penetration=worst, precondition_ok=True, passed=bool(not np.any(inside)),
    )


# -- unique continuation on discretized operators -----------------------------


@dataclass(frozen=True, eq=False)
class UcpReport:
    """Per-eigenfunction and form-level unique continuation verification."""

    constant: UcpConstant
    energies: np.ndarray
    ratios: np.ndarray
    min_ratio: float
    form_min: float
    n_prime: float
    n_prime_max: float
    n_prime_mean: float
    n_prime_samples: np.ndarray
    trust_cutoff: float
    used_modes: int
    passed: bool

    def __post_init__(self):
        for name in ("energies", "ratios", "n_prime_samples"):
            getattr(self, name).setflags(write=False)

    def to_json_dict(self) -> dict:
        return {
            "constant": self.constant.to_json_dict(),
            "energies": [float(x) for x in self.energies],
            "ratios": [float(x) for x in self.ratios],
            "min_ratio": self.min_ratio,
            "form_min": self.form_min,
            "n_prime": self.n_prime,
            "n_prime_max": self.n_prime_max,
            "n_prime_mean": self.n_prime_mean,
            "trust_cutoff": self.trust_cutoff,
            "used_modes": self.used_modes,
            "pass": bool(self.passed),
        }


def ucp_verify(
    dec: SpectralDecomposition,
    s: EquidistributedSet,
    potential: PotentialField,
    energy: float,
    exponent_n: float = 10.0,
    trust_factor: float = 0.1,
) -> UcpReport:
    """Mass-fraction and form-compression unique continuation checks.

    For every eigenpair below min(energy, trust cutoff) the restricted mass
    fraction on S must beat the unique-continuation constant, and the
    compression of the S-indicator multiplication operator to the spanned
    subspace must be bounded below by the same constant.  The report carries
    the empirical critical-N probe per sample: the value of N at which the
    certified bound would become tight for that sample.
    """
    grid = s.grid
    dom = s.domain
    const = c_uc(
        dimension=dom.dimension,
        cell_scale=dom.cell_scale,
        delta=s.delta,
        v_min=potential.min_value,
        v_max=potential.max_value,
        energy=energy,
        exponent_n=exponent_n,
    )
    cutoff = trust_factor / (grid.h * grid.h)
    sel = dec.eigenvalues <= min(energy, cutoff)
    energies = dec.eigenvalues[sel].copy()
    vecs = dec.eigenvectors[:, sel]
    ratios = np.empty(int(np.sum(sel)))
    for i in range(len(ratios)):
        psi = vecs[:, i]
        ratios[i] = restricted_mass(psi, s) / total_mass(psi, grid)
    if len(ratios):
        proj = OrthogonalProjector(vecs.copy())
        mask_diag = SymmetricMatrix.from_diagonal(s.mask.astype(float))
        form_min = _compression_min(mask_diag, proj)
        min_ratio = float(np.min(ratios))
    else:
        form_min = np.inf
        min_ratio = np.inf
    log_base = np.log(s.delta / dom.cell_scale)
    with np.errstate(divide="ignore"):
        n_samples = np.log(np.clip(ratios, 1e-300, None)) / (log_base * const.exponent_factor)
    passed = bool(np.all(ratios >= const.value)) and form_min >= const.value
    return UcpReport(
        constant=const,
        energies=energies,
        ratios=ratios,
        min_ratio=min_ratio,
        form_min=float(form_min),
        n_prime=float(np.min(n_samples)) if len(ratios) else np.nan,
        n_prime_max=float(np.max(n_samples)) if len(ratios) else np.nan,
        n_prime_mean=float(np.mean(n_samples)) if len(ratios) else np.nan,
        n_prime_samples=n_samples,
        trust_cutoff=float(cutoff),
        used_modes=int(np.sum(sel)),
        passed=passed,
    )
