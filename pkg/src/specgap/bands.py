"""Bloch band structure of 1-d periodic operators and edge tracing.

The spectrum of a periodic -d^2/dx^2 + V on the line is the union over the
quasimomentum theta of the eigenvalues of the cell operator with twisted
boundary conditions.  The fiber here is assembled in a plane-wave basis
(diagonal kinetic part plus a Toeplitz block of Fourier coefficients of V),
which reproduces the free bands exactly and converges spectrally for smooth
potentials.  Complex Hermitian fibers are embedded into real-symmetric
matrices of doubled size so everything runs through the real eigensolver;
for real V the fibers at theta and 2 pi - theta coincide, and band extrema
sit at theta = 0 or pi.

Two independent routes cross-check each other: the fiber eigensolves, and
the Hill discriminant (trace of the period map of -u'' + V u = E u,
integrated with fixed-step RK4).  An energy lies in a band exactly when the
discriminant lies in [-2, 2].

Edge tracing couples the cell operator to a non-negative perturbation,
H + t W, and follows the two gap edges over a coupling grid, checking the
two-sided slope sandwich: kappa * dt <= edge increment <= ||W||_inf * dt.
To keep the upper bound rigorous for the discretized family, the W block
uses exact Fourier coefficients of the piecewise-constant sample function
with Fejer weights, so the realized multiplication operator has numerical
range inside [min W, max W] (no truncation overshoot).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GridError
from .lifting import UcpConstant, kappa as kappa_fn
from .linalg import HermitianMatrix
from .schrodinger import EquidistributedSet, PotentialField

__all__ = [
    "BlochFiber",
    "BandFunctions",
    "bloch_fiber",
    "compute_bands",
    "HillDiscriminant",
    "discriminant",
    "EdgeTrace",
    "trace_edges",
]


def _cell_samples(v_cell) -> tuple[np.ndarray, np.ndarray, float]:
    """Extract (values, coordinates, period) from a cell potential.

    Accepts a PotentialField on a 1-d grid or a plain array (then read as
    uniform samples of one period of length 1).
    """
    if isinstance(v_cell, PotentialField):
        grid = v_cell.grid
        if grid.domain.dimension != 1:
            raise GridError("band structure needs a 1-d cell")
        a, b = grid.domain.bounds[0]
        return v_cell.values, grid.coordinates()[:, 0] - a, b - a
    values = np.asarray(v_cell, dtype=float)
    n = len(values)
    return values, np.arange(n) / n, 1.0


def fourier_coefficients(values: np.ndarray, coords: np.ndarray, period: float, n_modes: int) -> np.ndarray:
    """DFT-based Fourier coefficients c_k, k = -n_modes..n_modes, of the
    trigonometric interpolant through uniform samples at ``coords``."""
    n = len(values)
    k = np.arange(-n_modes, n_modes + 1)
    phases = np.exp(-2j * np.pi * np.outer(k, coords) / period)
    return phases @ values / n


def piecewise_constant_coefficients(
    values: np.ndarray, coords: np.ndarray, period: float, n_modes: int, fejer: bool = True
) -> np.ndarray:
    """Exact Fourier coefficients of the piecewise-constant extension of the
    samples (each sample owns the cell of width h around its node), with
    optional Fejer weights.

    Fejer weighting makes the reconstructed function a convex average of
    translates, so its range stays inside [min values, max values]; that is
    what keeps perturbation slopes below the true sup-norm.
    """
    n = len(values)
    h = period / n
    k = np.arange(-n_modes, n_modes + 1)
    phases = np.exp(-2j * np.pi * np.outer(k, coords) / period)
    coeff = phases @ values / n
    # multiply by sinc(pi k h / period): the exact cell-average factor
    x = np.pi * k * h / period
    sinc = np.ones_like(x)
    nz = x != 0
    sinc[nz] = np.sin(x[nz]) / x[nz]
    coeff = coeff * sinc
    if fejer:
        coeff = coeff * (1.0 - np.abs(k) / (n_modes + 1.0))
    return coeff


def evaluate_trig_series(coeff: np.ndarray, period: float, x: np.ndarray) -> np.ndarray:
    """Real part of sum_k c_k exp(2 pi i k x / period)."""
    n_modes = (len(coeff) - 1) // 2
    k = np.arange(-n_modes, n_modes + 1)
    phases = np.exp(2j * np.pi * np.outer(np.atleast_1d(x), k) / period)
    return np.real(phases @ coeff)


@dataclass(frozen=True, eq=False)
class BlochFiber:
    """Cell operator at one quasimomentum, in the plane-wave basis."""

    theta: float
    matrix: HermitianMatrix
    eigenvalues: np.ndarray

    def __post_init__(self):
        self.eigenvalues.setflags(write=False)


def _fiber_matrix(theta: float, period: float, v_coeff: np.ndarray) -> HermitianMatrix:
    n_modes = (len(v_coeff) - 1) // 2
    m = np.arange(-n_modes, n_modes + 1)
    kin = ((theta + 2.0 * np.pi * m) / period) ** 2
    size = 2 * n_modes + 1
    ham = np.zeros((size, size), dtype=complex)
    # Toeplitz fill: entry (i, j) couples modes m_i, m_j through c_{m_i - m_j}
    diff = m[:, None] - m[None, :]
    inside = np.abs(diff) <= n_modes
    ham[inside] = v_coeff[diff[inside] + n_modes]
    ham[~inside] = 0.0
    ham[np.arange(size), np.arange(size)] += kin
    return HermitianMatrix(ham)


def bloch_fiber(v_cell, theta: float, n_modes: int = 32) -> BlochFiber:
    """Cell operator at one quasimomentum with its eigenvalues."""
    values, coords, period = _cell_samples(v_cell)
    coeff = fourier_coefficients(values, coords, period, n_modes)
    mat = _fiber_matrix(theta, period, coeff)
    return BlochFiber(theta=float(theta), matrix=mat, eigenvalues=mat.eigenvalues())


@dataclass(frozen=True, eq=False)
class BandFunctions:
    """Band energies over the quasimomentum grid.

    ``energies[i, n]`` is the n-th eigenvalue at theta grid point i; bands
    are ordered pointwise, so they may touch but never cross in order.
    """

    thetas: np.ndarray
    energies: np.ndarray
    period: float

    def __post_init__(self):
        self.thetas.setflags(write=False)
        self.energies.setflags(write=False)

    @property
    def n_bands(self) -> int:
        return self.energies.shape[1]

    def band_interval(self, n: int) -> tuple[float, float]:
        return (float(self.energies[:, n].min()), float(self.energies[:, n].max()))

    def band_intervals(self) -> list[tuple[float, float]]:
        return [self.band_interval(n) for n in range(self.n_bands)]

    def gaps(self, min_width: float = 0.0) -> list[tuple[float, float]]:
        """Open spectral gaps between consecutive bands."""
        out = []
        for n in range(self.n_bands - 1):
            top = self.band_interval(n)[1]
            bottom = self.band_interval(n + 1)[0]
            if bottom - top > min_width:
                out.append((top, bottom))
        return out

    def all_values(self) -> np.ndarray:
        return self.energies.ravel()


def compute_bands(
    v_cell,
    n_modes: int = 32,
    theta_count: int = 512,
    n_bands: int = 8,
) -> BandFunctions:
    """Band functions of -d^2/dx^2 + V over one period.

    theta runs over a uniform grid of [0, 2 pi); an even count puts both
    theta = 0 and theta = pi on the grid, where the band extrema of a real
    potential sit, so band edges carry no quasimomentum sampling error.
    """
    if theta_count < 16:
        raise ValueError("need at least 16 quasimomentum samples")
    values, coords, period = _cell_samples(v_cell)
    if len(values) < 2 * n_modes + 1:
        raise GridError(
            f"cell grid with {len(values)} nodes cannot resolve {n_modes} modes"
        )
    v_coeff = fourier_coefficients(values, coords, period, n_modes)
    thetas = 2.0 * np.pi * np.arange(theta_count) / theta_count
    n_bands = min(n_bands, 2 * n_modes + 1)
    energies = np.empty((theta_count, n_bands))
    for i, th in enumerate(thetas):
        fiber = _fiber_matrix(th, period, v_coeff)
        energies[i] = fiber.eigenvalues()[:n_bands]
    return BandFunctions(thetas=thetas, energies=energies, period=period)


class HillDiscriminant:
    """Trace of the period map of -u'' + V u = E u via fixed-step RK4.

    |D(E)| <= 2 exactly when E lies in a band (up to integration error).
    The potential is evaluated through the trigonometric interpolant of its
    samples, pre-tabulated at the RK4 nodes, so each call costs one scalar
    RK4 sweep.
    """

    def __init__(self, v_cell, steps: int = 1024, n_modes: int | None = None):
        values, coords, period = _cell_samples(v_cell)
        if n_modes is None:
            n_modes = min((len(values) - 1) // 2, 128)
        coeff = fourier_coefficients(values, coords, period, n_modes)
        self.period = period
        self.steps = steps
        h = period / steps
        xs = np.arange(2 * steps + 1) * (0.5 * h)  # nodes and midpoints
        self._v = evaluate_trig_series(coeff, period, xs)
        self._h = h

    def __call__(self, energy: float) -> float:
        h = self._h
        v = self._v
        # propagate the 2x2 fundamental system (u, u') for both basis solutions
        a, b = 1.0, 0.0   # u1, u1'
        c, d = 0.0, 1.0   # u2, u2'
        for i in range(self.steps):
            q0 = v[2 * i] - energy
            qm = v[2 * i + 1] - energy
            q1 = v[2 * i + 2] - energy
            # RK4 for y' = (u', q u)
            k1a, k1b = b, q0 * a
            k1c, k1d = d, q0 * c
            ya, yb = a + 0.5 * h * k1a, b + 0.5 * h * k1b
            yc, yd = c + 0.5 * h * k1c, d + 0.5 * h * k1d
            k2a, k2b = yb, qm * ya
            k2c, k2d = yd, qm * yc
            ya, yb = a + 0.5 * h * k2a, b + 0.5 * h * k2b
            yc, yd = c + 0.5 * h * k2c, d + 0.5 * h * k2d
            k3a, k3b = yb, qm * ya
            k3c, k3d = yd, qm * yc
            ya, yb = a + h * k3a, b + h * k3b
            yc, yd = c + h * k3c, d + h * k3d
            k4a, k4b = yb, q1 * ya
            k4c, k4d = yd, q1 * yc
            a += h * (k1a + 2.0 * k2a + 2.0 * k3a + k4a) / 6.0
            b += h * (k1b + 2.0 * k2b + 2.0 * k3b + k4b) / 6.0
            c += h * (k1c + 2.0 * k2c + 2.0 * k3c + k4c) / 6.0
            d += h * (k1d + 2.0 * k2d + 2.0 * k3d + k4d) / 6.0
        return a + d

    def edge_near(self, energy: float, half_width: float = 0.5) -> float:
        """Root of |D| = 2 closest to ``energy``.

        Band edges adjacent to narrow gaps are near-tangencies of D and
        +/-2, so the bracket scan zooms adaptively onto the smallest
        |D - target| until it straddles a sign change.
        """
        from scipy.optimize import brentq

        target = 2.0 if self(energy) >= 0 else -2.0

        def f(e):
            return self(e) - target

        center, half = energy, half_width
        for _ in range(8):
            grid = np.linspace(center - half, center + half, 81)
            vals = np.array([f(e) for e in grid])
            roots = []
            for i in range(len(grid) - 1):
                if vals[i] == 0.0:
                    roots.append(float(grid[i]))
                elif vals[i] * vals[i + 1] < 0:
                    roots.append(float(brentq(f, grid[i], grid[i + 1], xtol=1e-12)))
            if roots:
                return min(roots, key=lambda r: abs(r - energy))
            center = float(grid[np.argmin(np.abs(vals))])
            half /= 25.0
        raise ValueError(f"no band edge of the discriminant within {half_width} of {energy}")


def discriminant(v_cell, energy: float, steps: int = 1024) -> float:
    """One-shot Hill discriminant D(E); build HillDiscriminant for sweeps."""
    return HillDiscriminant(v_cell, steps=steps)(energy)


@dataclass(frozen=True, eq=False)
class EdgeTrace:
    """Edges of one spectral gap followed over a coupling grid.

    ``f_minus`` is the windowed supremum of spectrum below the gap,
    ``f_plus`` the windowed infimum above; slopes are per-step increments
    divided by the step.  ``t_window`` is the admissible coupling window
    (gap width over the perturbation norm, halved for indefinite W).
    """

    t_values: np.ndarray
    f_minus: np.ndarray
    f_plus: np.ndarray
    kappa_value: float
    w_sup: float
    theta_eff: float
    gap: tuple[float, float]
    t_window: float
    indefinite: bool
    truncated_at: int | None
    sandwich_ok: bool
    lipschitz_ok: bool

    def __post_init__(self):
        for name in ("t_values", "f_minus", "f_plus"):
            getattr(self, name).setflags(write=False)

    @property
    def slopes_minus(self) -> np.ndarray:
        return np.diff(self.f_minus) / np.diff(self.t_values)

    @property
    def slopes_plus(self) -> np.ndarray:
        return np.diff(self.f_plus) / np.diff(self.t_values)

    @property
    def passed(self) -> bool:
        return self.lipschitz_ok and (self.indefinite or self.sandwich_ok) and self.truncated_at is None

    def csv_rows(self) -> list[str]:
        rows = ["t,f_minus,f_plus,slope_minus,slope_plus,kappa,pass"]
        sm = self.slopes_minus
        sp = self.slopes_plus
        for i, t in enumerate(self.t_values):
            a = repr(float(sm[i - 1])) if i > 0 else ""
            b = repr(float(sp[i - 1])) if i > 0 else ""
            rows.append(
                f"{float(t)!r},{float(self.f_minus[i])!r},{float(self.f_plus[i])!r},"
                f"{a},{b},{self.kappa_value!r},{'pass' if self.passed else 'fail'}"
            )
        return rows


def trace_edges(
    v_cell,
    w_cell,
    s: EquidistributedSet | None,
    gap: tuple[float, float],
    t_values,
    kappa_value: float | None = None,
    exponent_n: float = 10.0,
    n_modes: int = 32,
    theta_count: int = 64,
    n_bands: int = 8,
    indefinite: bool = False,
    slope_tol: float = 1e-9,
) -> EdgeTrace:
    """Follow both edges of a spectral gap of -d'' + V + t W over t.

    Preconditions: for the definite case W >= 0 with W >= theta_eff 1_S for a
    positive theta_eff (derived as the minimum of W over S); the coupling
    grid must stay inside [0, t0) with t0 = gap width / ||W||_inf (halved
    when ``indefinite``).  Each step must satisfy

        kappa * dt <= f(t + dt) - f(t) <= ||W||_inf * dt      (definite)
        |f(t + dt) - f(t)| <= ||W||_inf * dt                  (always)

    If ``kappa_value`` is omitted it is computed from the gap data at energy
    2 b - a with the perturbation allowance t0 ||W||_inf added to the
    potential deviation.  If the gap closes inside the window the trace is
    truncated and flagged.
    """
    a, b = float(gap[0]), float(gap[1])
    if b <= a:
        raise ValueError("gap must be a nonempty interval (a, b)")
    v_values, v_coords, period = _cell_samples(v_cell)
    w_values, w_coords, period_w = _cell_samples(w_cell)
    if abs(period - period_w) > 1e-12:
        raise GridError("V and W are sampled on different periods")
    w_sup = float(np.max(np.abs(w_values)))
    if w_sup == 0.0:
        raise ValueError("W vanishes identically")
    w_min = float(np.min(w_values))
    if not indefinite and w_min < -1e-12 * w_sup:
        raise ValueError(f"W has negative values (min {w_min}); pass indefinite=True to allow")

    t_window = (b - a) / ((2.0 if indefinite else 1.0) * w_sup)
    t_values = np.asarray(t_values, dtype=float)
    if np.any(t_values < 0.0) or np.any(np.diff(t_values) <= 0.0):
        raise ValueError("coupling grid must be increasing and non-negative")
    if t_values[-1] >= t_window:
        raise ValueError(
            f"coupling grid leaves the admissible window [0, {t_window}); largest t = {t_values[-1]}"
        )

    v_coeff = fourier_coefficients(v_values, v_coords, period, n_modes)
    w_coeff = piecewise_constant_coefficients(w_values, w_coords, period, n_modes, fejer=True)

    # realized perturbation: range of the Fejer-smoothed W on a fine grid
    fine = np.linspace(0.0, period, 4096, endpoint=False)
    w_realized = evaluate_trig_series(w_coeff, period, fine)
    w_sup_eff = float(np.max(np.abs(w_realized)))
    if s is not None:
        centers = s.centers[:, 0] - s.domain.bounds[0][0]
        on_s = np.zeros_like(fine, dtype=bool)
        for z in centers:
            on_s |= np.abs((fine - z + 0.5 * period) % period - 0.5 * period) <= s.delta
        theta_eff = float(np.min(w_realized[on_s])) if np.any(on_s) else 0.0
    else:
        theta_eff = max(w_min, 0.0)

    if kappa_value is None:
        if s is None:
            raise ValueError("either kappa_value or the equidistributed set must be given")
        if theta_eff <= 0.0:
            raise ValueError("realized perturbation is not positive on S; cannot derive kappa")
        const: UcpConstant = kappa_fn(
            dimension=1,
            cell_scale=s.domain.cell_scale,
            delta=s.delta,
            theta=theta_eff,
            v_min=float(np.min(v_values)),
            v_max=float(np.max(v_values)),
            w_sup=t_window * w_sup,
            energy=2.0 * b - a,
            exponent_n=exponent_n,
        )
        kappa_value = const.value

    f_minus = np.empty(len(t_values))
    f_plus = np.empty(len(t_values))
    truncated_at = None
    thetas = 2.0 * np.pi * np.arange(theta_count) / theta_count
    # spectrum riding exactly on a window boundary (the band top sits on
    # a + t ||W|| for constant W; the upper band bottom sits on b at t = 0)
    # must stay excluded despite round-off, so both windows carry a guard;
    # the guard only matters within 1e-9 of the window ends, far outside
    # any admissible coupling grid
    guard = 1e-9 * max(1.0, abs(a), abs(b))
    for i, t in enumerate(t_values):
        coeff_t = v_coeff + t * w_coeff
        vals = []
        for th in thetas:
            fiber = _fiber_matrix(th, period, coeff_t)
            vals.append(fiber.eigenvalues()[: n_bands])
        all_vals = np.concatenate(vals)
        upper_window = b - (t * w_sup if indefinite else 0.0) - guard
        below = all_vals[all_vals < upper_window]
        above = all_vals[all_vals > a + t * w_sup + guard]
        if len(below) == 0 or len(above) == 0 or np.max(below) >= np.min(above):
            truncated_at = i
            f_minus = f_minus[:i]
            f_plus = f_plus[:i]
            t_values = t_values[:i]
            break
        f_minus[i] = float(np.max(below))
        f_plus[i] = float(np.min(above))

    dt = np.diff(t_values)
    dfm = np.diff(f_minus)
    dfp = np.diff(f_plus)
    lips = bool(np.all(np.abs(dfm) <= w_sup * dt + slope_tol)) and bool(
        np.all(np.abs(dfp) <= w_sup * dt + slope_tol)
    )
    sandwich = bool(
        np.all(dfm >= kappa_value * dt - slope_tol)
        and np.all(dfm <= w_sup * dt + slope_tol)
        and np.all(dfp >= kappa_value * dt - slope_tol)
        and np.all(dfp <= w_sup * dt + slope_tol)
    )
    return EdgeTrace(
        t_values=t_values.copy(),
        f_minus=f_minus,
        f_plus=f_plus,
        kappa_value=float(kappa_value),
        w_sup=w_sup,
        theta_eff=theta_eff,
        gap=(a, b),
        t_window=float(t_window),
        indefinite=indefinite,
        truncated_at=truncated_at,
        sandwich_ok=sandwich,
        lipschitz_ok=lips,
    )
