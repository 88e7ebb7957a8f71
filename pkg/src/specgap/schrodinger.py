"""Discretized Schrödinger operators -Δ + V on cell-admissible boxes.

The geometry is a d-dimensional box (d = 1 or 2) whose side lengths are
integer multiples of a cell scale G, tiled by complete G-cells.  On top of
it live second-order finite-difference Hamiltonians with Dirichlet or
Neumann boundary conditions, bounded potentials, and equidistributed ball
arrangements: one ball of radius delta per cell, each ball contained in its
cell.

Grid layout
-----------
* Dirichlet: vertex-centered interior nodes  alpha + i*h,  i = 1..L/h-1.
  Boundary values vanish, so the trapezoid rule over the box reduces to
  weight h^d per node, exactly.
* Neumann: cell-centered nodes  alpha + (i+1/2)*h.  Mirrored ghost nodes
  give a symmetric matrix whose constant vector is an exact null vector;
  the midpoint rule again has weight h^d per node.

Construction functions are pure and their products immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import GridError
from .linalg import SymmetricMatrix

__all__ = [
    "AdmissibleDomain",
    "Grid",
    "PotentialField",
    "EquidistributedSet",
    "build_hamiltonian",
    "sample_equidistributed",
    "restricted_mass",
    "total_mass",
]

_INT_TOL = 1e-9


def _as_int(x: float, what: str) -> int:
    n = round(x)
    if abs(x - n) > _INT_TOL * max(1.0, abs(x)):
        raise GridError(f"{what} = {x} is not an integer")
    return int(n)


@dataclass(frozen=True)
class AdmissibleDomain:
    """Box domain with finite extents, each side an integer multiple of the
    cell scale G (so every cell is complete)."""

    bounds: tuple[tuple[float, float], ...]
    cell_scale: float = 1.0

    def __post_init__(self):
        bounds = tuple((float(a), float(b)) for a, b in self.bounds)
        object.__setattr__(self, "bounds", bounds)
        if self.dimension not in (1, 2):
            raise GridError(f"only d in {{1, 2}} is supported, got d={self.dimension}")
        if self.cell_scale <= 0:
            raise GridError("cell scale must be positive")
        for ax, (a, b) in enumerate(bounds):
            if not (np.isfinite(a) and np.isfinite(b)):
                raise GridError("domain extents must be finite")
            if b - a < self.cell_scale - _INT_TOL:
                raise GridError(f"axis {ax}: side length {b - a} is below the cell scale")
            _as_int((b - a) / self.cell_scale, f"axis {ax} side length / cell scale")

    @classmethod
    def interval(cls, a: float, b: float, cell_scale: float = 1.0) -> "AdmissibleDomain":
        return cls(bounds=((a, b),), cell_scale=cell_scale)

    @classmethod
    def box(cls, bounds, cell_scale: float = 1.0) -> "AdmissibleDomain":
        return cls(bounds=tuple(tuple(b) for b in bounds), cell_scale=cell_scale)

    @property
    def dimension(self) -> int:
        return len(self.bounds)

    @property
    def side_lengths(self) -> tuple[float, ...]:
        return tuple(b - a for a, b in self.bounds)

    @property
    def cells_per_axis(self) -> tuple[int, ...]:
        return tuple(_as_int(s / self.cell_scale, "cells per axis") for s in self.side_lengths)

    @property
    def cell_count(self) -> int:
        return int(np.prod(self.cells_per_axis))

    @property
    def volume(self) -> float:
        return float(np.prod(self.side_lengths))


@dataclass(frozen=True)
class Grid:
    """Uniform tensor grid bound to a domain.

    ``resolution`` is the node density h^{-1} (points per unit length); the
    mesh width h = 1/resolution must divide the cell scale G.
    """

    domain: AdmissibleDomain
    resolution: int
    bc: str = "dirichlet"

    def __post_init__(self):
        if self.bc not in ("dirichlet", "neumann"):
            raise GridError(f"unknown boundary condition {self.bc!r}")
        if self.resolution <= 0:
            raise GridError("resolution must be a positive integer")
        _as_int(self.domain.cell_scale * self.resolution, "cell scale / mesh width")
        for ax, count in enumerate(self.node_counts):
            if count < 3:
                raise GridError(
                    f"axis {ax}: only {count} nodes at resolution {self.resolution}; need >= 3"
                )

    @property
    def h(self) -> float:
        return 1.0 / self.resolution

    @property
    def node_counts(self) -> tuple[int, ...]:
        counts = []
        for a, b in self.domain.bounds:
            cells = _as_int((b - a) * self.resolution, "nodes per axis")
            counts.append(cells - 1 if self.bc == "dirichlet" else cells)
        return tuple(counts)

    @property
    def size(self) -> int:
        return int(np.prod(self.node_counts))

    @property
    def quadrature_weight(self) -> float:
        """Trapezoid/midpoint weight per node; exact for both layouts."""
        return self.h ** self.domain.dimension

    def axis_coordinates(self, axis: int) -> np.ndarray:
        a, _ = self.domain.bounds[axis]
        n = self.node_counts[axis]
        if self.bc == "dirichlet":
            return a + self.h * np.arange(1, n + 1)
        return a + self.h * (np.arange(n) + 0.5)

    def coordinates(self) -> np.ndarray:
        """(size, d) array of node coordinates in row-major node order."""
        axes = [self.axis_coordinates(ax) for ax in range(self.domain.dimension)]
        if self.domain.dimension == 1:
            return axes[0][:, None]
        xx, yy = np.meshgrid(axes[0], axes[1], indexing="ij")
        return np.column_stack([xx.ravel(), yy.ravel()])


@dataclass(frozen=True, eq=False)
class PotentialField:
    """Real potential sampled on grid nodes, with cached sup-norm statistics."""

    grid: Grid
    values: np.ndarray
    sup_norm: float = 0.0
    min_value: float = 0.0
    max_value: float = 0.0

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != (self.grid.size,):
            raise GridError(f"potential shape {v.shape} does not match grid size {self.grid.size}")
        v = v.copy()
        v.setflags(write=False)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "min_value", float(v.min()))
        object.__setattr__(self, "max_value", float(v.max()))
        object.__setattr__(self, "sup_norm", float(np.max(np.abs(v))))

    # -- generators -------------------------------------------------------

    @classmethod
    def constant(cls, grid: Grid, c: float) -> "PotentialField":
        return cls(grid, np.full(grid.size, float(c)))

    @classmethod
    def cosine(cls, grid: Grid, amplitude: float = 1.0, period: float | None = None) -> "PotentialField":
        """Single cosine along the first axis: amplitude * cos(2 pi (x-alpha)/period)."""
        if period is None:
            period = grid.domain.cell_scale
        x = grid.coordinates()[:, 0] - grid.domain.bounds[0][0]
        return cls(grid, amplitude * np.cos(2.0 * np.pi * x / period))

    @classmethod
    def cell_random(cls, grid: Grid, amplitude: float, seed: int) -> "PotentialField":
        """Piecewise constant per G-cell, each level uniform in [-amplitude, amplitude]."""
        dom = grid.domain
        rng = np.random.default_rng(seed)
        levels = rng.uniform(-amplitude, amplitude, size=dom.cells_per_axis)
        coords = grid.coordinates()
        idx = []
        for ax in range(dom.dimension):
            a, _ = dom.bounds[ax]
            j = np.floor((coords[:, ax] - a) / dom.cell_scale).astype(int)
            idx.append(np.clip(j, 0, dom.cells_per_axis[ax] - 1))
        return cls(grid, levels[tuple(idx)])

    @classmethod
    def from_csv(cls, grid: Grid, path) -> "PotentialField":
        """Load node values from CSV rows ``i[,j],value`` (0-based node indices)."""
        raw = np.loadtxt(path, delimiter=",", ndmin=2)
        d = grid.domain.dimension
        if raw.shape[1] != d + 1:
            raise GridError(f"expected {d + 1} CSV columns (node index per axis, value), got {raw.shape[1]}")
        values = np.zeros(grid.size)
        filled = np.zeros(grid.size, dtype=bool)
        counts = grid.node_counts
        for row in raw:
            idx = tuple(int(round(row[ax])) for ax in range(d))
            for ax, i in enumerate(idx):
                if not 0 <= i < counts[ax]:
                    raise GridError(f"node index {i} out of range on axis {ax}")
            flat = idx[0] if d == 1 else idx[0] * counts[1] + idx[1]
            values[flat] = row[-1]
            filled[flat] = True
        if not filled.all():
            raise GridError(f"CSV covers {int(filled.sum())} of {grid.size} nodes")
        return cls(grid, values)

    def to_csv(self, path) -> None:
        counts = self.grid.node_counts
        d = self.grid.domain.dimension
        with open(path, "w", encoding="utf-8") as fh:
            for flat, val in enumerate(self.values):
                if d == 1:
                    fh.write(f"{flat},{float(val)!r}\n")
                else:
                    fh.write(f"{flat // counts[1]},{flat % counts[1]},{float(val)!r}\n")


def _laplacian_1d(n: int, h: float, bc: str) -> tuple[np.ndarray, np.ndarray]:
    """Diagonal and off-diagonal of the 1-d finite-difference -d^2/dx^2."""
    inv_h2 = 1.0 / (h * h)
    diag = np.full(n, 2.0 * inv_h2)
    off = np.full(n - 1, -inv_h2)
    if bc == "neumann":
        # mirrored ghost node u_{-1} = u_0 on the cell-centered layout
        diag[0] = inv_h2
        diag[-1] = inv_h2
    return diag, off


def build_hamiltonian(dom: AdmissibleDomain, grid: Grid, potential: PotentialField) -> SymmetricMatrix:
    """H = -Δ + V as a symmetric matrix in row-major node order.

    1-d operators come back in tridiagonal storage (fast eigensolver path);
    2-d operators are dense Kronecker sums.
    """
    if grid.domain != dom:
        raise GridError("grid does not belong to the given domain")
    if potential.grid != grid:
        raise GridError("potential sampled on a different grid")
    d = dom.dimension
    if d == 1:
        n = grid.node_counts[0]
        diag, off = _laplacian_1d(n, grid.h, grid.bc)
        return SymmetricMatrix.tridiagonal(diag + potential.values, off)
    nx, ny = grid.node_counts
    dx, ox = _laplacian_1d(nx, grid.h, grid.bc)
    dy, oy = _laplacian_1d(ny, grid.h, grid.bc)
    tx = np.diag(dx) + np.diag(ox, 1) + np.diag(ox, -1)
    ty = np.diag(dy) + np.diag(oy, 1) + np.diag(oy, -1)
    lap = np.kron(tx, np.eye(ny)) + np.kron(np.eye(nx), ty)
    return SymmetricMatrix(lap + np.diag(potential.values))


@dataclass(frozen=True, eq=False)
class EquidistributedSet:
    """One ball of radius delta per complete G-cell, plus its grid mask.

    ``centers`` maps cell multi-indices to ball centers; ``mask`` marks the
    grid nodes lying within distance delta of some center.
    """

    domain: AdmissibleDomain
    grid: Grid
    delta: float
    centers: np.ndarray  # (cell_count, d)
    mask: np.ndarray     # (grid.size,) bool

    def __post_init__(self):
        for name in ("centers", "mask"):
            arr = getattr(self, name)
            arr.setflags(write=False)

    @property
    def ball_count(self) -> int:
        return self.centers.shape[0]

    @property
    def covered_fraction(self) -> float:
        return float(np.mean(self.mask))


def sample_equidistributed(
    dom: AdmissibleDomain,
    grid: Grid,
    delta: float,
    seed: int,
) -> EquidistributedSet:
    """Draw one center per cell, uniform over the cell shrunk by delta.

    Shrinking keeps every ball strictly inside its own cell; delta -> G/2
    collapses the admissible region to the cell center.  Reproducible from
    the seed.
    """
    g = dom.cell_scale
    if not 0.0 < delta < 0.5 * g:
        raise ValueError(f"delta must lie in (0, G/2) = (0, {0.5 * g}), got {delta}")
    rng = np.random.default_rng(seed)
    d = dom.dimension
    cells = list(product(*(range(m) for m in dom.cells_per_axis)))
    lows = np.array(
        [[dom.bounds[ax][0] + j[ax] * g + delta for ax in range(d)] for j in cells]
    )
    slack = g - 2.0 * delta
    centers = lows + slack * rng.random((len(cells), d))
    coords = grid.coordinates()
    dist2 = np.min(
        np.sum((coords[:, None, :] - centers[None, :, :]) ** 2, axis=2), axis=1
    )
    mask = dist2 <= delta * delta
    return EquidistributedSet(domain=dom, grid=grid, delta=float(delta), centers=centers, mask=mask)


def restricted_mass(psi: np.ndarray, s: EquidistributedSet) -> float:
    """Quadrature of |psi|^2 over the masked nodes (weight h^d per node)."""
    psi = np.asarray(psi, dtype=float)
    if psi.shape != (s.grid.size,):
        raise GridError(f"state shape {psi.shape} does not match grid size {s.grid.size}")
    return float(s.grid.quadrature_weight * np.sum(psi[s.mask] ** 2))


def total_mass(psi: np.ndarray, grid: Grid) -> float:
    """Quadrature of |psi|^2 over the whole box."""
    psi = np.asarray(psi, dtype=float)
    if psi.shape != (grid.size,):
        raise GridError(f"state shape {psi.shape} does not match grid size {grid.size}")
    return float(grid.quadrature_weight * np.sum(psi ** 2))
