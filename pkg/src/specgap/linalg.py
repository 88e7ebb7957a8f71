"""Dense/banded symmetric eigensolvers, spectral projectors, and subspace norms.

Everything downstream (Hamiltonians, gap enumeration, lifting certificates,
Bloch fibers) runs through the operations in this module.  All types are
immutable after construction and every operation is a pure function, so the
module is safe to drive from concurrent sweeps.

Conventions
-----------
* Eigenvalues are always returned non-decreasing.
* Eigenvector signs are fixed: the largest-magnitude entry of each column is
  made positive (first such entry on ties), so decompositions are
  reproducible bit-for-bit across runs.
* Spectral intervals default to the half-open form (lo, hi].  Eigenvalues
  within ``snap`` of an endpoint are treated as sitting exactly on it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import EigensolverError

__all__ = [
    "SymmetricMatrix",
    "HermitianMatrix",
    "SpectralDecomposition",
    "OrthogonalProjector",
    "SpectralInterval",
    "eigendecompose",
    "spectral_projector",
    "operator_norm",
    "principal_angle_norm",
]


class SymmetricMatrix:
    """Real symmetric matrix; symmetry holds exactly by construction.

    Only the lower triangle of the input is consulted, the upper triangle is
    its mirror image, so ``mat`` is bitwise symmetric.  Tridiagonal matrices
    keep their ``(diag, off)`` representation and are routed to the
    bisection + inverse-iteration solver.
    """

    __slots__ = ("mat", "n", "diag", "off")

    def __init__(self, dense):
        a = np.array(dense, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {a.shape}")
        lower = np.tril(a)
        self.mat = lower + np.tril(a, -1).T
        self.mat.setflags(write=False)
        self.n = a.shape[0]
        self.diag = None
        self.off = None

    @classmethod
    def tridiagonal(cls, diag, off) -> "SymmetricMatrix":
        diag = np.asarray(diag, dtype=float)
        off = np.asarray(off, dtype=float)
        if off.shape[0] != diag.shape[0] - 1:
            raise ValueError("off-diagonal must have length n-1")
        obj = cls.__new__(cls)
        obj.n = diag.shape[0]
        obj.diag = diag.copy()
        obj.off = off.copy()
        mat = np.diag(diag) + np.diag(off, 1) + np.diag(off, -1)
        mat.setflags(write=False)
        obj.mat = mat
        obj.diag.setflags(write=False)
        obj.off.setflags(write=False)
        return obj

    @classmethod
    def from_diagonal(cls, diag) -> "SymmetricMatrix":
        diag = np.asarray(diag, dtype=float)
        return cls.tridiagonal(diag, np.zeros(len(diag) - 1)) if len(diag) > 1 else cls(np.diag(diag))

    @classmethod
    def identity(cls, n: int) -> "SymmetricMatrix":
        return cls.from_diagonal(np.ones(n))

    @property
    def is_tridiagonal(self) -> bool:
        return self.diag is not None

    @property
    def bandwidth(self) -> int:
        if self.is_tridiagonal:
            return 1 if np.any(self.off != 0.0) else 0
        m = self.mat
        for b in range(self.n - 1, 0, -1):
            if np.any(np.diag(m, -b) != 0.0):
                return b
        return 0

    def __add__(self, other):
        if isinstance(other, SymmetricMatrix):
            if self.is_tridiagonal and other.is_tridiagonal:
                return SymmetricMatrix.tridiagonal(self.diag + other.diag, self.off + other.off)
            return SymmetricMatrix(self.mat + other.mat)
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, SymmetricMatrix):
            return self + (-1.0) * other
        return NotImplemented

    def __rmul__(self, scalar):
        scalar = float(scalar)
        if self.is_tridiagonal:
            return SymmetricMatrix.tridiagonal(scalar * self.diag, scalar * self.off)
        return SymmetricMatrix(scalar * self.mat)

    def shift(self, c: float) -> "SymmetricMatrix":
        """Return self + c*I."""
        if self.is_tridiagonal:
            return SymmetricMatrix.tridiagonal(self.diag + c, self.off)
        return SymmetricMatrix(self.mat + c * np.eye(self.n))

    def add_diagonal(self, d) -> "SymmetricMatrix":
        d = np.asarray(d, dtype=float)
        if self.is_tridiagonal:
            return SymmetricMatrix.tridiagonal(self.diag + d, self.off)
        return SymmetricMatrix(self.mat + np.diag(d))

    def __matmul__(self, x):
        return self.mat @ x

    def quad_form(self, x) -> float:
        """<x, A x> for a single vector x."""
        return float(np.dot(x, self.mat @ x))

    def __repr__(self):
        kind = "tridiagonal" if self.is_tridiagonal else "dense"
        return f"SymmetricMatrix(n={self.n}, {kind})"


class HermitianMatrix:
    """Dense complex Hermitian matrix (conjugate symmetry by construction)."""

    __slots__ = ("mat", "n")

    def __init__(self, dense):
        a = np.array(dense, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {a.shape}")
        self.mat = 0.5 * (a + a.conj().T)
        self.mat.setflags(write=False)
        self.n = a.shape[0]

    @property
    def is_real(self) -> bool:
        """True when the imaginary part is negligible (<= 1e-14 relative);
        dropping it then moves eigenvalues by less than the solver contract."""
        scale = float(np.max(np.abs(self.mat))) or 1.0
        return float(np.max(np.abs(self.mat.imag))) <= 1e-14 * scale

    def embed_real(self) -> SymmetricMatrix:
        """Real-symmetric embedding [[X, -Y], [Y, X]] of X + iY.

        Each eigenvalue of the Hermitian matrix appears twice in the
        embedding, so the sorted embedded spectrum at even indices is the
        sorted Hermitian spectrum.
        """
        x = self.mat.real
        y = self.mat.imag
        return SymmetricMatrix(np.block([[x, -y], [y, x]]))

    def eigenvalues(self) -> np.ndarray:
        """Non-decreasing eigenvalues, computed through the real embedding."""
        if self.is_real:
            return eigendecompose(SymmetricMatrix(self.mat.real)).eigenvalues
        return eigendecompose(self.embed_real()).eigenvalues[::2]


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Full eigensystem of a symmetric matrix.

    ``eigenvalues`` are non-decreasing; column k of ``eigenvectors`` pairs
    with ``eigenvalues[k]``.  ``norm`` is the spectral norm max|lambda|.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    matrix: SymmetricMatrix

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    @property
    def norm(self) -> float:
        return float(np.max(np.abs(self.eigenvalues))) if self.n else 0.0

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.T

    def residual(self) -> float:
        """max_k ||A v_k - lambda_k v_k||, the defining accuracy invariant."""
        r = self.matrix.mat @ self.eigenvectors - self.eigenvectors * self.eigenvalues
        return float(np.max(np.linalg.norm(r, axis=0)))

    def orthonormality_defect(self) -> float:
        v = self.eigenvectors
        return float(np.max(np.abs(v.T @ v - np.eye(self.n))))


@dataclass(frozen=True, eq=False)
class OrthogonalProjector:
    """Rank-revealing projector: n-by-r matrix with orthonormal columns."""

    basis: np.ndarray

    def __post_init__(self):
        if self.basis.ndim != 2:
            raise ValueError("basis must be a 2-d array")
        self.basis.setflags(write=False)

    @classmethod
    def from_span(cls, columns, tol: float = 1e-12) -> "OrthogonalProjector":
        """Orthonormalize the given (possibly rank-deficient) columns."""
        m = np.atleast_2d(np.asarray(columns, dtype=float))
        if m.shape[1] == 0:
            return cls(np.zeros((m.shape[0], 0)))
        u, s, _ = np.linalg.svd(m, full_matrices=False)
        rank = int(np.sum(s > tol * max(1.0, s[0] if len(s) else 0.0)))
        return cls(u[:, :rank].copy())

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def rank(self) -> int:
        return self.basis.shape[1]

    def matrix(self) -> np.ndarray:
        return self.basis @ self.basis.T

    def complement(self) -> "OrthogonalProjector":
        """Projector onto the orthogonal complement of the range."""
        n, r = self.basis.shape
        if r == 0:
            return OrthogonalProjector(np.eye(n))
        # full SVD of the basis exposes the null space of P in its tail
        u, _, _ = np.linalg.svd(self.basis, full_matrices=True)
        return OrthogonalProjector(u[:, r:].copy())

    def compress(self, a) -> np.ndarray:
        """Compression B^T A B of an operator to the range."""
        m = a.mat if isinstance(a, SymmetricMatrix) else np.asarray(a, dtype=float)
        return self.basis.T @ m @ self.basis

    def apply(self, x) -> np.ndarray:
        return self.basis @ (self.basis.T @ x)


@dataclass(frozen=True)
class SpectralInterval:
    """Real interval with per-endpoint open/closed flags.

    The library default is the half-open convention (lo, hi]; use the
    constructors for the common cases.
    """

    lo: float = -np.inf
    hi: float = np.inf
    lo_closed: bool = False
    hi_closed: bool = True

    @classmethod
    def up_to(cls, e: float) -> "SpectralInterval":
        """(-inf, e] — the sub-level interval of a spectral projector."""
        return cls(-np.inf, e, False, True)

    @classmethod
    def above(cls, e: float) -> "SpectralInterval":
        """(e, inf) — complement of up_to(e)."""
        return cls(e, np.inf, False, False)

    @classmethod
    def half_open(cls, lo: float, hi: float) -> "SpectralInterval":
        return cls(lo, hi, False, True)

    @classmethod
    def closed(cls, lo: float, hi: float) -> "SpectralInterval":
        return cls(lo, hi, True, True)

    def member_mask(self, values: np.ndarray, snap: float = 0.0) -> np.ndarray:
        """Membership of each value, snapping values within ``snap`` of an
        endpoint onto that endpoint before the open/closed test."""
        v = np.asarray(values, dtype=float)
        if np.isfinite(self.lo):
            lo_ok = v >= self.lo - snap if self.lo_closed else v > self.lo + snap
        else:
            lo_ok = np.ones_like(v, dtype=bool)
        if np.isfinite(self.hi):
            hi_ok = v <= self.hi + snap if self.hi_closed else v < self.hi - snap
        else:
            hi_ok = np.ones_like(v, dtype=bool)
        return lo_ok & hi_ok


def _fix_signs(vectors: np.ndarray) -> np.ndarray:
    """Make the largest-magnitude entry of each column positive (ties: first)."""
    idx = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[idx, np.arange(vectors.shape[1])])
    signs[signs == 0.0] = 1.0
    return vectors * signs


def eigendecompose(a: SymmetricMatrix) -> SpectralDecomposition:
    """Full eigendecomposition with deterministic eigenvector signs.

    Dense matrices go through LAPACK ``syevd``; tridiagonal matrices through
    bisection + inverse iteration (``stebz``/``stein``), which is the natural
    path for 1-d grid operators.
    """
    if not isinstance(a, SymmetricMatrix):
        a = SymmetricMatrix(a)
    try:
        if a.is_tridiagonal and a.n >= 3:
            w, v = eigh_tridiagonal(a.diag, a.off, lapack_driver="stebz")
        else:
            w, v = np.linalg.eigh(a.mat)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure path
        index = None
        digits = "".join(ch for ch in str(exc) if ch.isdigit())
        if digits:
            index = int(digits)
        raise EigensolverError(f"eigensolver failed to converge: {exc}", index=index) from exc
    order = np.argsort(w, kind="stable")
    w = np.ascontiguousarray(w[order])
    v = _fix_signs(np.ascontiguousarray(v[:, order]))
    w.setflags(write=False)
    v.setflags(write=False)
    return SpectralDecomposition(eigenvalues=w, eigenvectors=v, matrix=a)


def spectral_projector(
    dec: SpectralDecomposition,
    interval: SpectralInterval,
    snap: float | None = None,
) -> OrthogonalProjector:
    """Projector onto the span of eigenvectors with eigenvalues in ``interval``.

    Rank equals the eigenvalue count in the interval; membership is decided
    on eigenvalues (never on individual vectors), so degenerate clusters are
    kept or dropped as a whole.  ``snap`` defaults to 1e-12 * ||A||.
    """
    if snap is None:
        snap = 1e-12 * dec.norm
    mask = interval.member_mask(dec.eigenvalues, snap=snap)
    return OrthogonalProjector(dec.eigenvectors[:, mask].copy())


def projector_up_to(dec: SpectralDecomposition, e: float, snap: float | None = None) -> OrthogonalProjector:
    """Spectral projector for energies <= e."""
    return spectral_projector(dec, SpectralInterval.up_to(e), snap=snap)


def operator_norm(a, rtol: float = 1e-11, max_iter: int = 50000) -> float:
    """Largest singular value by power iteration on A^T A.

    Deterministic: the start vector comes from a fixed-seed generator.  The
    returned value is accurate to a relative 1e-8 or better; the stopping
    rule is one decade tighter than that target.
    """
    m = a.mat if isinstance(a, SymmetricMatrix) else np.asarray(a, dtype=float)
    if m.size == 0:
        return 0.0
    if not np.any(m):
        return 0.0
    v = np.random.default_rng(0x5EC7).standard_normal(m.shape[1])
    v /= np.linalg.norm(v)
    sigma = 0.0
    for _ in range(max_iter):
        y = m @ v
        z = m.T @ y
        nz = np.linalg.norm(z)
        if nz == 0.0:
            return 0.0
        new_sigma = float(np.sqrt(np.dot(v, z)))  # Rayleigh quotient of A^T A
        v = z / nz
        if abs(new_sigma - sigma) <= rtol * new_sigma:
            return new_sigma
        sigma = new_sigma
    return sigma


def principal_angle_norm(p: OrthogonalProjector, q: OrthogonalProjector) -> float:
    """||P - Q|| for two orthogonal projectors.

    Equals the sine of the largest principal angle between the ranges when
    the ranks agree; it is the plain operator norm of the difference
    otherwise.  Always lies in [0, 1].
    """
    if p.dim != q.dim:
        raise ValueError(f"ambient dimensions differ: {p.dim} vs {q.dim}")
    value = operator_norm(p.matrix() - q.matrix())
    return min(value, 1.0)
