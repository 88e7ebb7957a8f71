#!/usr/bin/env python3
"""Discretized Schrödinger spectra, projectors, and norms.

Builds -d^2/dx^2 + V on an interval with both boundary conditions, checks
the eigensolver contracts, and plays with spectral projectors.

Run:  python3 demos/01_spectra_and_projectors.py
"""

import numpy as np

from specgap import (
    AdmissibleDomain,
    Grid,
    PotentialField,
    SpectralInterval,
    build_hamiltonian,
    eigendecompose,
    operator_norm,
    principal_angle_norm,
    spectral_projector,
)

print("=" * 64)
print("  1. Dirichlet spectrum of -u'' on (0, 1)")
print("=" * 64)
dom = AdmissibleDomain.interval(0.0, 1.0)
grid = Grid(dom, 512, "dirichlet")
ham = build_hamiltonian(dom, grid, PotentialField.constant(grid, 0.0))
dec = eigendecompose(ham)
print(f"  grid: {grid.size} interior nodes, h = {grid.h}")
for n in range(5):
    exact = ((n + 1) * np.pi) ** 2
    rel = abs(dec.eigenvalues[n] - exact) / exact
    print(f"  lambda_{n + 1} = {dec.eigenvalues[n]:12.6f}   (n pi)^2 = {exact:12.6f}   rel err {rel:.2e}")
print(f"  residual / ||H||     = {dec.residual() / dec.norm:.2e}")
print(f"  orthonormality defect = {dec.orthonormality_defect():.2e}")

print()
print("=" * 64)
print("  2. Neumann zero mode")
print("=" * 64)
gridn = Grid(dom, 128, "neumann")
decn = eigendecompose(build_hamiltonian(dom, gridn, PotentialField.constant(gridn, 0.0)))
print(f"  lambda_1 = {decn.eigenvalues[0]:+.3e} (exactly 0 in theory)")
print(f"  ground state spread over nodes: {np.ptp(decn.eigenvectors[:, 0]):.2e} (constant vector)")

print()
print("=" * 64)
print("  3. Spectral projectors and the Weyl bound")
print("=" * 64)
rng = np.random.default_rng(7)
v = PotentialField(grid, rng.uniform(-5.0, 5.0, grid.size))
ham_v = build_hamiltonian(dom, grid, v)
dec_v = eigendecompose(ham_v)
# cut in the middle of a wide level spacing, so the rank below is stable
cut = float(0.5 * (dec_v.eigenvalues[51] + dec_v.eigenvalues[52]))
proj = spectral_projector(dec_v, SpectralInterval.up_to(cut))
print(f"  P_H(E) at E = {cut:.3f}: rank {proj.rank} of {dec_v.n}")
pm = proj.matrix()
print(f"  ||P^2 - P||_max = {np.max(np.abs(pm @ pm - pm)):.2e}")

b = PotentialField(grid, rng.uniform(-1.0, 1.0, grid.size))
ham_pert = build_hamiltonian(dom, grid, PotentialField(grid, v.values + b.values))
dec_pert = eigendecompose(ham_pert)
move = np.max(np.abs(dec_pert.eigenvalues - dec_v.eigenvalues))
print(f"  eigenvalue movement {move:.4f} <= ||B||_inf = {b.sup_norm:.4f}  "
      f"({'OK' if move <= b.sup_norm + 1e-10 else 'VIOLATED'})")

proj_pert = spectral_projector(dec_pert, SpectralInterval.up_to(cut))
dist = principal_angle_norm(proj, proj_pert)
print(f"  projector distance ||P - Q|| = {dist:.2e} (sine of largest principal angle)")
w_diag = PotentialField(grid, rng.uniform(0.0, 2.0, grid.size))
from specgap import SymmetricMatrix

w_op = SymmetricMatrix.from_diagonal(w_diag.values)
print(f"  operator norm of the W multiplication operator: power iteration "
      f"{operator_norm(w_op):.10f} vs sup-norm {w_diag.sup_norm:.10f}")
