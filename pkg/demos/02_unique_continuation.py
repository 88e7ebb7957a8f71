#!/usr/bin/env python3
"""Scale-free unique continuation on a box.

Every state in the spectral subspace up to energy E must keep at least the
fraction C_uc of its mass on an equidistributed arrangement of delta-balls,
no matter where the balls sit in their cells.  The demo measures the actual
mass fractions of low eigenfunctions against the certified constant and
prints the empirical critical exponent per eigenfunction.

Run:  python3 demos/02_unique_continuation.py
"""

import numpy as np

from specgap import (
    AdmissibleDomain,
    Grid,
    PotentialField,
    build_hamiltonian,
    c_uc,
    eigendecompose,
    sample_equidistributed,
    ucp_verify,
)

dom = AdmissibleDomain.interval(0.0, 8.0)
grid = Grid(dom, 32, "dirichlet")
rng = np.random.default_rng(7)
v = PotentialField(grid, rng.uniform(-10.0, 10.0, grid.size))
ham = build_hamiltonian(dom, grid, v)
dec = eigendecompose(ham)

print("=" * 64)
print("  Unique continuation on (0, 8), cell scale G = 1")
print("=" * 64)
print(f"  potential range [{v.min_value:+.2f}, {v.max_value:+.2f}], energy cutoff E = 50")

for delta in (0.1, 0.2):
    const = c_uc(dimension=1, cell_scale=1.0, delta=delta,
                 v_min=v.min_value, v_max=v.max_value, energy=50.0, exponent_n=10.0)
    print(f"\n  delta = {delta}: optimizing shift lambda* = {const.shift:+.4f}, "
          f"exponent factor {const.exponent_factor:.3f}")
    print(f"  certified constant C_uc = (delta/G)^(N*factor) = {const.value:.3e}")
    s = sample_equidistributed(dom, grid, delta, seed=42)
    print(f"  sampled {s.ball_count} balls covering {100 * s.covered_fraction:.1f}% of the nodes")
    rep = ucp_verify(dec, s, v, energy=50.0, exponent_n=10.0)
    print(f"  {rep.used_modes} eigenfunctions below the cutoff; checking each mass fraction:")
    print("    k   energy      ratio     critical N")
    for k in range(min(6, rep.used_modes)):
        print(f"    {k}  {rep.energies[k]:8.3f}   {rep.ratios[k]:8.4f}   {rep.n_prime_samples[k]:8.4f}")
    print(f"  minimal ratio           = {rep.min_ratio:.4f}  (>= C_uc: {rep.min_ratio >= const.value})")
    print(f"  form-compression minimum = {rep.form_min:.4f}  (>= C_uc: {rep.form_min >= const.value})")
    print(f"  critical-N range [{rep.n_prime:.4f}, {rep.n_prime_max:.4f}] "
          f"(bound certified for every sample once N >= {rep.n_prime_max:.4f})")
    print(f"  verdict: {'PASS' if rep.passed else 'FAIL'}")

print("\n  The certified constant is astronomically conservative here; the")
print("  critical-N probe shows how much slack the worst eigenfunction leaves.")
