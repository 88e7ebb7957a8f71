"""specgap: a numerical laboratory for unique-continuation constants and
spectral lifting estimates of Schrödinger operators.

Subpackages by concern:

* :mod:`specgap.linalg` — symmetric/Hermitian eigensolvers, spectral
  projectors, operator norms, subspace distances;
* :mod:`specgap.schrodinger` — finite-difference Hamiltonians on cell-tiled
  boxes, potentials, equidistributed ball arrangements;
* :mod:`specgap.ghost` — auxiliary-dimension extension of spectral states
  and its structural identities;
* :mod:`specgap.gaps` — gap-indexed eigenvalue enumeration, non-positive
  subspaces, minimax principles in gaps;
* :mod:`specgap.lifting` — explicit constants and lifting certificates;
* :mod:`specgap.bands` — 1-d Bloch bands, Hill discriminant, edge tracing;
* :mod:`specgap.verify` — the property suites behind ``specgap full-verify``;
* :mod:`specgap.cli` — the ``specgap`` command-line front end.
"""

from .bands import BandFunctions, EdgeTrace, HillDiscriminant, compute_bands, discriminant, trace_edges
from .gaps import (
    GapSpectrum,
    MinimaxReport,
    enumerate_gap,
    perturbed_minimax,
    is_maximal_nonpositive,
    gap_infsup_value,
    automorphism_check,
)
from .ghost import GhostExtension, extend, ghost_residual, s_eval, sandwich_check
from .lifting import (
    LiftingCertificate,
    UcpConstant,
    c_uc,
    davis_kahan_check,
    interval_movement_check,
    kappa,
    ucp_verify,
    verify_bottom_lifting,
    verify_gap_lifting_left,
    verify_gap_lifting_right,
)
from .linalg import (
    HermitianMatrix,
    OrthogonalProjector,
    SpectralDecomposition,
    SpectralInterval,
    SymmetricMatrix,
    eigendecompose,
    operator_norm,
    principal_angle_norm,
    spectral_projector,
)
from .schrodinger import (
    AdmissibleDomain,
    EquidistributedSet,
    Grid,
    PotentialField,
    build_hamiltonian,
    restricted_mass,
    sample_equidistributed,
    total_mass,
)

__version__ = "0.1.0"

__all__ = [
    "AdmissibleDomain",
    "BandFunctions",
    "EdgeTrace",
    "EquidistributedSet",
    "GapSpectrum",
    "GhostExtension",
    "Grid",
    "HermitianMatrix",
    "HillDiscriminant",
    "LiftingCertificate",
    "MinimaxReport",
    "OrthogonalProjector",
    "PotentialField",
    "SpectralDecomposition",
    "SpectralInterval",
    "SymmetricMatrix",
    "UcpConstant",
    "build_hamiltonian",
    "c_uc",
    "compute_bands",
    "davis_kahan_check",
    "discriminant",
    "eigendecompose",
    "enumerate_gap",
    "extend",
    "ghost_residual",
    "perturbed_minimax",
    "interval_movement_check",
    "is_maximal_nonpositive",
    "kappa",
    "gap_infsup_value",
    "operator_norm",
    "principal_angle_norm",
    "restricted_mass",
    "s_eval",
    "sample_equidistributed",
    "sandwich_check",
    "automorphism_check",
    "spectral_projector",
    "total_mass",
    "trace_edges",
    "ucp_verify",
    "verify_bottom_lifting",
    "verify_gap_lifting_left",
    "verify_gap_lifting_right",
]
