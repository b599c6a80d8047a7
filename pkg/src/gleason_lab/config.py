"""Numerical tolerances shared across the library.

All computations are double precision.  The bands below are deliberately
far above machine epsilon for the matrix sizes handled here (dimension at
most eight), so a violation signals a modelling error rather than noise.
"""

from __future__ import annotations

# Eigenvalue band used when validating effects and density operators.
EIGENVALUE_TOL = 1e-10

# Tolerance for exact algebraic identities: round-trips, completeness sums,
# mixing-weight normalisation.
ARITHMETIC_TOL = 1e-12

# Conjugate-symmetry band for Hermitian inputs.
HERMITIAN_TOL = 1e-12

# Idempotency band when recognising projectors.
PROJECTOR_TOL = 1e-10

# Fingerprint grid for identifying two floating-point effects as equal.
REGISTRY_GRID = 1e-9

# Singular values below this are treated as zero when splitting a frame
# constraint system into particular solution plus null space.
NULLSPACE_TOL = 1e-8

# Default distance tolerance and iteration budget for convex-membership
# certification.
MEMBERSHIP_TOL = 1e-7
MEMBERSHIP_MAX_ITER = 20000

# Environment variable the CLI consults for a default tolerance override.
TOLERANCE_ENV_VAR = "GLEASON_LAB_TOL"
