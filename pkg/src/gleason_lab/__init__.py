"""Qubit effect algebra, projective-simulability certificates and
frame-function rigidity analysis.

Conventions: the computational basis state |0><0| sits at the +z pole of the
Bloch sphere, (I + sigma_z)/2; effects are written a*I + b*sx + c*sy + d*sz.
"""

from .config import (
    ARITHMETIC_TOL,
    EIGENVALUE_TOL,
    MEMBERSHIP_MAX_ITER,
    MEMBERSHIP_TOL,
    NULLSPACE_TOL,
    PROJECTOR_TOL,
    REGISTRY_GRID,
    TOLERANCE_ENV_VAR,
)
from .errors import (
    ConvergenceFailure,
    DimensionMismatch,
    GleasonLabError,
    IncompleteMeasurement,
    InconsistentSystem,
    IndexOutOfRange,
    MissingValue,
    NotAnEffect,
    NotOrthogonal,
    NotUnitVector,
    RankDeficient,
    ShapeMismatch,
    UnsupportedDimension,
    WeightError,
)
from .frames import (
    DensityFit,
    EffectRegistry,
    FrameSystem,
    FrameTable,
    SolutionSpace,
    additivity_check,
    build_system,
    centered_solution,
    check_frame,
    counterexample_g,
    fit_density,
    mixture_outcome_probability,
    sample_3psm_prime,
    sample_binary_pvms,
    sample_feasible_solutions,
    sample_two_outcome_poms,
    solve_space,
)
from .measurements import (
    Measurement,
    catalog,
    d_e,
    effect_catalog,
    make_measurement,
    mix,
    pad_zero,
    stern_gerlach,
    t_e,
    t_ee,
)
from .operators import (
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    BlochCoefficients,
    SpectralDecomposition,
    bloch_to_effect,
    born_probability,
    effect_to_bloch,
    hermitian_basis,
    identity,
    is_density,
    is_effect,
    is_hermitian,
    is_projector,
    spectral,
    zero,
)
from .simulability import (
    INCONCLUSIVE,
    NOT_SIMULABLE,
    SIMULABLE,
    MixtureDecomposition,
    SimulabilityVerdict,
    StaircaseDecomposition,
    atom_oracle,
    membership,
    simulate_t_e,
    simulate_t_ee,
    simulate_two_outcome,
    staircase,
    verify_decomposition,
)

__version__ = "0.1.0"

__all__ = [
    "ARITHMETIC_TOL",
    "BlochCoefficients",
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "ConvergenceFailure",
    "DensityFit",
    "DimensionMismatch",
    "EIGENVALUE_TOL",
    "EffectRegistry",
    "FrameSystem",
    "FrameTable",
    "GleasonLabError",
    "INCONCLUSIVE",
    "IncompleteMeasurement",
    "InconsistentSystem",
    "IndexOutOfRange",
    "MEMBERSHIP_MAX_ITER",
    "MEMBERSHIP_TOL",
    "Measurement",
    "MissingValue",
    "MixtureDecomposition",
    "NOT_SIMULABLE",
    "NULLSPACE_TOL",
    "NotAnEffect",
    "NotOrthogonal",
    "NotUnitVector",
    "PROJECTOR_TOL",
    "REGISTRY_GRID",
    "RankDeficient",
    "SIMULABLE",
    "ShapeMismatch",
    "SimulabilityVerdict",
    "SolutionSpace",
    "SpectralDecomposition",
    "StaircaseDecomposition",
    "TOLERANCE_ENV_VAR",
    "UnsupportedDimension",
    "WeightError",
    "additivity_check",
    "atom_oracle",
    "bloch_to_effect",
    "born_probability",
    "build_system",
    "centered_solution",
    "catalog",
    "check_frame",
    "counterexample_g",
    "d_e",
    "effect_catalog",
    "effect_to_bloch",
    "fit_density",
    "hermitian_basis",
    "identity",
    "is_density",
    "is_effect",
    "is_hermitian",
    "is_projector",
    "make_measurement",
    "membership",
    "mix",
    "mixture_outcome_probability",
    "pad_zero",
    "sample_3psm_prime",
    "sample_binary_pvms",
    "sample_feasible_solutions",
    "sample_two_outcome_poms",
    "simulate_t_e",
    "simulate_t_ee",
    "simulate_two_outcome",
    "solve_space",
    "spectral",
    "staircase",
    "stern_gerlach",
    "t_e",
    "t_ee",
    "verify_decomposition",
    "zero",
]
