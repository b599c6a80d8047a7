"""Measurements as ordered effect sequences, convex mixing, and a named catalog."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .config import ARITHMETIC_TOL, EIGENVALUE_TOL
from .errors import (
    DimensionMismatch,
    IncompleteMeasurement,
    IndexOutOfRange,
    NotAnEffect,
    NotUnitVector,
    ShapeMismatch,
    WeightError,
)
from .operators import (
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    bloch_to_effect,
    identity,
    is_effect,
    zero,
)


@dataclass(frozen=True, eq=False)
class Measurement:
    """Ordered sequence of effects stored as a read-only (n, d, d) array.

    Construct through make_measurement to get completeness validation;
    the raw constructor only normalises the array shape.
    """

    effects: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.array(self.effects, dtype=complex)
        if arr.ndim != 3 or arr.shape[1] != arr.shape[2]:
            raise ShapeMismatch(f"expected (n, d, d) effect stack, got {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "effects", arr)

    @property
    def n_outcomes(self) -> int:
        return self.effects.shape[0]

    @property
    def dim(self) -> int:
        return self.effects.shape[1]

    def __len__(self) -> int:
        return self.n_outcomes

    def __getitem__(self, j: int) -> np.ndarray:
        n = self.n_outcomes
        if not -n <= j < n:
            raise IndexOutOfRange(f"outcome {j} outside range({n})")
        return self.effects[j]

    def __iter__(self):
        return iter(self.effects)

    def __repr__(self) -> str:
        return f"Measurement(n_outcomes={self.n_outcomes}, dim={self.dim})"


def make_measurement(effects, tol: float = EIGENVALUE_TOL) -> Measurement:
    """Validate effects and their completeness sum, then freeze them.

    Raises NotAnEffect for an invalid element and IncompleteMeasurement when
    the effects do not sum to the identity within `tol`.
    """
    stack = [np.asarray(e, dtype=complex) for e in effects]
    if not stack:
        raise IncompleteMeasurement("a measurement needs at least one outcome")
    dim = stack[0].shape[0]
    for j, e in enumerate(stack):
        if e.shape != (dim, dim):
            raise DimensionMismatch(f"effect {j} has shape {e.shape}, expected {(dim, dim)}")
        if not is_effect(e, tol):
            raise NotAnEffect(f"outcome {j} is not a valid effect")
    total = np.sum(stack, axis=0)
    dev = float(np.max(np.abs(total - identity(dim))))
    if dev > tol:
        raise IncompleteMeasurement(f"effects sum to identity only within {dev:.3e}")
    return Measurement(np.stack(stack))


def mix(parts, tol: float = EIGENVALUE_TOL) -> Measurement:
    """Convex mixture of measurements, slot by slot.

    `parts` is a sequence of (weight, Measurement).  Weights must lie in
    [0, 1] and sum to one within ARITHMETIC_TOL.
    """
    parts = list(parts)
    if not parts:
        raise WeightError("empty mixture")
    weights = np.array([float(w) for w, _ in parts])
    if np.any(weights < -ARITHMETIC_TOL) or np.any(weights > 1.0 + ARITHMETIC_TOL):
        raise WeightError(f"weights outside [0, 1]: {weights}")
    if abs(weights.sum() - 1.0) > ARITHMETIC_TOL:
        raise WeightError(f"weights sum to {weights.sum()!r}, expected 1")
    first = parts[0][1]
    n, d = first.n_outcomes, first.dim
    for _, m in parts:
        if m.dim != d:
            raise DimensionMismatch("mixture parts act on different dimensions")
        if m.n_outcomes != n:
            raise ShapeMismatch(
                "mixture parts have different outcome counts; pad_zero them first"
            )
    combined = np.zeros((n, d, d), dtype=complex)
    for w, m in parts:
        combined += w * m.effects
    return make_measurement(combined, tol)


def pad_zero(m: Measurement, position: int) -> Measurement:
    """Insert a zero effect at `position`, keeping the others in order."""
    if not 0 <= position <= m.n_outcomes:
        raise IndexOutOfRange(f"position {position} outside range({m.n_outcomes + 1})")
    padded = np.insert(m.effects, position, zero(m.dim), axis=0)
    return Measurement(padded)


def d_e(e, tol: float = EIGENVALUE_TOL) -> Measurement:
    """Two-outcome measurement [e, I - e]."""
    arr = np.asarray(e, dtype=complex)
    if not is_effect(arr, tol):
        raise NotAnEffect("d_e requires a valid effect")
    return Measurement(np.stack([arr, identity(arr.shape[0]) - arr]))


def t_e(e, tol: float = EIGENVALUE_TOL) -> Measurement:
    """Three-outcome measurement [e/2, e/2, I - e]."""
    arr = np.asarray(e, dtype=complex)
    if not is_effect(arr, tol):
        raise NotAnEffect("t_e requires a valid effect")
    return Measurement(np.stack([arr / 2.0, arr / 2.0, identity(arr.shape[0]) - arr]))


def t_ee(e, e2, tol: float = EIGENVALUE_TOL) -> Measurement:
    """Three-outcome measurement [e/2, e2/2, I - (e + e2)/2].

    Valid for any pair of effects: halving keeps the first two slots below
    the identity and the third slot is then forced.  Note the sampled
    halved-effect measurement family additionally restricts to pairs whose
    plain sum e + e2 is itself an effect; that restriction lives in the
    sampler, not here, so constructions like the tilted pair of projectors
    remain expressible.
    """
    a = np.asarray(e, dtype=complex)
    b = np.asarray(e2, dtype=complex)
    if a.shape != b.shape:
        raise DimensionMismatch(f"effects of shape {a.shape} and {b.shape}")
    if not is_effect(a, tol) or not is_effect(b, tol):
        raise NotAnEffect("t_ee requires valid effects")
    return Measurement(
        np.stack([a / 2.0, b / 2.0, identity(a.shape[0]) - (a + b) / 2.0])
    )


def stern_gerlach(axis, tol: float = ARITHMETIC_TOL) -> Measurement:
    """Sharp two-outcome measurement along a unit Bloch direction."""
    v = np.asarray(axis, dtype=float)
    if v.shape != (3,):
        raise NotUnitVector(f"axis must have three components, got shape {v.shape}")
    norm = float(np.linalg.norm(v))
    if abs(norm - 1.0) > tol:
        raise NotUnitVector(f"axis has norm {norm!r}")
    pointer = v[0] * SIGMA_X + v[1] * SIGMA_Y + v[2] * SIGMA_Z
    up = 0.5 * (identity() + pointer)
    return Measurement(np.stack([up, identity() - up]))


# Named measurements used throughout the tests and the CLI.  The trine is the
# symmetric three-outcome measurement whose Bloch directions are coplanar at
# 120 degrees; it is the standard example of a qubit measurement that cannot
# be simulated projectively.
def catalog(p: float = 0.5) -> dict[str, Measurement]:
    """Named measurement catalog; `p` parametrises the x/z mixture family."""
    sqrt3 = math.sqrt(3.0)
    m_x = stern_gerlach((1.0, 0.0, 0.0))
    m_z = stern_gerlach((0.0, 0.0, 1.0))
    m_r = stern_gerlach((0.5, 0.0, sqrt3 / 2.0))
    m_s = stern_gerlach((0.5, 0.0, -sqrt3 / 2.0))
    eye = identity()
    trine_dirs = [
        (1.0, 0.0, 0.0),
        (-0.5, 0.0, sqrt3 / 2.0),
        (-0.5, 0.0, -sqrt3 / 2.0),
    ]
    trine = make_measurement(
        [(eye + bx * SIGMA_X + bz * SIGMA_Z) / 3.0 for bx, _, bz in trine_dirs]
    )
    tprime = make_measurement(
        [
            (eye + SIGMA_Z) / 4.0,
            (eye + SIGMA_X) / 4.0,
            (2.0 * eye - SIGMA_Z - SIGMA_X) / 4.0,
        ]
    )
    shared = bloch_to_effect((0.5, 0.25, 0.0, 0.25))
    return {
        "M_x": m_x,
        "M_z": m_z,
        "M_xz": mix([(p, m_x), (1.0 - p, m_z)]),
        "M_r": m_r,
        "M_s": m_s,
        "E": trine,
        "Tprime": tprime,
        "D_m": d_e(shared),
    }


def effect_catalog() -> dict[str, np.ndarray]:
    """Named single effects accepted by the CLI decompose command."""
    sqrt3 = math.sqrt(3.0)
    return {
        "zero": zero(),
        "identity": identity(),
        "m": bloch_to_effect((0.5, 0.25, 0.0, 0.25)),
        "x+": bloch_to_effect((0.5, 0.5, 0.0, 0.0)),
        "x-": bloch_to_effect((0.5, -0.5, 0.0, 0.0)),
        "y+": bloch_to_effect((0.5, 0.0, 0.5, 0.0)),
        "y-": bloch_to_effect((0.5, 0.0, -0.5, 0.0)),
        "z+": bloch_to_effect((0.5, 0.0, 0.0, 0.5)),
        "z-": bloch_to_effect((0.5, 0.0, 0.0, -0.5)),
        "r+": bloch_to_effect((0.5, 0.25, 0.0, sqrt3 / 4.0)),
        "r-": bloch_to_effect((0.5, -0.25, 0.0, -sqrt3 / 4.0)),
        "s+": bloch_to_effect((0.5, 0.25, 0.0, -sqrt3 / 4.0)),
        "s-": bloch_to_effect((0.5, -0.25, 0.0, sqrt3 / 4.0)),
    }
