"""Frame functions over finite effect collections.

A frame function assigns a probability to every effect so that the values
across each measurement sum to one.  This module builds the linear
constraint system induced by a finite measurement collection, solves for
its affine solution space, fits a density operator to a value table, and
provides the classical pole-pinned assignment that respects every
two-outcome measurement yet fails to extend to a Born rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import EIGENVALUE_TOL, NULLSPACE_TOL, REGISTRY_GRID
from .errors import (
    IndexOutOfRange,
    InconsistentSystem,
    MissingValue,
    NotOrthogonal,
    RankDeficient,
)
from .measurements import Measurement, d_e, make_measurement, t_e, t_ee
from .operators import (
    as_operator,
    effect_to_bloch,
    hermitian_basis,
    identity,
    zero,
)
from .sampling import random_bloch_effect, random_rank1_projector, random_unit_vector

# Angular band (radians, small-angle) for deciding that a Bloch vector points
# along the +z or -z axis.
_AXIS_ANGLE_TOL = 1e-9


class EffectRegistry:
    """Deduplicating store of effects keyed by a rounded fingerprint.

    Two effects whose entries agree on a REGISTRY_GRID lattice map to the
    same id; effects produced by exact reuse of the same array always
    coincide, which is what the constraint systems rely on.
    """

    def __init__(self, grid: float = REGISTRY_GRID):
        self.grid = float(grid)
        self._effects: list[np.ndarray] = []
        self._ids: dict[bytes, int] = {}

    def _key(self, effect: np.ndarray) -> bytes:
        m = as_operator(effect)
        q = np.rint(np.stack([m.real, m.imag]) / self.grid).astype(np.int64)
        return q.tobytes() + bytes([m.shape[0]])

    def add(self, effect) -> int:
        m = as_operator(effect)
        key = self._key(m)
        found = self._ids.get(key)
        if found is not None:
            return found
        idx = len(self._effects)
        frozen = m.copy()
        frozen.setflags(write=False)
        self._effects.append(frozen)
        self._ids[key] = idx
        return idx

    def lookup(self, effect) -> int:
        found = self._ids.get(self._key(as_operator(effect)))
        if found is None:
            raise MissingValue("effect is not registered")
        return found

    def __contains__(self, effect) -> bool:
        return self._key(as_operator(effect)) in self._ids

    def __len__(self) -> int:
        return len(self._effects)

    def effect(self, idx: int) -> np.ndarray:
        return self._effects[idx]

    @property
    def effects(self) -> list[np.ndarray]:
        return list(self._effects)


@dataclass(frozen=True)
class FrameSystem:
    """Linear system: matrix @ values = 1 row-wise over registry ids."""

    registry: EffectRegistry
    rows: tuple  # tuple of outcome-id tuples, one per measurement
    matrix: np.ndarray  # (n_rows, n_effects) multiplicity counts


@dataclass(frozen=True)
class SolutionSpace:
    """Affine solution set {particular + span(basis)} of a FrameSystem."""

    particular: np.ndarray
    basis: np.ndarray  # (affine_dim, n_effects), orthonormal rows
    affine_dim: int


@dataclass(frozen=True)
class FrameTable:
    """Value table over a registry, callable on effects."""

    registry: EffectRegistry
    values: np.ndarray

    def __call__(self, effect) -> float:
        return float(self.values[self.registry.lookup(effect)])


@dataclass(frozen=True)
class DensityFit:
    rho: np.ndarray
    residual: float  # max-abs deviation between Tr(rho e_i) and the values
    psd: bool        # eigenvalues of rho >= -1e-8


def counterexample_g(e) -> float:
    """Pole-pinned probability assignment on qubit effects.

    For an effect with Bloch coefficients (a, r_vec) the value is a - |r|
    when r_vec points along +z, a + |r| along -z (angular band 1e-9), and a
    otherwise.  The assignment respects every two-outcome measurement, since
    complements flip the Bloch vector, but it is not of Born form: it is
    additive along each axis yet discontinuously pinned at the poles.
    """
    bloch = effect_to_bloch(e)
    r = bloch.radius
    if r == 0.0:
        return bloch.a
    planar = math.hypot(bloch.b, bloch.c)
    if planar <= _AXIS_ANGLE_TOL * r:
        if bloch.d > 0.0:
            return bloch.a - r
        return bloch.a + r
    return bloch.a


def check_frame(f, measurements, tol: float) -> tuple[bool, list[int]]:
    """Evaluate `f` across each measurement; rows whose values do not sum to
    one within `tol` are reported as violations."""
    violations = []
    for idx, m in enumerate(measurements):
        total = sum(f(effect) for effect in m)
        if abs(total - 1.0) > tol:
            violations.append(idx)
    return (not violations, violations)


def mixture_outcome_probability(f, parts, outcome: int) -> float:
    """Probability the convex mixture assigns to `outcome` when each part is
    evaluated through the frame function f."""
    total = 0.0
    for w, m in parts:
        if not 0 <= outcome < m.n_outcomes:
            raise IndexOutOfRange(f"outcome {outcome} outside range({m.n_outcomes})")
        total += float(w) * f(m[outcome])
    return total


def build_system(measurements, grid: float = REGISTRY_GRID) -> FrameSystem:
    """Assemble the frame constraint system of a measurement collection.

    Repeated effects share registry ids; a row records the id of every
    outcome slot, and the matrix holds multiplicity counts, so a measurement
    with a repeated effect contributes coefficient 2 on that id.
    """
    registry = EffectRegistry(grid=grid)
    rows = []
    for m in measurements:
        if not isinstance(m, Measurement):
            m = make_measurement(m)
        rows.append(tuple(registry.add(effect) for effect in m))
    matrix = np.zeros((len(rows), len(registry)))
    for r, row in enumerate(rows):
        for idx in row:
            matrix[r, idx] += 1.0
    matrix.setflags(write=False)
    return FrameSystem(registry=registry, rows=tuple(rows), matrix=matrix)


def solve_space(system: FrameSystem) -> SolutionSpace:
    """Particular solution plus orthonormal null-space basis of a system.

    Singular values below NULLSPACE_TOL count as zero; affine_dim is the
    registry size minus the numerical rank.  Raises InconsistentSystem when
    the least-squares residual exceeds 1e-6.
    """
    matrix = system.matrix
    ones = np.ones(matrix.shape[0])
    particular, *_ = np.linalg.lstsq(matrix, ones, rcond=None)
    residual = float(np.max(np.abs(matrix @ particular - ones))) if matrix.size else 0.0
    if residual > 1e-6:
        raise InconsistentSystem(f"no frame values satisfy the rows (residual {residual:.3e})")
    u, s, vt = np.linalg.svd(matrix)
    rank = int(np.sum(s > NULLSPACE_TOL))
    basis = vt[rank:].copy()
    particular.setflags(write=False)
    basis.setflags(write=False)
    return SolutionSpace(
        particular=particular, basis=basis, affine_dim=matrix.shape[1] - rank
    )


def fit_density(effects, values) -> DensityFit:
    """Least-squares density operator reproducing a value table.

    Solves min_rho sum_i (Tr(rho e_i) - v_i)^2 over Hermitian rho with
    Tr(rho) = 1.  Raises RankDeficient when the effects fail to span the
    traceless directions of operator space.
    """
    if isinstance(effects, EffectRegistry):
        effects = effects.effects
    if isinstance(values, FrameTable):
        values = values.values
    stack = [as_operator(e) for e in effects]
    vals = np.asarray(values, dtype=float)
    if len(stack) != vals.shape[0]:
        raise MissingValue(
            f"{len(stack)} effects but {vals.shape[0]} values"
        )
    d = stack[0].shape[0]
    basis = hermitian_basis(d)[1:]  # traceless part; identity coefficient fixed
    design = np.array([[np.trace(b @ e).real for b in basis] for e in stack])
    offset = np.array([np.trace(e).real / d for e in stack])
    sv = np.linalg.svd(design, compute_uv=False) if design.size else np.zeros(0)
    rank = int(np.sum(sv > NULLSPACE_TOL * max(1.0, sv[0] if sv.size else 1.0)))
    if rank < d * d - 1:
        raise RankDeficient(
            f"effects span {rank} traceless directions, need {d * d - 1}"
        )
    coeffs, *_ = np.linalg.lstsq(design, vals - offset, rcond=None)
    rho = identity(d) / d + np.einsum("k,kij->ij", coeffs, basis)
    residual = float(np.max(np.abs(design @ coeffs + offset - vals)))
    psd = bool(np.linalg.eigvalsh(rho)[0] >= -1e-8)
    rho.setflags(write=False)
    return DensityFit(rho=rho, residual=residual, psd=psd)


def additivity_check(f, projectors, tol: float) -> bool:
    """Whether f(sum P_j) equals sum f(P_j) for mutually orthogonal P_j."""
    stack = [as_operator(p) for p in projectors]
    for i in range(len(stack)):
        for j in range(i + 1, len(stack)):
            if np.max(np.abs(stack[i] @ stack[j])) > 1e-10:
                raise NotOrthogonal(f"projectors {i} and {j} are not orthogonal")
    total = np.sum(stack, axis=0)
    return abs(sum(f(p) for p in stack) - f(total)) <= tol


def centered_solution(system: FrameSystem, space: SolutionSpace) -> np.ndarray:
    """The maximally mixed value table, projected onto the solution space.

    value(e) = trace(e)/dim satisfies every completeness row exactly (each row
    just sums a measurement to one), so it is always a solution; projecting
    through the basis only scrubs numerical dust.  Unlike the least-squares
    particular point it is interior on every movable coordinate and fits the
    maximally mixed state, which makes it the natural anchor for sampling and
    reporting.
    """
    mixed = np.array(
        [np.trace(e).real / e.shape[0] for e in system.registry.effects]
    )
    return space.particular + space.basis.T @ (
        space.basis @ (mixed - space.particular)
    )


def sample_feasible_solutions(
    system: FrameSystem, space: SolutionSpace, rng: np.random.Generator,
    count: int, radius: float = 0.1, box_tol: float = 1e-10,
    max_tries: int = 10000, center=None,
):
    """Random solutions of the system whose values stay within [0, 1].

    Sampling is centered on the maximally mixed table (see centered_solution;
    the least-squares particular point need not be box-feasible).
    Coefficients are drawn uniformly inside a per-direction step bound scaled
    by `radius` and the affine dimension.  The default radius is deliberately
    conservative: the box of value constraints is wider than the state space
    along directions the sampled effects cover thinly, so staying near the
    center keeps the fitted operators comfortably positive as well as
    feasible.  A different interior `center` may be supplied.
    """
    dim = space.affine_dim
    if center is None:
        center = centered_solution(system, space)
    if dim == 0:
        return [center.copy() for _ in range(count)]
    scales = np.empty(dim)
    for k, b in enumerate(space.basis):
        steps = []
        for sign in (1.0, -1.0):
            d = sign * b
            up = d > 1e-12
            dn = d < -1e-12
            hi = np.min((1.0 - center[up]) / d[up]) if up.any() else math.inf
            lo = np.min((0.0 - center[dn]) / d[dn]) if dn.any() else math.inf
            steps.append(min(hi, lo))
        scales[k] = min(steps)
    if not np.all(np.isfinite(scales)):
        scales[~np.isfinite(scales)] = 1.0
    scales *= radius / math.sqrt(dim)
    out = []
    for _ in range(max_tries):
        if len(out) == count:
            break
        z = rng.uniform(-1.0, 1.0, size=dim) * scales
        candidate = center + space.basis.T @ z
        if candidate.min() >= -box_tol and candidate.max() <= 1.0 + box_tol:
            out.append(candidate)
    if len(out) < count:
        raise InconsistentSystem("could not sample enough feasible solutions")
    return out


# ---------------------------------------------------------------------------
# seeded measurement collections
# ---------------------------------------------------------------------------

def sample_binary_pvms(seed: int, count: int) -> list[Measurement]:
    """Deterministic sharp two-outcome measurements along random axes."""
    rng = np.random.default_rng(seed)
    return [d_e(random_rank1_projector(rng)) for _ in range(count)]


def sample_two_outcome_poms(seed: int, count: int) -> list[Measurement]:
    """Deterministic unsharp two-outcome measurements over random effects."""
    rng = np.random.default_rng(seed)
    return [d_e(random_bloch_effect(rng)) for _ in range(count)]


def sample_3psm_prime(
    seed: int, n_two_outcome: int, n_te: int, n_tee: int
) -> list[Measurement]:
    """Deterministic sample from the halved-effect measurement family.

    Emits n_two_outcome two-outcome rows [e, I-e], n_te halved rows
    [e/2, e/2, I-e] and n_tee paired rows [e/2, e2/2, I-(e+e2)/2].  Effects
    are reused across rows so the resulting frame system is intertwined:
    given enough budget the sampler lays down anchor effects along three
    random axes together with a web of midpoint effects, each midpoint tied
    to its two parents by a paired row and to its own complement and half.
    Such a web pins every sampled value to an affine function of three free
    parameters, which is what the rigidity analysis measures.  With small
    budgets it falls back to plain shared-effect pairs.
    """
    rng = np.random.default_rng(seed)
    budget = {"d": int(n_two_outcome), "te": int(n_te), "tee": int(n_tee)}
    out: list[Measurement] = []
    eye = identity()

    def emit(kind: str, m: Measurement):
        budget[kind] -= 1
        out.append(m)

    web_mode = budget["d"] >= 9 and budget["te"] >= 10 and budget["tee"] >= 4
    if web_mode:
        # bootstrap: pin the values of 0, I, I/2 and I/4
        emit("d", d_e(eye))
        emit("d", d_e(eye / 4.0))
        emit("te", t_e(zero()))
        emit("te", t_e(eye))
        emit("te", t_e(eye / 2.0))
        # anchors: antipodal effect pairs along three random axes; the paired
        # row against the pinned I/4 value ties each pair's values together
        pool: list[np.ndarray] = []
        for _ in range(3):
            axis = random_unit_vector(rng)
            pointer = np.array(
                [
                    [axis[2], axis[0] - 1.0j * axis[1]],
                    [axis[0] + 1.0j * axis[1], -axis[2]],
                ],
                dtype=complex,
            )
            plus = (eye + pointer) / 4.0
            minus = (eye - pointer) / 4.0
            emit("d", d_e(plus))
            emit("d", d_e(minus))
            emit("te", t_e(plus))
            emit("te", t_e(minus))
            emit("tee", t_ee(plus, minus))
            pool.extend([plus, minus])
        # midpoint web: every new effect is the midpoint of two pool members
        # and immediately receives its own two-outcome and halved rows
        while budget["d"] >= 1 and budget["te"] >= 1 and budget["tee"] >= 1:
            i, j = rng.choice(len(pool), size=2, replace=False)
            mid = (pool[i] + pool[j]) / 2.0
            emit("tee", t_ee(pool[i], pool[j]))
            emit("d", d_e(mid))
            emit("te", t_e(mid))
            pool.append(mid)
        # leftovers: rows that consume budget without adding freedom
        while budget["tee"] >= 1 and budget["d"] >= 1:
            x = pool[rng.integers(len(pool))]
            emit("d", d_e(x / 2.0))
            emit("tee", t_ee(x, zero()))
        while budget["tee"] >= 1:
            x = pool[rng.integers(len(pool))]
            emit("tee", t_ee(x, x))
        while budget["d"] >= 1:
            x = pool[rng.integers(len(pool))]
            emit("d", make_measurement([eye - x, x]))
        while budget["te"] >= 1:
            x = pool[rng.integers(len(pool))]
            emit("te", t_e(eye - x))
    else:
        while budget["d"] >= 1 or budget["te"] >= 1 or budget["tee"] >= 1:
            e = random_bloch_effect(rng)
            if budget["d"] >= 1:
                emit("d", d_e(e))
            if budget["te"] >= 1:
                emit("te", t_e(e))
            if budget["tee"] >= 1:
                partner = None
                for _ in range(200):
                    cand = random_bloch_effect(rng)
                    if effect_to_bloch(e + cand).is_effect(EIGENVALUE_TOL):
                        partner = cand
                        break
                if partner is None:
                    partner = eye - e  # always admissible
                emit("tee", t_ee(e, partner))
    assert all(v == 0 for v in budget.values())
    return out
