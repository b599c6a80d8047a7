"""Projective simulability: constructive decompositions and hull membership.

Two constructive routes are provided for the measurement families that admit
them (two-outcome measurements and the halved three-outcome forms), plus a
certified convex-membership test for arbitrary qubit measurements with up to
eight outcomes.  The membership test runs a fully corrective Frank-Wolfe
scheme over the set of projective atoms:

  * trivial atoms: the identity in one outcome slot, zero elsewhere;
  * binary atoms: a rank-one projector P in slot i, I - P in slot j != i.

The linear-minimisation oracle over this set has a closed form, so no
search over the Bloch sphere is needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import (
    EIGENVALUE_TOL,
    MEMBERSHIP_MAX_ITER,
    MEMBERSHIP_TOL,
    PROJECTOR_TOL,
)
from .errors import NotAnEffect, ShapeMismatch, UnsupportedDimension
from .measurements import Measurement, pad_zero
from .operators import identity, is_effect, spectral

SIMULABLE = "Simulable"
NOT_SIMULABLE = "NotSimulable"
INCONCLUSIVE = "Inconclusive"

# Weights below this are dropped from constructive decompositions.
_WEIGHT_DROP = 1e-12


@dataclass(frozen=True)
class StaircaseDecomposition:
    """Nested-projector form of an effect.

    probabilities[k] for k = 0..d are convex weights; projectors[k] is the
    rank-(d-k+1) projector spanned by the eigenvectors with the k largest
    eigenvalues, with projectors[0] = 0 and projectors[1] = I.  The effect is
    sum_{k>=1} probabilities[k] * projectors[k].
    """

    probabilities: np.ndarray  # (d + 1,)
    projectors: np.ndarray     # (d + 1, d, d)

    def reconstruct(self) -> np.ndarray:
        return np.einsum("k,kij->ij", self.probabilities, self.projectors)


@dataclass(frozen=True)
class MixtureDecomposition:
    """Convex combination of measurements: tuple of (weight, Measurement)."""

    parts: tuple

    @property
    def weights(self) -> np.ndarray:
        return np.array([w for w, _ in self.parts])

    def combine(self) -> np.ndarray:
        """Weighted effect stack sum, shape (n, d, d)."""
        acc = None
        for w, m in self.parts:
            acc = w * m.effects if acc is None else acc + w * m.effects
        return acc


@dataclass(frozen=True)
class SimulabilityVerdict:
    status: str
    witness: MixtureDecomposition | None
    separator: np.ndarray | None  # (n, d, d) unit-norm direction, or None
    margin: float | None
    iterations: int
    gap: float
    distance: float


def staircase(e, tol: float = EIGENVALUE_TOL) -> StaircaseDecomposition:
    """Decompose an effect over its nested spectral projectors.

    With eigenvalues l_1 <= ... <= l_d and rank-one eigenprojectors P_k, the
    weights are p_0 = 1 - l_d and p_k = l_k - l_{k-1} (l_0 = 0), and the
    nested projectors are Q_k = P_k + ... + P_d.  Then e = sum p_k Q_k and
    the weights are a probability vector.  Basis choice inside degenerate
    eigenspaces does not change the reconstruction.
    """
    arr = np.asarray(e, dtype=complex)
    if not is_effect(arr, tol):
        raise NotAnEffect("staircase requires a valid effect")
    dec = spectral(arr)
    d = arr.shape[0]
    lam = dec.eigenvalues
    probs = np.empty(d + 1)
    probs[0] = max(1.0 - lam[-1], 0.0)
    probs[1] = lam[0]
    probs[2:] = np.diff(lam)
    np.clip(probs, 0.0, None, out=probs)
    nested = np.zeros((d + 1, d, d), dtype=complex)
    # cumulative sums from the top eigenvalue down: Q_d = P_d, Q_1 = I
    running = np.zeros((d, d), dtype=complex)
    for k in range(d, 0, -1):
        running = running + dec.projectors[k - 1]
        nested[k] = running
    probs.setflags(write=False)
    nested.setflags(write=False)
    return StaircaseDecomposition(probabilities=probs, projectors=nested)


def simulate_two_outcome(e, tol: float = EIGENVALUE_TOL) -> MixtureDecomposition:
    """Write [e, I - e] as a convex mixture of projective measurements.

    Uses the staircase of e: part k is [Q_k, I - Q_k] with weight p_k.
    Parts with (numerically) zero weight are dropped.
    """
    dec = staircase(e, tol)
    d = dec.projectors.shape[1]
    eye = identity(d)
    parts = []
    for k, (p, q) in enumerate(zip(dec.probabilities, dec.projectors)):
        if p <= _WEIGHT_DROP:
            continue
        parts.append((float(p), Measurement(np.stack([q, eye - q]))))
    return MixtureDecomposition(parts=tuple(parts))


def simulate_t_e(e, tol: float = EIGENVALUE_TOL) -> MixtureDecomposition:
    """Projective mixture for [e/2, e/2, I - e].

    The measurement is the equal mixture of [e, 0, I - e] and [0, e, I - e];
    each padded two-outcome piece is then expanded through
    simulate_two_outcome, multiplying the weights.
    """
    base = simulate_two_outcome(e, tol)
    parts = []
    for position in (1, 0):
        for w, m in base.parts:
            parts.append((0.5 * w, pad_zero(m, position)))
    return MixtureDecomposition(parts=tuple(parts))


def simulate_t_ee(e, e2, tol: float = EIGENVALUE_TOL) -> MixtureDecomposition:
    """Projective mixture for [e/2, e2/2, I - (e + e2)/2].

    Equal mixture of [e, 0, I - e] and [0, e2, I - e2], each expanded through
    simulate_two_outcome.  Works for every pair of effects; in particular the
    tilted projector pair that falls outside the sampled halved-effect family
    still decomposes this way.
    """
    a = np.asarray(e, dtype=complex)
    b = np.asarray(e2, dtype=complex)
    parts = []
    for w, m in simulate_two_outcome(a, tol).parts:
        parts.append((0.5 * w, pad_zero(m, 1)))
    for w, m in simulate_two_outcome(b, tol).parts:
        parts.append((0.5 * w, pad_zero(m, 0)))
    return MixtureDecomposition(parts=tuple(parts))


def verify_decomposition(target, dec: MixtureDecomposition, tol: float) -> bool:
    """True iff the mixture reproduces `target` within `tol` entrywise and
    every part consists solely of projectors (zero and identity included)."""
    target_effects = target.effects if isinstance(target, Measurement) else np.asarray(target, dtype=complex)
    if not dec.parts:
        return False
    for _, m in dec.parts:
        if m.effects.shape != target_effects.shape:
            return False
        for eff in m.effects:
            if np.max(np.abs(eff @ eff - eff)) > PROJECTOR_TOL:
                return False
    return bool(np.max(np.abs(dec.combine() - target_effects)) <= tol)


# ---------------------------------------------------------------------------
# membership: fully corrective Frank-Wolfe over the projective atoms
# ---------------------------------------------------------------------------

def _coords(stack: np.ndarray) -> np.ndarray:
    """Real coordinates of an (n, 2, 2) Hermitian stack.

    The embedding preserves the outcome-wise trace inner product:
    dot(_coords(A), _coords(B)) = sum_j Tr(A_j B_j).
    """
    s = math.sqrt(2.0)
    return np.concatenate(
        [
            stack[:, 0, 0].real,
            stack[:, 1, 1].real,
            s * stack[:, 0, 1].real,
            s * stack[:, 0, 1].imag,
        ]
    )


def _inner(a: np.ndarray, b: np.ndarray) -> float:
    """Outcome-wise trace inner product of two Hermitian stacks."""
    return float(np.einsum("jab,jab->", a.conj(), b).real)


def _bloch_vector(m: np.ndarray) -> np.ndarray:
    return np.array(
        [m[0, 1].real, -m[0, 1].imag, 0.5 * (m[0, 0] - m[1, 1]).real]
    )


def _best_atom(gradient: np.ndarray):
    """Maximise sum_j Tr(G_j a_j) over projective atoms, in closed form.

    For the binary atom on the ordered slot pair (i, j) the optimum projector
    is P = (I + u.sigma)/2 with u the unit Bloch vector of G_i - G_j, giving
    score Tr(G_j) + Tr(G_i - G_j)/2 + |bloch(G_i - G_j)|.  Ties break towards
    trivial atoms and then lowest slot indices, so the result is
    deterministic.
    """
    n = gradient.shape[0]
    traces = np.einsum("jaa->j", gradient).real
    best_score = -math.inf
    best = None
    for i in range(n):
        if traces[i] > best_score:
            best_score = float(traces[i])
            best = ("trivial", i)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            delta = gradient[i] - gradient[j]
            v = _bloch_vector(delta)
            r = float(np.linalg.norm(v))
            score = float(traces[j] + 0.5 * (traces[i] - traces[j]) + r)
            if score > best_score + 1e-15:
                best_score = score
                best = ("binary", i, j, v, r)
    eye = identity()
    atoms = np.zeros((n, 2, 2), dtype=complex)
    if best[0] == "trivial":
        atoms[best[1]] = eye
    else:
        _, i, j, v, r = best
        u = v / r if r > 1e-14 else np.array([0.0, 0.0, 1.0])
        proj = 0.5 * np.array(
            [[1.0 + u[2], u[0] - 1.0j * u[1]], [u[0] + 1.0j * u[1], 1.0 - u[2]]],
            dtype=complex,
        )
        atoms[i] = proj
        atoms[j] = eye - proj
    return atoms, best_score


def atom_oracle(gradient, n_outcomes: int | None = None) -> Measurement:
    """Projective atom maximising the linear functional sum_j Tr(G_j a_j).

    `gradient` is an (n, 2, 2) Hermitian stack (a measurement-vector); the
    returned atom is a valid projective measurement on the same outcome set.
    Adding c*I to every slot shifts all scores by c*dim and never changes
    the argmax.
    """
    g = gradient.effects if isinstance(gradient, Measurement) else np.asarray(gradient, dtype=complex)
    if g.ndim != 3 or g.shape[1:] != (2, 2):
        raise ShapeMismatch(f"expected an (n, 2, 2) stack, got {g.shape}")
    if n_outcomes is not None and n_outcomes != g.shape[0]:
        raise ShapeMismatch(
            f"n_outcomes={n_outcomes} disagrees with gradient stack of {g.shape[0]}"
        )
    atoms, _ = _best_atom(g)
    return Measurement(atoms)


def _affine_lsq(cols: np.ndarray, b: np.ndarray) -> np.ndarray:
    """min ||cols @ u - b|| subject to sum(u) = 1, via the KKT system."""
    k = cols.shape[1]
    kkt = np.zeros((k + 1, k + 1))
    kkt[:k, :k] = cols.T @ cols
    kkt[k, :k] = 1.0
    kkt[:k, k] = 1.0
    rhs = np.append(cols.T @ b, 1.0)
    try:
        sol = np.linalg.solve(kkt, rhs)
    except np.linalg.LinAlgError:
        sol, *_ = np.linalg.lstsq(kkt, rhs, rcond=None)
    return sol[:k]


def _simplex_lsq(cols: np.ndarray, b: np.ndarray, w: np.ndarray) -> np.ndarray:
    """min ||cols @ w - b||^2 over the probability simplex.

    Active-set iteration: solve the affine-constrained least squares on the
    current support, step back to feasibility whenever a coordinate would go
    negative, and re-admit collected columns whose reduced gradient is
    below the support multiplier.  Deterministic and exact on termination.
    """
    k = cols.shape[1]
    w = np.clip(w, 0.0, None)
    s = w.sum()
    w = w / s if s > 0 else np.full(k, 1.0 / k)
    support = list(np.flatnonzero(w > 1e-15))
    if not support:
        support = [int(np.argmax(w))]
    for _ in range(8 * k + 16):
        # minor cycles: restricted affine solve with feasibility steps
        for _ in range(4 * k + 8):
            u = _affine_lsq(cols[:, support], b)
            if u.min() >= -1e-13:
                w = np.zeros(k)
                w[support] = np.clip(u, 0.0, None)
                w /= w.sum()
                break
            cur = w[support]
            step = u - cur
            mask = u < 0
            alpha = np.min(cur[mask] / (cur[mask] - u[mask]))
            cur = cur + alpha * step
            w = np.zeros(k)
            w[support] = np.clip(cur, 0.0, None)
            support = [i for i in support if w[i] > 1e-15] or [int(np.argmax(w))]
        grad = cols.T @ (cols @ w - b)
        mu = grad[support].min()
        outside = [i for i in range(k) if i not in support]
        if not outside:
            return w
        j = min(outside, key=lambda i: grad[i])
        if grad[j] >= mu - 1e-12:
            return w
        support.append(j)
    return w


def _polish(atoms, w, target, tvec):
    """Coordinate descent on the active set: re-aim each binary atom.

    Holding the other atoms fixed, the best projector direction for a binary
    atom occupying slots (i, j) is the unit Bloch vector of R_i - R_j, where
    R is the residual left for that atom; this is the same closed form as
    the oracle, so each sweep can only lower the distance.  Duplicate atoms
    are merged and the simplex weights re-solved after every sweep.  This is
    what lets the witness reach machine-precision distance on targets lying
    on the boundary of the hull, where plain iterate averaging crawls.
    """
    n = target.shape[0]
    placements = []
    for a in atoms:
        occupied = [j for j in range(n) if np.max(np.abs(a[j])) > 1e-12]
        placements.append(tuple(occupied) if len(occupied) == 2 else None)
    cols = np.column_stack([_coords(a) for a in atoms])
    f_prev = math.inf
    for _ in range(40):
        x = cols @ w
        for k, slots in enumerate(placements):
            if slots is None or w[k] <= 1e-15:
                continue
            i, j = slots
            wk = float(w[k])
            partial = _stack(x - wk * cols[:, k], n)
            res_i = target[i] - partial[i]
            res_j = target[j] - partial[j]
            v = _bloch_vector(res_i - res_j)
            r = float(np.linalg.norm(v))
            if r < 1e-14:
                continue
            u = v / r
            proj = 0.5 * np.array(
                [[1.0 + u[2], u[0] - 1.0j * u[1]], [u[0] + 1.0j * u[1], 1.0 - u[2]]],
                dtype=complex,
            )
            new_atom = np.zeros_like(atoms[k])
            new_atom[i] = proj
            new_atom[j] = identity() - proj
            atoms[k] = new_atom
            new_col = _coords(new_atom)
            x = x + wk * (new_col - cols[:, k])
            cols[:, k] = new_col
        w = _simplex_lsq(cols, tvec, w)
        diff = cols @ w - tvec
        f = 0.5 * float(diff @ diff)
        if f_prev - f <= 1e-32:
            break
        f_prev = f
    merged: dict[bytes, int] = {}
    out_atoms, out_w = [], []
    for k, a in enumerate(atoms):
        if w[k] <= 1e-15:
            continue
        key = _coords(a).round(12).tobytes()
        if key in merged:
            out_w[merged[key]] += w[k]
        else:
            merged[key] = len(out_atoms)
            out_atoms.append(a)
            out_w.append(w[k])
    w = np.array(out_w)
    w /= w.sum()
    cols = np.column_stack([_coords(a) for a in out_atoms])
    return out_atoms, cols, w


def membership(
    pom: Measurement,
    tol: float | None = None,
    max_iter: int | None = None,
) -> SimulabilityVerdict:
    """Certified test for membership of the projective-simulable hull.

    Minimises the outcome-wise trace-norm distance to `pom` over the convex
    hull of projective atoms, keeping the accumulated convex combination as a
    witness.  Certificates:

    * Simulable when the witness distance drops to `tol` or below;
    * NotSimulable when the duality gap certifies distance > tol; the
      separator is the unit projection residual and the reported margin is
      <separator, pom> - max_atoms <separator, atom>, re-evaluated through
      the atom oracle (it approximates the Euclidean distance to the hull);
    * Inconclusive when the gap stalls below tol^2/4 or the iteration budget
      runs out without either certificate.

    Measurements that are already projective short-circuit to Simulable.
    """
    tol = MEMBERSHIP_TOL if tol is None else float(tol)
    max_iter = MEMBERSHIP_MAX_ITER if max_iter is None else int(max_iter)
    if pom.dim != 2:
        raise UnsupportedDimension("membership is implemented for qubit measurements")
    n = pom.n_outcomes
    if n > 8:
        raise UnsupportedDimension("membership supports at most eight outcomes")
    target = pom.effects
    if all(np.max(np.abs(e @ e - e)) <= PROJECTOR_TOL for e in target):
        witness = MixtureDecomposition(parts=((1.0, pom),))
        return SimulabilityVerdict(
            status=SIMULABLE, witness=witness, separator=None, margin=None,
            iterations=0, gap=0.0, distance=0.0,
        )
    tvec = _coords(target)

    first, _ = _best_atom(target)
    atoms = [first]
    cols = _coords(first)[:, None]
    keys = {cols[:, 0].round(12).tobytes()}
    w = np.array([1.0])

    gap = math.inf
    dist = math.inf
    iterations = 0
    for iterations in range(1, max_iter + 1):
        xvec = cols @ w
        resid = xvec - tvec
        f = 0.5 * float(resid @ resid)
        dist = math.sqrt(max(2.0 * f, 0.0))
        if dist <= tol:
            # report the gap at the accepted point, not the stale one from
            # the previous round's oracle call
            _, exit_score = _best_atom(target - _stack(xvec, n))
            return SimulabilityVerdict(
                status=SIMULABLE,
                witness=_witness(atoms, w, n),
                separator=None,
                margin=None,
                iterations=iterations,
                gap=float(resid @ xvec) + exit_score,
                distance=dist,
            )
        direction = target - _stack(xvec, n)
        s_atom, s_score = _best_atom(direction)
        # Frank-Wolfe gap: <grad, x - s> with grad = x - target
        gap = float(resid @ xvec) + s_score
        if gap < 0.25 * tol * tol:
            lower = max(f - gap, 0.0)
            if math.sqrt(2.0 * lower) > tol:
                separator = direction / dist
                _, sep_score = _best_atom(separator)
                margin = _inner(separator, target) - sep_score
                if margin > tol:
                    sep = separator.copy()
                    sep.setflags(write=False)
                    return SimulabilityVerdict(
                        status=NOT_SIMULABLE,
                        witness=None,
                        separator=sep,
                        margin=float(margin),
                        iterations=iterations,
                        gap=gap,
                        distance=dist,
                    )
            return SimulabilityVerdict(
                status=INCONCLUSIVE, witness=None, separator=None, margin=None,
                iterations=iterations, gap=gap, distance=dist,
            )
        key = _coords(s_atom).round(12).tobytes()
        if key not in keys:
            atoms.append(s_atom)
            cols = np.column_stack([cols, _coords(s_atom)])
            w = np.append(w, 0.0)
        w = _simplex_lsq(cols, tvec, w)
        if not (w > 1e-15).any():
            w[int(np.argmax(w))] = 1.0
        atoms, cols, w = _polish(atoms, w, target, tvec)
        keys = {_coords(a).round(12).tobytes() for a in atoms}
    return SimulabilityVerdict(
        status=INCONCLUSIVE, witness=None, separator=None, margin=None,
        iterations=iterations, gap=gap, distance=dist,
    )


def _stack(vec: np.ndarray, n: int) -> np.ndarray:
    """Inverse of _coords."""
    s = 1.0 / math.sqrt(2.0)
    a00 = vec[:n]
    a11 = vec[n:2 * n]
    re = s * vec[2 * n:3 * n]
    im = s * vec[3 * n:]
    out = np.empty((n, 2, 2), dtype=complex)
    out[:, 0, 0] = a00
    out[:, 1, 1] = a11
    out[:, 0, 1] = re + 1.0j * im
    out[:, 1, 0] = re - 1.0j * im
    return out


def _witness(atoms, w, n) -> MixtureDecomposition:
    parts = tuple(
        (float(wi), Measurement(a)) for wi, a in zip(w, atoms) if wi > 1e-15
    )
    return MixtureDecomposition(parts=parts)
