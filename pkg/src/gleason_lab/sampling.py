"""Seeded random generators for effects, states and projectors.

Every function takes a numpy Generator so callers control determinism; the
same seed always reproduces the same objects.
"""

from __future__ import annotations

import numpy as np

from .operators import BlochCoefficients, bloch_to_effect, identity


def random_unit_vector(rng: np.random.Generator, dim: int = 3) -> np.ndarray:
    """Uniform point on the unit sphere."""
    while True:
        v = rng.normal(size=dim)
        norm = np.linalg.norm(v)
        if norm > 1e-8:
            return v / norm


def random_bloch_coefficients(rng: np.random.Generator) -> BlochCoefficients:
    """Random valid qubit effect coefficients.

    The trace part is uniform on [0, 1]; the vector part points in a uniform
    direction with length uniform up to the largest admissible radius, so
    samples include near-trivial, near-projector and interior effects.
    """
    a = rng.uniform(0.0, 1.0)
    direction = random_unit_vector(rng)
    r = min(a, 1.0 - a) * rng.uniform(0.0, 1.0)
    return BlochCoefficients(a, *(r * direction))


def random_bloch_effect(rng: np.random.Generator) -> np.ndarray:
    return bloch_to_effect(random_bloch_coefficients(rng))


def haar_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Haar-distributed unitary via QR of a Ginibre matrix."""
    z = (rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    phases = np.diagonal(r).copy()
    phases /= np.abs(phases)
    return q * phases  # fix the phase ambiguity so the law is Haar


def random_effect(rng: np.random.Generator, dim: int = 2) -> np.ndarray:
    """Random effect in any finite dimension.

    Qubits go through the Bloch parameterization; higher dimensions draw
    uniform eigenvalues in [0, 1] conjugated by a Haar unitary.
    """
    if dim == 2:
        return random_bloch_effect(rng)
    u = haar_unitary(rng, dim)
    lam = rng.uniform(0.0, 1.0, size=dim)
    e = (u * lam) @ u.conj().T
    return (e + e.conj().T) / 2.0


def random_density(rng: np.random.Generator, dim: int = 2) -> np.ndarray:
    """Random density operator (Ginibre ensemble, full rank almost surely)."""
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_rank1_projector(rng: np.random.Generator, dim: int = 2) -> np.ndarray:
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    v /= np.linalg.norm(v)
    p = np.outer(v, v.conj())
    return (p + p.conj().T) / 2.0


def random_orthogonal_projectors(
    rng: np.random.Generator, dim: int, sizes=None
) -> list[np.ndarray]:
    """Mutually orthogonal projectors from a Haar frame.

    `sizes` lists the rank of each projector; by default the dimension is
    split into a random composition (ranks summing to dim), so families of
    varying coarseness appear.
    """
    if sizes is None:
        sizes = []
        left = dim
        while left > 0:
            take = int(rng.integers(1, left + 1))
            sizes.append(take)
            left -= take
    if sum(sizes) > dim:
        raise ValueError(f"ranks {sizes} exceed dimension {dim}")
    u = haar_unitary(rng, dim)
    out = []
    start = 0
    for size in sizes:
        block = u[:, start : start + size]
        p = block @ block.conj().T
        out.append((p + p.conj().T) / 2.0)
        start += size
    return out


def random_projective_mixture(
    rng: np.random.Generator, n_outcomes: int = 3, n_atoms: int = 6
):
    """Convex mixture of projective atoms, returned as (weights, atom list).

    Atoms are the two qubit families used by the membership test: identity
    placed in one slot, or a projector pair placed in two slots, zeros
    elsewhere.  Mixtures of these are exactly the simulable measurements.
    """
    eye = identity()
    atoms = []
    for _ in range(n_atoms):
        slots = [np.zeros((2, 2), dtype=complex) for _ in range(n_outcomes)]
        if rng.uniform() < 0.25:
            slots[rng.integers(n_outcomes)] = eye.copy()
        else:
            i, j = rng.choice(n_outcomes, size=2, replace=False)
            p = random_rank1_projector(rng)
            slots[int(i)] = p
            slots[int(j)] = eye - p
        atoms.append(slots)
    weights = rng.dirichlet(np.ones(n_atoms))
    return weights, atoms
