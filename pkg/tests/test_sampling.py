"""Random generators: validity, determinism, distribution sanity."""

import numpy as np

from gleason_lab import identity, is_density, is_effect, is_projector
from gleason_lab.sampling import (
    haar_unitary,
    random_bloch_coefficients,
    random_bloch_effect,
    random_density,
    random_effect,
    random_orthogonal_projectors,
    random_projective_mixture,
    random_rank1_projector,
    random_unit_vector,
)


def test_unit_vectors_and_bloch_effects():
    rng = np.random.default_rng(83)
    for _ in range(100):
        v = random_unit_vector(rng)
        assert np.linalg.norm(v) == 1.0 or abs(np.linalg.norm(v) - 1.0) < 1e-12
        coeffs = random_bloch_coefficients(rng)
        assert coeffs.is_effect()
        assert is_effect(random_bloch_effect(rng))


def test_haar_unitary_and_general_effects():
    rng = np.random.default_rng(89)
    for dim in (2, 3, 5):
        u = haar_unitary(rng, dim)
        assert np.allclose(u @ u.conj().T, identity(dim), atol=1e-12)
        assert is_effect(random_effect(rng, dim))


def test_density_and_projector_samplers():
    rng = np.random.default_rng(97)
    for dim in (2, 3):
        assert is_density(random_density(rng, dim))
    p = random_rank1_projector(rng)
    assert is_projector(p)
    assert np.trace(p).real == 1.0 or abs(np.trace(p).real - 1.0) < 1e-12


def test_orthogonal_projector_families_resolve_identity():
    rng = np.random.default_rng(101)
    for _ in range(25):
        ps = random_orthogonal_projectors(rng, 3)
        total = np.sum(ps, axis=0)
        assert np.allclose(total, identity(3), atol=1e-12)
        for i, p in enumerate(ps):
            assert is_projector(p)
            for q in ps[i + 1:]:
                assert np.max(np.abs(p @ q)) < 1e-12
    sized = random_orthogonal_projectors(rng, 3, sizes=[1, 2])
    assert [int(np.trace(p).real + 0.5) for p in sized] == [1, 2]


def test_projective_mixture_combines_to_measurement():
    rng = np.random.default_rng(103)
    weights, atoms = random_projective_mixture(rng)
    assert abs(weights.sum() - 1.0) < 1e-12 and weights.min() >= 0.0
    effects = [
        sum(w * slots[k] for w, slots in zip(weights, atoms)) for k in range(3)
    ]
    assert np.allclose(np.sum(effects, axis=0), identity(), atol=1e-12)
    for e in effects:
        assert is_effect(e)


def test_samplers_deterministic_per_seed():
    a = random_effect(np.random.default_rng(5), 3)
    b = random_effect(np.random.default_rng(5), 3)
    assert np.array_equal(a, b)
