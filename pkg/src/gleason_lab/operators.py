"""Dense Hermitian operator arithmetic for low-dimensional measurement theory.

Bloch convention: a qubit operator is written  a*I + b*sx + c*sy + d*sz,
and the +z pole of the Bloch sphere is the projector |0><0| = (I + sz)/2.
All functions treat their inputs as immutable and return fresh arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .config import EIGENVALUE_TOL, HERMITIAN_TOL, PROJECTOR_TOL
from .errors import ConvergenceFailure, DimensionMismatch, NotAnEffect

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
for _m in (SIGMA_X, SIGMA_Y, SIGMA_Z):
    _m.setflags(write=False)


def identity(dim: int = 2) -> np.ndarray:
    return np.eye(dim, dtype=complex)


def zero(dim: int = 2) -> np.ndarray:
    return np.zeros((dim, dim), dtype=complex)


def as_operator(h) -> np.ndarray:
    """Coerce to a square complex matrix; raises DimensionMismatch otherwise."""
    m = np.asarray(h, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
    return m


def is_hermitian(h, tol: float = HERMITIAN_TOL) -> bool:
    m = as_operator(h)
    return bool(np.max(np.abs(m - m.conj().T)) <= tol)


def _require_hermitian(h, tol: float = HERMITIAN_TOL) -> np.ndarray:
    m = as_operator(h)
    dev = float(np.max(np.abs(m - m.conj().T)))
    if dev > tol:
        raise ValueError(f"matrix is not Hermitian (asymmetry {dev:.3e})")
    return m


class BlochCoefficients(NamedTuple):
    """Real coefficients (a, b, c, d) of a*I + b*sx + c*sy + d*sz."""

    a: float
    b: float
    c: float
    d: float

    @property
    def radius(self) -> float:
        return math.sqrt(self.b * self.b + self.c * self.c + self.d * self.d)

    def is_effect(self, tol: float = EIGENVALUE_TOL) -> bool:
        # Eigenvalues are a - r and a + r; both must sit in [0, 1].
        r = self.radius
        return self.a - r >= -tol and self.a + r <= 1.0 + tol


def bloch_to_effect(coeffs, tol: float = EIGENVALUE_TOL) -> np.ndarray:
    """Build the qubit effect with the given Bloch coefficients.

    Raises NotAnEffect when the resulting eigenvalues a +/- r leave [0, 1]
    by more than `tol`.
    """
    c = BlochCoefficients(*(float(v) for v in coeffs))
    if not c.is_effect(tol):
        raise NotAnEffect(
            f"coefficients {tuple(c)} give eigenvalues outside [0, 1]: "
            f"{c.a - c.radius:.6g} and {c.a + c.radius:.6g}"
        )
    return c.a * identity() + c.b * SIGMA_X + c.c * SIGMA_Y + c.d * SIGMA_Z


def effect_to_bloch(e) -> BlochCoefficients:
    """Bloch coefficients of a qubit operator (inverse of bloch_to_effect)."""
    m = as_operator(e)
    if m.shape != (2, 2):
        raise DimensionMismatch(f"Bloch coordinates are qubit-only, got shape {m.shape}")
    a = 0.5 * np.trace(m).real
    b = 0.5 * np.trace(m @ SIGMA_X).real
    c = 0.5 * np.trace(m @ SIGMA_Y).real
    d = 0.5 * np.trace(m @ SIGMA_Z).real
    return BlochCoefficients(float(a), float(b), float(c), float(d))


def is_effect(h, tol: float = EIGENVALUE_TOL) -> bool:
    """True when h is Hermitian with eigenvalues in [-tol, 1 + tol]."""
    m = as_operator(h)
    if not is_hermitian(m, tol=max(HERMITIAN_TOL, tol)):
        return False
    w = np.linalg.eigvalsh(m)
    return bool(w[0] >= -tol and w[-1] <= 1.0 + tol)


def is_projector(h, tol: float = PROJECTOR_TOL) -> bool:
    m = as_operator(h)
    if not is_hermitian(m, tol=max(HERMITIAN_TOL, tol)):
        return False
    return bool(np.max(np.abs(m @ m - m)) <= tol)


def is_density(h, tol: float = EIGENVALUE_TOL) -> bool:
    m = as_operator(h)
    if not is_hermitian(m, tol=max(HERMITIAN_TOL, tol)):
        return False
    if abs(np.trace(m).real - 1.0) > tol:
        return False
    return bool(np.linalg.eigvalsh(m)[0] >= -tol)


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues in ascending order with matching rank-one projectors."""

    eigenvalues: np.ndarray  # shape (d,)
    projectors: np.ndarray   # shape (d, d, d)

    def reconstruct(self) -> np.ndarray:
        return np.einsum("k,kij->ij", self.eigenvalues, self.projectors)


def spectral(h) -> SpectralDecomposition:
    """Spectral decomposition of a Hermitian matrix.

    Eigenvalues come back ascending; projectors[k] is the rank-one projector
    onto the k-th eigenvector, so sum_k w_k P_k reconstructs the input.
    """
    m = _require_hermitian(h)
    try:
        w, v = np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - rare
        raise ConvergenceFailure(f"eigendecomposition failed: {exc}") from exc
    projectors = np.einsum("ik,jk->kij", v, v.conj())
    w = np.asarray(w, dtype=float)
    w.setflags(write=False)
    projectors.setflags(write=False)
    return SpectralDecomposition(eigenvalues=w, projectors=projectors)


def born_probability(rho, e) -> float:
    """Outcome probability Tr(rho e), clamped to [0, 1] only when the value
    is within EIGENVALUE_TOL of a boundary."""
    r = as_operator(rho)
    m = as_operator(e)
    if r.shape != m.shape:
        raise DimensionMismatch(f"state {r.shape} vs effect {m.shape}")
    p = float(np.trace(r @ m).real)
    if -EIGENVALUE_TOL <= p < 0.0:
        return 0.0
    if 1.0 < p <= 1.0 + EIGENVALUE_TOL:
        return 1.0
    return p


def hermitian_basis(dim: int) -> np.ndarray:
    """Orthonormal Hermitian basis under <A, B> = Tr(A B).

    The first element is I/sqrt(dim); the rest are traceless (symmetric,
    antisymmetric and diagonal generators).  Shape (dim**2, dim, dim).
    """
    if dim < 1:
        raise DimensionMismatch("dimension must be positive")
    basis = [np.eye(dim, dtype=complex) / math.sqrt(dim)]
    for j in range(dim):
        for k in range(j + 1, dim):
            sym = np.zeros((dim, dim), dtype=complex)
            sym[j, k] = sym[k, j] = 1.0 / math.sqrt(2.0)
            basis.append(sym)
            asym = np.zeros((dim, dim), dtype=complex)
            asym[j, k] = -1.0j / math.sqrt(2.0)
            asym[k, j] = 1.0j / math.sqrt(2.0)
            basis.append(asym)
    for l in range(1, dim):
        diag = np.zeros((dim, dim), dtype=complex)
        diag[:l, :l] = np.eye(l)
        diag[l, l] = -l
        basis.append(diag / math.sqrt(l * (l + 1)))
    out = np.stack(basis)
    out.setflags(write=False)
    return out
