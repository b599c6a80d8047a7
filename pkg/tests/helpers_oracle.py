"""Independent oracles for derived acceptance values.

Nothing in this file imports the package under test.  The margin of the
trine measurement against the projective hull is recomputed from scratch as
a linear program over a dense fixed discretization of the Bloch sphere, and
the real embedding of measurements is rebuilt locally so rank computations
in the acceptance tests do not lean on library code.  Frozen results are
cited in test_acceptance.py; run this module directly to regenerate them.
"""

import math
import time

import numpy as np
from scipy import sparse
from scipy.optimize import linprog

# Trine axes: unit vectors in the x-z plane, 120 degrees apart.
TRINE_AXES = np.array(
    [
        [1.0, 0.0, 0.0],
        [-0.5, 0.0, math.sqrt(3.0) / 2.0],
        [-0.5, 0.0, -math.sqrt(3.0) / 2.0],
    ]
)

_PAIR_SLOTS = ((0, 1), (0, 2), (1, 2))


def fibonacci_sphere(n: int) -> np.ndarray:
    """n reasonably even unit vectors from the golden-angle spiral."""
    k = np.arange(n, dtype=float)
    phi = math.pi * (3.0 - math.sqrt(5.0)) * k
    z = 1.0 - (2.0 * k + 1.0) / n
    r = np.sqrt(np.maximum(1.0 - z * z, 0.0))
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])


def embed_effect(h) -> np.ndarray:
    """Real 4-vector of a 2x2 Hermitian preserving the trace inner product."""
    h = np.asarray(h)
    return np.array(
        [
            h[0, 0].real,
            h[1, 1].real,
            math.sqrt(2.0) * h[0, 1].real,
            math.sqrt(2.0) * h[0, 1].imag,
        ]
    )


def embed_measurement(effects) -> np.ndarray:
    """Concatenated effect embeddings; 3-outcome qubit inputs give 12-vectors."""
    return np.concatenate([embed_effect(e) for e in effects])


def _projector_coords(dirs: np.ndarray) -> np.ndarray:
    # embedding of (1 + u.sigma)/2 for every row u, vectorized
    x, y, z = dirs[:, 0], dirs[:, 1], dirs[:, 2]
    inv = 1.0 / math.sqrt(2.0)
    return np.column_stack(
        [(1.0 + z) / 2.0, (1.0 - z) / 2.0, x * inv, -y * inv]
    )


def _trine_coords(vis: float) -> np.ndarray:
    # effects (1 + vis * u_i.sigma)/3 concatenated
    out = np.empty(12)
    for i, u in enumerate(TRINE_AXES):
        x, y, z = vis * u
        out[4 * i : 4 * i + 4] = [
            (1.0 + z) / 3.0,
            (1.0 - z) / 3.0,
            x / math.sqrt(2.0) / 1.5,
            -y / math.sqrt(2.0) / 1.5,
        ]
    return out


def trine_margin_lp(n_directions: int = 334_000) -> dict:
    """Distance-based separation margin of the trine via a hull LP.

    Atoms are three-outcome placements of projective measurements: a
    projector/complement pair dropped into one of the three unordered slot
    pairs (n_directions each) plus the identity in a single slot (3 more).
    The LP maximizes the visibility v at which the depolarized trine
    (1 + v u_i.sigma)/3 still sits in the convex hull of the atoms.

    The hull is invariant under the trine's symmetry group (rotation by 120
    degrees about y combined with cyclic slot permutation, and the z-flip
    with a slot swap), so the Euclidean projection of the trine onto the
    hull stays on the depolarizing segment, and the separation margin equals
    (1 - v*) times the embedded distance from the trine to its fully mixed
    smearing.
    """
    dirs = fibonacci_sphere(n_directions)
    n = n_directions
    pc = _projector_coords(dirs)
    cc = np.array([1.0, 1.0, 0.0, 0.0]) - pc

    data = []
    rows = []
    cols = []
    offset = 0
    for i, j in _PAIR_SLOTS:
        block = np.hstack([pc, cc, np.ones((n, 1))])
        r = np.tile(
            np.r_[4 * i + np.arange(4), 4 * j + np.arange(4), 12], (n, 1)
        )
        c = np.repeat(offset + np.arange(n), 9).reshape(n, 9)
        data.append(block.ravel())
        rows.append(r.ravel())
        cols.append(c.ravel())
        offset += n
    for k in range(3):
        data.append(np.array([1.0, 1.0, 1.0]))
        rows.append(np.array([4 * k, 4 * k + 1, 12]))
        cols.append(np.full(3, offset))
        offset += 1

    center = _trine_coords(0.0)
    delta = _trine_coords(1.0) - center
    data.append(-delta)
    rows.append(np.arange(12))
    cols.append(np.full(12, offset))
    ncols = offset + 1

    a_eq = sparse.coo_matrix(
        (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))),
        shape=(13, ncols),
    ).tocsc()
    b_eq = np.r_[center, 1.0]
    cost = np.zeros(ncols)
    cost[-1] = -1.0

    res = linprog(cost, A_eq=a_eq, b_eq=b_eq, bounds=(0, None), method="highs")
    if not res.success:
        raise RuntimeError(f"hull LP failed: {res.message}")
    v_star = float(res.x[-1])
    return {
        "n_atoms": ncols - 1,
        "v_star": v_star,
        "margin": (1.0 - v_star) * float(np.linalg.norm(delta)),
    }


if __name__ == "__main__":
    t0 = time.time()
    out = trine_margin_lp()
    elapsed = time.time() - t0
    analytic = (1.0 - math.sqrt(3.0) / 2.0) * math.sqrt(2.0 / 3.0)
    print(f"atoms      : {out['n_atoms']}")
    print(f"v*         : {out['v_star']!r}")
    print(f"margin     : {out['margin']!r}")
    print(f"analytic   : {analytic!r}")
    print(f"difference : {abs(out['margin'] - analytic):.3e}")
    print(f"elapsed    : {elapsed:.1f}s")
