"""JSON payloads for operators, measurements and verdicts.

Complex matrices travel as row-major [re, im] pairs.  All emitters go
through dumps(), which sorts keys and fixes the indentation so identical
inputs serialize to identical bytes.
"""

from __future__ import annotations

import json

import numpy as np

from .config import EIGENVALUE_TOL, HERMITIAN_TOL
from .errors import MissingValue, ShapeMismatch
from .measurements import Measurement, make_measurement
from .operators import is_hermitian
from .simulability import (
    NOT_SIMULABLE,
    SIMULABLE,
    MixtureDecomposition,
    SimulabilityVerdict,
    StaircaseDecomposition,
)


def dumps(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def hermitian_to_json(h) -> dict:
    m = np.asarray(h, dtype=complex)
    flat = m.reshape(-1)
    return {
        "dim": int(m.shape[0]),
        "entries": [[float(z.real), float(z.imag)] for z in flat],
    }


def hermitian_from_json(obj) -> np.ndarray:
    try:
        dim = int(obj["dim"])
        entries = obj["entries"]
    except (KeyError, TypeError) as exc:
        raise MissingValue("hermitian payload needs 'dim' and 'entries'") from exc
    if dim < 1 or len(entries) != dim * dim:
        raise ShapeMismatch(
            f"expected {dim * dim} entries for dim {dim}, got {len(entries)}"
        )
    flat = np.array([complex(re, im) for re, im in entries])
    m = flat.reshape(dim, dim)
    if not is_hermitian(m, HERMITIAN_TOL):
        raise ShapeMismatch("payload entries are not Hermitian")
    return m


def measurement_to_json(m: Measurement) -> dict:
    return {
        "dim": int(m.dim),
        "effects": [hermitian_to_json(e) for e in m],
    }


def measurement_from_json(obj, tol: float = EIGENVALUE_TOL) -> Measurement:
    try:
        effects = obj["effects"]
    except (KeyError, TypeError) as exc:
        raise MissingValue("measurement payload needs 'effects'") from exc
    return make_measurement([hermitian_from_json(e) for e in effects], tol)


def mixture_to_json(dec: MixtureDecomposition) -> list:
    return [
        {"weight": float(w), "measurement": measurement_to_json(m)}
        for w, m in dec.parts
    ]


def staircase_to_json(dec: StaircaseDecomposition) -> dict:
    return {
        "probabilities": [float(p) for p in dec.probabilities],
        "projectors": [hermitian_to_json(q) for q in dec.projectors],
    }


def verdict_to_json(v: SimulabilityVerdict) -> dict:
    witness = mixture_to_json(v.witness) if v.status == SIMULABLE else None
    certificate = None
    if v.status == NOT_SIMULABLE:
        certificate = {
            "separator": [hermitian_to_json(g) for g in v.separator],
            "margin": float(v.margin),
        }
    return {
        "status": v.status,
        "witness": witness,
        "certificate": certificate,
        "gap": float(v.gap),
        "iterations": int(v.iterations),
    }
