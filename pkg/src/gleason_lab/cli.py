"""Command-line interface.

Subcommands: decompose (staircase + projective mixture of a two-outcome
measurement), simulable (membership certificate), reproduce (fixed report
checked against frozen constants), rigidity (frame-system solution-space
report over a seeded measurement sample) and cross-section (effect-space
boundary point cloud for plotting).

Exit codes: 0 success or simulable, 1 negative finding, 2 input error,
3 inconclusive.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import constants
from .config import EIGENVALUE_TOL, TOLERANCE_ENV_VAR
from .errors import GleasonLabError
from .frames import (
    build_system,
    centered_solution,
    check_frame,
    counterexample_g,
    fit_density,
    mixture_outcome_probability,
    sample_3psm_prime,
    sample_binary_pvms,
    sample_two_outcome_poms,
    solve_space,
)
from .measurements import Measurement, catalog, d_e, effect_catalog, mix
from .operators import bloch_to_effect
from .serialize import (
    dumps,
    hermitian_from_json,
    hermitian_to_json,
    measurement_from_json,
    mixture_to_json,
    staircase_to_json,
    verdict_to_json,
)
from .simulability import (
    INCONCLUSIVE,
    NOT_SIMULABLE,
    SIMULABLE,
    membership,
    simulate_two_outcome,
    staircase,
    verify_decomposition,
)

_EXIT_BY_STATUS = {SIMULABLE: 0, NOT_SIMULABLE: 1, INCONCLUSIVE: 3}
_REPRODUCE_TOL = 1e-12
_PERTURB_DELTA = 1e-6


def _tolerance(args, fallback):
    if getattr(args, "tol", None) is not None:
        return args.tol
    env = os.environ.get(TOLERANCE_ENV_VAR)
    if env:
        return float(env)
    return fallback


def _emit(text: str, args) -> None:
    if getattr(args, "output", None):
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load_json(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


# ---------------------------------------------------------------------------
# decompose
# ---------------------------------------------------------------------------

def _decompose_effect(args) -> np.ndarray:
    if args.bloch is not None:
        parts = [float(x) for x in args.bloch.split(",")]
        if len(parts) != 4:
            raise ValueError("--bloch expects four comma-separated numbers")
        return bloch_to_effect(tuple(parts))
    if args.catalog is not None:
        named = effect_catalog()
        if args.catalog not in named:
            raise ValueError(
                f"unknown effect {args.catalog!r}; choices: {sorted(named)}"
            )
        return named[args.catalog]
    return hermitian_from_json(_load_json(args.input))


def cmd_decompose(args) -> int:
    effect = _decompose_effect(args)
    stair = staircase(effect)
    mixture = simulate_two_outcome(effect)
    verified = verify_decomposition(
        d_e(effect), mixture, _tolerance(args, EIGENVALUE_TOL)
    )
    payload = {
        "staircase": staircase_to_json(stair),
        "mixture": mixture_to_json(mixture),
        "verified": bool(verified),
    }
    _emit(dumps(payload), args)
    return 0


# ---------------------------------------------------------------------------
# simulable
# ---------------------------------------------------------------------------

def cmd_simulable(args) -> int:
    if args.catalog is not None:
        named = catalog(args.p)
        if args.catalog not in named:
            raise ValueError(
                f"unknown measurement {args.catalog!r}; choices: {sorted(named)}"
            )
        m = named[args.catalog]
    else:
        m = measurement_from_json(_load_json(args.input))
    verdict = membership(m, tol=_tolerance(args, None), max_iter=args.max_iter)
    _emit(dumps(verdict_to_json(verdict)), args)
    return _EXIT_BY_STATUS[verdict.status]


# ---------------------------------------------------------------------------
# reproduce
# ---------------------------------------------------------------------------

def _perturbed_catalog(name: str | None) -> dict[str, Measurement]:
    cat = catalog()
    if name is None:
        return cat
    if name not in ("M_x", "M_z", "M_r", "M_s"):
        raise ValueError(f"--perturb accepts M_x, M_z, M_r or M_s, not {name!r}")
    m = cat[name]
    delta = _PERTURB_DELTA
    slots = m.effects.copy()
    first, second = slots[0].copy(), slots[1].copy()
    slots[0] = (1.0 - delta) * first + delta * second
    slots[1] = (1.0 - delta) * second + delta * first
    cat[name] = Measurement(slots)
    return cat


def reproduce_report(perturb: str | None = None) -> dict:
    """Fixed-input consistency report, compared against frozen constants.

    `perturb` is a test hook naming one axis measurement whose first two
    effects get slightly mixed before checking, so the failure path is
    exercisable.
    """
    cat = _perturbed_catalog(perturb)
    checks = []

    def record(name: str, expected: float, actual: float):
        checks.append(
            {
                "name": name,
                "expected": float(expected),
                "actual": float(actual),
                "pass": bool(abs(actual - expected) <= _REPRODUCE_TOL),
            }
        )

    for name, row in constants.EXPECTED_OUTCOME_PROBABILITIES.items():
        for j, expected in enumerate(row):
            record(f"{name}[{j}]", expected, counterexample_g(cat[name][j]))

    xz_parts = [(0.5, cat["M_x"]), (0.5, cat["M_z"])]
    rs_parts = [
        (constants.MIX_WEIGHT_PLUS, cat["M_r"]),
        (constants.MIX_WEIGHT_MINUS, cat["M_s"]),
    ]
    record(
        "mix(x,z)[0]",
        constants.EXPECTED_XZ_MIX_FIRST,
        mixture_outcome_probability(counterexample_g, xz_parts, 0),
    )
    record(
        "mix(r,s)[0]",
        constants.EXPECTED_RS_MIX_FIRST,
        mixture_outcome_probability(counterexample_g, rs_parts, 0),
    )

    xz = mix(xz_parts)
    rs = mix(rs_parts)
    shared = d_e(bloch_to_effect(constants.SHARED_EFFECT_BLOCH))
    record("mix(x,z)=mix(r,s)", 0.0, float(np.max(np.abs(xz.effects - rs.effects))))
    record("mix(x,z)=binary(m)", 0.0, float(np.max(np.abs(xz.effects - shared.effects))))
    return {"checks": checks, "all_pass": all(c["pass"] for c in checks)}


def _reproduce_csv(report: dict) -> str:
    # check names may contain commas, so emit real CSV with quoting
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["name", "expected", "actual", "pass"])
    for c in report["checks"]:
        writer.writerow(
            [c["name"], repr(c["expected"]), repr(c["actual"]), str(c["pass"]).lower()]
        )
    return buf.getvalue()


def cmd_reproduce(args) -> int:
    report = reproduce_report(args.perturb)
    if args.format == "csv":
        _emit(_reproduce_csv(report), args)
    else:
        _emit(dumps(report), args)
    return 0 if report["all_pass"] else 1


# ---------------------------------------------------------------------------
# rigidity
# ---------------------------------------------------------------------------

def _parse_counts(text: str, how_many: int) -> list[int]:
    parts = [int(x) for x in text.split(",")]
    if len(parts) != how_many or any(p < 0 for p in parts):
        raise ValueError(
            f"--counts expects {how_many} nonnegative integer(s), got {text!r}"
        )
    return parts


def cmd_rigidity(args) -> int:
    if args.set == "pvm":
        (count,) = _parse_counts(args.counts, 1)
        ms = sample_binary_pvms(args.seed, count)
    elif args.set == "2pom":
        (count,) = _parse_counts(args.counts, 1)
        ms = sample_two_outcome_poms(args.seed, count)
    else:
        a, b, c = _parse_counts(args.counts, 3)
        ms = sample_3psm_prime(args.seed, a, b, c)
    system = build_system(ms)
    space = solve_space(system)
    _, violations = check_frame(counterexample_g, ms, tol=1e-9)
    fit = fit_density(system.registry, centered_solution(system, space))
    payload = {
        "n_effects": len(system.registry),
        "n_rows": len(system.rows),
        "affine_dim": space.affine_dim,
        "fit": {
            "rho": hermitian_to_json(fit.rho),
            "residual": fit.residual,
            "psd": fit.psd,
        },
        "violations": violations,
    }
    if args.set == "3psmprime":
        g_values = np.array([counterexample_g(e) for e in system.registry.effects])
        payload["g_residual"] = fit_density(system.registry, g_values).residual
    _emit(dumps(payload), args)
    return 0


# ---------------------------------------------------------------------------
# cross-section
# ---------------------------------------------------------------------------

_AXIS_SLOT = {"x": 1, "y": 2, "z": 3}


def cmd_cross_section(args) -> int:
    res = args.resolution
    if res < 8:
        raise ValueError("--resolution must be at least 8")
    kept = [s for a, s in _AXIS_SLOT.items() if a != args.axis]
    rows: list[tuple] = []

    def point(kind: str, a: float, radius: float, theta: float):
        coords = [a, 0.0, 0.0, 0.0]
        coords[kept[0]] = radius * math.cos(theta)
        coords[kept[1]] = radius * math.sin(theta)
        rows.append((kind, *coords))

    rows.append(("extremal", 0.0, 0.0, 0.0, 0.0))
    rows.append(("extremal", 1.0, 0.0, 0.0, 0.0))
    levels = max(res // 2, 1)
    angles = [2.0 * math.pi * k / res for k in range(res)]
    for level in range(1, levels + 1):
        r = 0.5 * level / levels
        for theta in angles:
            point("boundary_lower", r, r, theta)
    for level in range(1, levels + 1):
        r = 0.5 * level / levels
        for theta in angles:
            point("boundary_upper", 1.0 - r, r, theta)
    for theta in angles:
        point("projector_circle", 0.5, 0.5, theta)

    lines = ["kind,a,x,y,z"]
    for kind, a, x, y, z in rows:
        lines.append(f"{kind},{a!r},{x!r},{y!r},{z!r}")
    _emit("\n".join(lines) + "\n", args)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gleason-lab",
        description="Qubit measurement algebra, simulability certificates "
        "and frame-function rigidity reports.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="staircase + projective mixture of [e, I-e]")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--bloch", help="effect coefficients a,b,c,d")
    src.add_argument("--catalog", help="named effect")
    src.add_argument("--input", help="hermitian JSON file")
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("simulable", help="projective-simulability certificate")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--catalog", help="named measurement")
    src.add_argument("--input", help="measurement JSON file")
    p.add_argument("--p", type=float, default=0.5, help="weight for the M_xz family")
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--max-iter", type=int, default=None)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_simulable)

    p = sub.add_parser("reproduce", help="check the frozen reference report")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--perturb", default=None, help="test hook: distort one axis measurement")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("rigidity", help="frame-system solution-space report")
    p.add_argument("--set", choices=("pvm", "2pom", "3psmprime"), required=True)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--counts", required=True, help="sample sizes, comma separated")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_rigidity)

    p = sub.add_parser("cross-section", help="effect-space boundary point cloud")
    p.add_argument("--axis", choices=("x", "y", "z"), required=True)
    p.add_argument("--resolution", type=int, required=True)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_cross_section)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GleasonLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
