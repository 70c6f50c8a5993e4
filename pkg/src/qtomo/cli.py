"""qtomo command line: exact and sampled tomography, sweeps, reconstruction,
and Bloch plane geometry, reported as JSON (default) or CSV.

Every report carries the same top-level JSON keys (command, inputs, steps,
stokes, reconstruction, metrics, seed); sections that do not apply are null.
Floats are serialized with 17 significant digits so that reports round-trip
exactly and repeated seeded runs are byte-identical.

Exit codes: 0 success, 2 validation/usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import secrets
import sys

import numpy as np

from .states import PureQubit, StokesVector, fidelity, pure_density, stokes_of
from .tomography import (
    bloch_geometry,
    derive_seed,
    estimate_stokes,
    exact_stokes,
    protocol_steps,
    reconstruct,
    run_tomography,
    step_payoffs,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3

_U64_MAX = (1 << 64) - 1


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _dumps(obj, level: int = 0) -> str:
    """Minimal deterministic JSON emitter with 17-significant-digit floats."""
    pad = "  " * level
    inner = "  " * (level + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(k)}: {_dumps(v, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [f"{inner}{_dumps(v, level + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt(obj)
    return json.dumps(obj)


def _csv_cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return _fmt(v)
    return str(v)


def _csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_csv_cell(v) for v in row])
    return buf.getvalue()


def _u64(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if not 0 <= value <= _U64_MAX:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return value


def _resolve_seed(args) -> int:
    """--seed wins; then QTOMO_SEED; otherwise fresh entropy (still echoed)."""
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("QTOMO_SEED")
    if env is not None:
        try:
            value = int(env)
        except ValueError:
            raise ValueError(f"QTOMO_SEED must be an integer, got {env!r}")
        if not 0 <= value <= _U64_MAX:
            raise ValueError("QTOMO_SEED must fit in an unsigned 64-bit integer")
        return value
    return secrets.randbits(64)


def _angles(args) -> PureQubit:
    theta, phi = args.theta, args.phi
    if args.degrees:
        theta, phi = math.radians(theta), math.radians(phi)
    return PureQubit(theta, phi)


def _stokes_json(s: StokesVector) -> dict:
    return {"s0": s.s0, "s1": s.s1, "s2": s.s2, "s3": s.s3}


def _rho_json(rho: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(rho)]


def _rho_cells(rho: np.ndarray) -> list[float]:
    out = []
    for row in np.asarray(rho):
        for z in row:
            out.extend([float(z.real), float(z.imag)])
    return out


_RHO_COLUMNS = [
    "rho00_re", "rho00_im", "rho01_re", "rho01_im",
    "rho10_re", "rho10_im", "rho11_re", "rho11_im",
]


def _cmd_exact(args):
    q = _angles(args)
    rho = pure_density(q)
    payoffs = step_payoffs(rho)
    exact = exact_stokes(rho)
    reference = stokes_of(rho)
    residual = max(
        abs(exact.s0 - reference.s0),
        abs(exact.s1 - reference.s1),
        abs(exact.s2 - reference.s2),
        abs(exact.s3 - reference.s3),
    )
    steps = []
    for i, (step, pay) in enumerate(zip(protocol_steps(), payoffs)):
        steps.append(
            {
                "step": i + 1,
                "label": step.label,
                "beta_a": step.strategy_a.beta,
                "alpha_a": step.strategy_a.alpha,
                "beta_b": step.strategy_b.beta,
                "alpha_b": step.strategy_b.alpha,
                "alice": pay.alice,
                "bob": pay.bob,
            }
        )
    report = {
        "command": "exact",
        "inputs": {"theta": q.theta, "phi": q.phi},
        "steps": steps,
        "stokes": _stokes_json(exact),
        "reconstruction": None,
        "metrics": {"stokes_residual": residual},
        "seed": args.seed,
    }
    by_label = {p.label: p for p in payoffs}
    header = ["theta", "phi", "s1", "s2", "s3",
              "alice_s1", "bob_s1", "alice_s2", "bob_s2", "alice_s3", "bob_s3", "residual"]
    row = [q.theta, q.phi, exact.s1, exact.s2, exact.s3,
           by_label["S1"].alice, by_label["S1"].bob,
           by_label["S2"].alice, by_label["S2"].bob,
           by_label["S3"].alice, by_label["S3"].bob, residual]
    return report, header, [row]


def _sample_row(q: PureQubit, result, trial: int, seed: int) -> list:
    est = {e.step_label: e for e in result.per_step}
    s = result.stokes_est
    return (
        [trial, q.theta, q.phi, est["S1"].shots, seed, s.s1, s.s2, s.s3,
         est["S1"].std_error, est["S2"].std_error, est["S3"].std_error]
        + _rho_cells(result.rho_hat)
        + [result.projected, result.fidelity, result.trace_dist]
    )


def _cmd_sample(args):
    if args.shots < 1:
        raise ValueError("shots must be >= 1")
    if args.trials < 1:
        raise ValueError("trials must be >= 1")
    q = _angles(args)
    master = _resolve_seed(args)
    if args.trials == 1:
        trial_seeds = [master]
    else:
        trial_seeds = [derive_seed(master, t) for t in range(args.trials)]
    results = [run_tomography(q, args.shots, ts) for ts in trial_seeds]
    first = results[0]
    steps = [
        {
            "step": i + 1,
            "label": e.step_label,
            "shots": e.shots,
            "seed": e.seed,
            "value": e.value,
            "std_error": e.std_error,
        }
        for i, e in enumerate(first.per_step)
    ]
    metrics = {"fidelity": first.fidelity, "trace_distance": first.trace_dist}
    if args.trials > 1:
        fidelities = sorted(r.fidelity for r in results)
        metrics["trials"] = args.trials
        metrics["median_fidelity"] = float(np.median([r.fidelity for r in results]))
        metrics["min_fidelity"] = fidelities[0]
        metrics["per_trial"] = [
            {
                "trial": t,
                "seed": ts,
                "fidelity": r.fidelity,
                "trace_distance": r.trace_dist,
                "projected": r.projected,
            }
            for t, (ts, r) in enumerate(zip(trial_seeds, results))
        ]
    report = {
        "command": "sample",
        "inputs": {"theta": q.theta, "phi": q.phi, "shots": args.shots, "trials": args.trials},
        "steps": steps,
        "stokes": _stokes_json(first.stokes_est),
        "reconstruction": {
            "rho": _rho_json(first.rho_hat),
            "projected": first.projected,
            "bloch_norm": first.stokes_est.bloch_norm(),
        },
        "metrics": metrics,
        "seed": master,
    }
    header = (
        ["trial", "theta", "phi", "shots", "seed", "s1_hat", "s2_hat", "s3_hat",
         "stderr_s1", "stderr_s2", "stderr_s3"]
        + _RHO_COLUMNS
        + ["projected", "fidelity", "trace_distance"]
    )
    rows = [_sample_row(q, r, t, ts) for t, (ts, r) in enumerate(zip(trial_seeds, results))]
    return report, header, rows


def _cmd_sweep(args):
    if args.theta_steps < 2 or args.phi_steps < 2:
        raise ValueError("sweep needs at least 2 grid steps per axis")
    if args.shots < 1:
        raise ValueError("shots must be >= 1")
    master = _resolve_seed(args)
    thetas = np.linspace(0.0, math.pi, args.theta_steps)
    phis = np.arange(args.phi_steps) * (2.0 * math.pi / args.phi_steps)
    rows = []
    cells = []
    for i, theta in enumerate(thetas):
        for j, phi in enumerate(phis):
            cell_seed = derive_seed(master, i * args.phi_steps + j)
            q = PureQubit(float(theta), float(phi))
            rho = pure_density(q)
            exact = exact_stokes(rho)
            est = estimate_stokes(rho, args.shots, cell_seed)
            rho_hat, _ = reconstruct(est.stokes_est)
            fid = fidelity(q, rho_hat)
            s = est.stokes_est
            rows.append([q.theta, q.phi, exact.s1, exact.s2, exact.s3, s.s1, s.s2, s.s3, fid])
            cells.append(
                {
                    "theta": q.theta,
                    "phi": q.phi,
                    "s1": exact.s1,
                    "s2": exact.s2,
                    "s3": exact.s3,
                    "s1_hat": s.s1,
                    "s2_hat": s.s2,
                    "s3_hat": s.s3,
                    "fidelity": fid,
                    "seed": cell_seed,
                }
            )
    report = {
        "command": "sweep",
        "inputs": {"theta_steps": args.theta_steps, "phi_steps": args.phi_steps, "shots": args.shots},
        "steps": cells,
        "stokes": None,
        "reconstruction": None,
        "metrics": {"cells": len(cells)},
        "seed": master,
    }
    header = ["theta", "phi", "s1", "s2", "s3", "s1_hat", "s2_hat", "s3_hat", "fidelity"]
    return report, header, rows


def _cmd_reconstruct(args):
    raw = StokesVector(1.0, args.s1, args.s2, args.s3)
    rho_hat, projected = reconstruct(raw, project=True)
    report = {
        "command": "reconstruct",
        "inputs": {"s1": args.s1, "s2": args.s2, "s3": args.s3},
        "steps": None,
        "stokes": _stokes_json(stokes_of(rho_hat)),
        "reconstruction": {
            "rho": _rho_json(rho_hat),
            "projected": projected,
            "bloch_norm": raw.bloch_norm(),
        },
        "metrics": None,
        "seed": args.seed,
    }
    header = ["s1", "s2", "s3"] + _RHO_COLUMNS + ["projected", "bloch_norm"]
    row = [args.s1, args.s2, args.s3] + _rho_cells(rho_hat) + [projected, raw.bloch_norm()]
    return report, header, [row]


def _cmd_bloch(args):
    q = _angles(args)
    geo = bloch_geometry(q)
    report = {
        "command": "bloch",
        "inputs": {"theta": q.theta, "phi": q.phi},
        "steps": None,
        "stokes": {"s0": 1.0, "s1": geo.point[0], "s2": geo.point[1], "s3": geo.point[2]},
        "reconstruction": None,
        "metrics": {
            "plane_x": geo.plane_x,
            "plane_y": geo.plane_y,
            "plane_z": geo.plane_z,
            "point": list(geo.point),
        },
        "seed": args.seed,
    }
    header = ["theta", "phi", "plane_x", "plane_y", "plane_z", "x", "y", "z"]
    row = [q.theta, q.phi, geo.plane_x, geo.plane_y, geo.plane_z] + list(geo.point)
    return report, header, [row]


_HANDLERS = {
    "exact": _cmd_exact,
    "sample": _cmd_sample,
    "sweep": _cmd_sweep,
    "reconstruct": _cmd_reconstruct,
    "bloch": _cmd_bloch,
}


def _add_angle_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--theta", type=float, required=True, help="polar angle in radians")
    p.add_argument("--phi", type=float, required=True, help="azimuthal angle in radians")
    p.add_argument("--degrees", action="store_true", help="interpret --theta/--phi in degrees")


def _add_output_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None, help="output path (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="qtomo",
        description="Single-qubit tomography via a two-player game protocol.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exact", help="exact per-step payoffs and Stokes vector")
    _add_angle_args(p)
    p.add_argument("--seed", type=_u64, default=None, help="echoed in the report; unused")
    _add_output_args(p)

    p = sub.add_parser("sample", help="finite-shot tomography of one pure state")
    _add_angle_args(p)
    p.add_argument("--shots", type=int, default=8192, help="shots per step (default 8192)")
    p.add_argument("--seed", type=_u64, default=None)
    p.add_argument("--trials", type=int, default=1, help="independent repetitions")
    _add_output_args(p)

    p = sub.add_parser("sweep", help="exact + sampled Stokes over a (theta, phi) grid")
    p.add_argument("--theta-steps", type=int, default=5)
    p.add_argument("--phi-steps", type=int, default=5)
    p.add_argument("--shots", type=int, default=8192, help="shots per step per cell")
    p.add_argument("--seed", type=_u64, default=None)
    _add_output_args(p)

    p = sub.add_parser("reconstruct", help="density matrix from given Stokes values")
    p.add_argument("--s1", type=float, required=True)
    p.add_argument("--s2", type=float, required=True)
    p.add_argument("--s3", type=float, required=True)
    p.add_argument("--seed", type=_u64, default=None, help="echoed in the report; unused")
    _add_output_args(p)

    p = sub.add_parser("bloch", help="measurement planes and Bloch point of a pure state")
    _add_angle_args(p)
    p.add_argument("--seed", type=_u64, default=None, help="echoed in the report; unused")
    _add_output_args(p)

    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report, header, rows = _HANDLERS[args.command](args)
    except (ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = _dumps(report) + "\n" if args.format == "json" else _csv_text(header, rows)
    if args.out is not None:
        try:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_IO
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
