"""Command-line surface: eigenvalue bounds, extension norms, meshes, reports.

Every command writes a single JSON document (or CSV, for tabular reports)
to standard output; notes and discrepancy warnings go to standard error.
Exit status 0 is success, 1 an input or validation problem, 2 a numerical
failure.  Floats are printed with NEUBOUND_PRECISION significant digits
(default 10); runs with identical flags and seed are byte-identical.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

import numpy as np

from . import bounds, extension_norms, fem, geometry, qcmaps, reproduce, special
from .errors import NumericalError

PRECISION_ENV = "NEUBOUND_PRECISION"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # route argparse failures to exit status 1
        raise _UsageError(message)


def _precision() -> int:
    raw = os.environ.get(PRECISION_ENV, "10")
    try:
        digits = int(raw)
    except ValueError:
        raise _UsageError(f"{PRECISION_ENV} must be an integer, got {raw!r}") from None
    if not 1 <= digits <= 17:
        raise _UsageError(f"{PRECISION_ENV} must be in [1, 17], got {digits}")
    return digits


def _round_floats(obj, digits: int):
    if isinstance(obj, bool) or isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(f"{float(obj):.{digits}g}")
    if isinstance(obj, np.ndarray):
        return _round_floats(obj.tolist(), digits)
    if isinstance(obj, dict):
        return {str(k): _round_floats(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v, digits) for v in obj]
    return obj


def _csv_rows(report: dict):
    for key in ("rows", "bounds"):
        rows = report.get(key)
        if isinstance(rows, list) and rows and all(isinstance(r, dict) for r in rows):
            return rows
    return None


def _flatten(row: dict, prefix: str = "") -> dict:
    flat = {}
    for key, value in row.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(_flatten(value, name + "."))
        elif isinstance(value, (list, tuple)):
            flat[name] = json.dumps(value)
        else:
            flat[name] = value
    return flat


def _emit(report: dict, output: str) -> None:
    report = _round_floats(report, _precision())
    if output == "json":
        sys.stdout.write(json.dumps(report, indent=2) + "\n")
        return
    rows = _csv_rows(report)
    if rows is None:
        raise _UsageError("this report has no tabular view; use --output json")
    flat = [_flatten(r) for r in rows]
    fields: list[str] = []
    for r in flat:
        for k in r:
            if k not in fields:
                fields.append(k)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, restval="", lineterminator="\n")
    writer.writeheader()
    writer.writerows(flat)
    sys.stdout.write(buf.getvalue())


def _warn(lines) -> None:
    for line in lines:
        sys.stderr.write(f"warning: {line}\n")


def _domain(source: str) -> geometry.DomainSpec:
    if source in geometry.preset_names():
        return geometry.named_domain(source)
    if source.lstrip().startswith("{"):
        return geometry.load_domain_spec(source)
    if not os.path.exists(source):
        raise _UsageError(
            f"domain {source!r} is neither a preset ({', '.join(geometry.preset_names())}) "
            "nor an existing JSON file"
        )
    return geometry.load_domain_spec(source)


def _cmd_pzero(args) -> dict:
    return {"n": args.n, "p": special.p_zero(args.n, tol=args.tol)}


def _cmd_mikhlin(args) -> dict:
    est = extension_norms.mikhlin_ball_norm_sq(args.n, args.big_r, path=args.path)
    return {
        "n": args.n,
        "R": args.big_r,
        "value_sq": est.value_sq,
        "kind": est.kind,
        "source": est.source,
    }


def _cmd_mikhlin_star(args) -> dict:
    data = extension_norms.StarShapeData(
        m1=args.m1, m2=args.m2, m3=args.m3, n=args.n, big_r=args.big_r
    )
    est = extension_norms.mikhlin_star_norm_sq_bound(data)
    ball = extension_norms.mikhlin_ball_norm_sq(args.n, args.big_r)
    return {
        "m1": args.m1,
        "m2": args.m2,
        "m3": args.m3,
        "n": args.n,
        "R": args.big_r,
        "ball_value_sq": ball.value_sq,
        "value_sq": est.value_sq,
        "kind": est.kind,
        "source": est.source,
    }


def _cmd_qc(args) -> dict:
    if args.matrix:
        matrices = [[row[:2], row[2:]] for row in args.matrix]
        if len(matrices) == 1:
            return {"kind": "affine", "K": qcmaps.affine_qc_coefficient(matrices[0])}
        return {
            "kind": "piecewise_affine",
            "pieces": len(matrices),
            "K": qcmaps.piecewise_qc_coefficient(matrices),
        }
    if args.beta is None:
        raise _UsageError("qc needs either --matrix or --beta")
    if args.gamma is not None:
        return {
            "kind": "spiral",
            "beta": args.beta,
            "gamma": args.gamma,
            "K": qcmaps.spiral_shaped_K(args.beta, args.gamma),
        }
    return {"kind": "star", "beta": args.beta, "K": qcmaps.star_shaped_K(args.beta)}


def _cmd_mecb(args) -> dict:
    spec = _domain(args.domain)
    points = geometry.sample_domain(spec, args.samples)
    ball = geometry.min_enclosing_ball(points, seed=args.seed)
    return {
        "domain": spec.name,
        "points_used": int(len(points)),
        "center": [float(c) for c in ball.center],
        "radius": ball.radius,
    }


def _cmd_bound(args) -> dict:
    spec = _domain(args.domain)
    report = bounds.best_bound_report(spec, n=args.n, samples=args.samples)
    _warn(report.notes)
    return report.as_dict()


def _cmd_fem(args) -> dict:
    spec = _domain(args.domain)
    if args.table:
        rows = []
        for level in range(args.refinement + 1):
            mesh = fem.triangulate(spec, refinement=level, samples=args.samples)
            result = fem.neumann_eigenvalues(mesh, k=args.k)
            rows.append(
                {
                    "refinement": level,
                    "dof_count": result.dof_count,
                    "mesh_size": result.mesh_size,
                    "mu1": result.eigenvalues[1],
                }
            )
        return {"domain": spec.name, "rows": rows}
    mesh = fem.triangulate(spec, refinement=args.refinement, samples=args.samples)
    result = fem.neumann_eigenvalues(mesh, k=args.k)
    return {
        "domain": spec.name,
        "refinement": args.refinement,
        "dof_count": result.dof_count,
        "mesh_size": result.mesh_size,
        "eigenvalues": list(result.eigenvalues),
        "mu1": result.eigenvalues[1],
    }


def _cmd_verify(args) -> dict:
    spec = _domain(args.domain)
    record = fem.verify_bound(
        spec,
        refinement=args.refinement,
        k=args.k,
        samples=args.samples,
        fem_samples=args.fem_samples,
        strict=not args.allow_violation,
    )
    _warn(record["notes"])
    if not record["all_satisfied"]:
        _warn(["at least one bound is not below the finite-element eigenvalue"])
    return record


def _cmd_reproduce(args) -> dict:
    report = reproduce.reproduce(args.example)
    _warn(report.get("discrepancies", []))
    return report


def _build_parser() -> _Parser:
    parser = _Parser(prog="neubound", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        p.add_argument(
            "--output", choices=("json", "csv"), default="json",
            help="serialization format (csv only for tabular reports)",
        )
        return p

    p = add("pzero", _cmd_pzero, "first zero of the radial Neumann condition")
    p.add_argument("--n", type=int, required=True, help="ambient dimension, n >= 2")
    p.add_argument("--tol", type=float, default=1e-10, help="bisection tolerance")

    p = add("mikhlin", _cmd_mikhlin, "squared two-ball extension norm")
    p.add_argument("--n", type=int, required=True, help="ambient dimension, n >= 3")
    p.add_argument("--R", dest="big_r", type=float, required=True, help="outer radius > 1")
    p.add_argument("--path", choices=("auto", "closed_form", "generic"), default="auto")

    p = add("mikhlin-star", _cmd_mikhlin_star, "star-shaped extension norm bound")
    p.add_argument("--m1", type=float, required=True, help="lower radial bound")
    p.add_argument("--m2", type=float, required=True, help="upper radial bound")
    p.add_argument("--m3", type=float, required=True, help="angular derivative bound")
    p.add_argument("--n", type=int, required=True, help="ambient dimension, n >= 3")
    p.add_argument("--R", dest="big_r", type=float, required=True, help="outer radius > m2")

    p = add("qc", _cmd_qc, "quasiconformality coefficient of a map")
    p.add_argument(
        "--matrix", type=float, nargs=4, action="append", metavar=("A", "B", "C", "D"),
        help="row-major 2x2 Jacobian; repeat for piecewise maps",
    )
    p.add_argument("--beta", type=float, help="star-shape parameter in [0, 1)")
    p.add_argument("--gamma", type=float, help="spiral twist, |gamma| < beta*pi/2")

    p = add("mecb", _cmd_mecb, "minimum enclosing ball of a domain's boundary")
    p.add_argument("--domain", required=True, help="preset name, JSON file, or inline JSON")
    p.add_argument("--samples", type=int, help="boundary sample count")
    p.add_argument("--seed", type=int, default=0, help="shuffle seed for the ball solver")

    p = add("bound", _cmd_bound, "every applicable eigenvalue lower bound")
    p.add_argument("--domain", required=True, help="preset name, JSON file, or inline JSON")
    p.add_argument("--n", type=int, help="ambient dimension (default: the domain's)")
    p.add_argument("--samples", type=int, help="boundary sample count")

    p = add("fem", _cmd_fem, "finite-element Neumann eigenvalues")
    p.add_argument("--domain", required=True, help="preset name, JSON file, or inline JSON")
    p.add_argument("--refinement", type=int, default=3, help="uniform refinement levels")
    p.add_argument("--samples", type=int, help="mesh boundary sample count")
    p.add_argument("--k", type=int, default=4, help="how many eigenvalues, 2..10")
    p.add_argument(
        "--table", action="store_true",
        help="emit a convergence table over refinements 0..R",
    )

    p = add("verify", _cmd_verify, "check all bounds against the mesh eigenvalue")
    p.add_argument("--domain", required=True, help="preset name, JSON file, or inline JSON")
    p.add_argument("--refinement", type=int, default=4, help="uniform refinement levels")
    p.add_argument("--samples", type=int, help="geometry sample count")
    p.add_argument("--fem-samples", type=int, help="mesh boundary sample count")
    p.add_argument("--k", type=int, default=4, help="how many eigenvalues, 2..10")
    p.add_argument(
        "--allow-violation", action="store_true",
        help="report violations instead of failing with exit status 2",
    )

    p = add("reproduce", _cmd_reproduce, "recompute a worked example")
    p.add_argument("example", help=f"one of: {', '.join(reproduce.example_names())}")

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        report = args.handler(args)
        _emit(report, args.output)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except (_UsageError, ValueError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except (NumericalError, ArithmeticError) as exc:
        sys.stderr.write(f"numerical error: {exc}\n")
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
