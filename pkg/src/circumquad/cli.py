"""Command-line front end.

Subcommands: ``solve`` (minimum quadrilateral for a body file), ``witness``
(case report embodying the area bound), ``certify`` (interval-arithmetic
verification of the constants), ``bench`` (CSV benchmark over a generated
corpus), and ``gen`` (corpus body files).

Exit codes: 0 success, 2 input error, 3 degenerate body, 4 certification
failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .constants import TheoremConstants, certify_constants
from .corpus import KINDS, gen_corpus
from .errors import (
    BadParams,
    CircumquadError,
    DegenerateBody,
    DegenerateInput,
)
from .geometry import AffineMap, ConvexPolygon, convex_hull
from .intervals import Verdict
from .minquad import SolverOptions, min_circumscribed_quadrilateral
from .pipeline import case_machine

_CSV_HEADER = (
    "id,n_vertices,area_K,area_Q,empirical_ratio,case_id,"
    "certified_factor,runtime_ms"
)


def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


def _parse_scalar(v, exact: bool):
    if isinstance(v, bool):
        raise ValueError("coordinate must be a number or string")
    if isinstance(v, str):
        f = Fraction(v)
    elif isinstance(v, int):
        f = Fraction(v)
    elif isinstance(v, float):
        # Decimal semantics: 0.1 means 1/10, not its binary approximation.
        f = Fraction(repr(v))
    else:
        raise ValueError(f"bad coordinate {v!r}")
    return f if exact else float(f)


def read_body(path: str) -> ConvexPolygon:
    """Load a body file, taking the hull of the listed vertices."""
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict) or "vertices" not in data:
        raise ValueError("body file must be an object with a 'vertices' key")
    mode = data.get("mode", "float")
    if mode not in ("float", "rational"):
        raise ValueError(f"unknown mode {mode!r}")
    raw = data["vertices"]
    if not isinstance(raw, list) or len(raw) < 3:
        raise ValueError("body needs at least 3 vertices")
    pts = []
    for entry in raw:
        if not isinstance(entry, (list, tuple)) or len(entry) != 2:
            raise ValueError(f"bad vertex entry {entry!r}")
        pts.append(
            (
                _parse_scalar(entry[0], mode == "rational"),
                _parse_scalar(entry[1], mode == "rational"),
            )
        )
    return convex_hull(pts)


def body_to_json(poly: ConvexPolygon) -> dict:
    if poly.is_exact:
        verts = [[str(v.x), str(v.y)] for v in poly.vertices]
        return {"mode": "rational", "vertices": verts}
    verts = [[_fmt(v.x), _fmt(v.y)] for v in poly.vertices]
    return {"mode": "float", "vertices": verts}


def _map_to_json(m: Optional[AffineMap]):
    if m is None:
        return None
    return {
        "matrix": [[float(m.m11), float(m.m12)], [float(m.m21), float(m.m22)]],
        "translation": [float(m.t1), float(m.t2)],
    }


def _solver_options(args) -> SolverOptions:
    kwargs = {}
    if getattr(args, "grid", None):
        kwargs["coarse_grid"] = args.grid
    if getattr(args, "tol", None):
        kwargs["tol"] = args.tol
    return SolverOptions(**kwargs)


def cmd_solve(args) -> int:
    body = read_body(args.file)
    quad, cert = min_circumscribed_quadrilateral(body, _solver_options(args))
    out = {
        "vertices": [[float(v.x), float(v.y)] for v in quad.vertices],
        "area": float(quad.area),
        "body_area": float(abs(body.area)),
        "ratio": float(cert.area_ratio),
        "midpoint_residuals": [float(r) for r in cert.midpoint_residuals],
        "degenerate_triangle": quad.degenerate_triangle,
    }
    json.dump(out, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


def cmd_witness(args) -> int:
    body = read_body(args.file)
    report = case_machine(body, options=_solver_options(args))
    details = dict(report.details)
    norm_map = details.pop("normalizing_map", None)
    branch = details.pop("lemma_branch", None)
    if branch is not None:
        details["lemma_branch"] = branch.value
    if "reflections" in details:
        details["reflections"] = list(details["reflections"])
    out = {
        "case_id": report.case_id.value,
        "certified_factor": report.certified_factor,
        "empirical_ratio": report.empirical_ratio,
        "witness": [[float(v.x), float(v.y)] for v in report.witness.vertices],
        "normalizing_map": _map_to_json(norm_map),
        "details": details,
    }
    json.dump(out, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


def cmd_certify(args) -> int:
    if args.precision < 8:
        raise BadParams("precision must be at least 8 bits")
    overrides = {}
    for name in ("c1", "c2", "c3", "r", "delta"):
        val = getattr(args, name)
        if val is not None:
            overrides[name] = Fraction(val)
    consts = TheoremConstants(**overrides)
    comparisons = certify_constants(consts, args.precision)
    payload = []
    for comp in comparisons:
        payload.append(
            {
                "claim": comp.claim,
                "verdict": comp.verdict.value,
                "precision_bits": comp.precision_bits,
                "lhs_interval": [float(comp.lhs_interval.lo), float(comp.lhs_interval.hi)],
                "rhs_interval": [float(comp.rhs_interval.lo), float(comp.rhs_interval.hi)],
                "lhs_interval_exact": [str(comp.lhs_interval.lo), str(comp.lhs_interval.hi)],
                "rhs_interval_exact": [str(comp.rhs_interval.lo), str(comp.rhs_interval.hi)],
            }
        )
    all_proven = all(c.verdict is Verdict.PROVEN for c in comparisons)
    json.dump(
        {
            "all_proven": all_proven,
            "precision_bits": args.precision,
            "comparisons": payload,
        },
        sys.stdout,
        indent=2,
    )
    sys.stdout.write("\n")
    return 0 if all_proven else 4


def _bench_one(task) -> Tuple[int, int, float, float, float, str, float, float]:
    index, vertices, deterministic = task
    body = ConvexPolygon(vertices)
    t0 = time.perf_counter()
    report = case_machine(body)
    elapsed_ms = (time.perf_counter() - t0) * 1000.0
    if deterministic:
        elapsed_ms = 0.0
    area_k = float(abs(body.area))
    ratio = report.empirical_ratio
    return (
        index,
        len(body),
        area_k,
        ratio * area_k,
        ratio,
        report.case_id.value,
        report.certified_factor,
        elapsed_ms,
    )


def _worker_count(n_tasks: int) -> int:
    env = os.environ.get("CIRCUMQUAD_THREADS")
    if env is not None:
        try:
            cap = int(env)
        except ValueError as exc:
            raise BadParams(f"CIRCUMQUAD_THREADS must be an integer, got {env!r}") from exc
        if cap < 1:
            raise BadParams("CIRCUMQUAD_THREADS must be >= 1")
    else:
        cap = os.cpu_count() or 1
    return max(1, min(cap, n_tasks))


def cmd_bench(args) -> int:
    bodies = gen_corpus(args.kind, args.count, seed=args.seed, vertices=args.vertices)
    tasks = [
        (i, tuple(b.to_float().vertices), args.deterministic)
        for i, b in enumerate(bodies)
    ]
    workers = _worker_count(len(tasks))
    if workers == 1:
        rows = [_bench_one(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_bench_one, tasks, chunksize=4))
    print(_CSV_HEADER)
    max_ratio = 0.0
    for row in rows:
        (idx, nv, ak, aq, ratio, case_id, factor, ms) = row
        max_ratio = max(max_ratio, ratio)
        print(
            f"{idx},{nv},{_fmt(ak)},{_fmt(aq)},{_fmt(ratio)},{case_id},"
            f"{_fmt(factor)},{int(round(ms))}"
        )
    print(f"# max empirical_ratio = {_fmt(max_ratio)}", file=sys.stderr)
    return 0


def cmd_gen(args) -> int:
    bodies = gen_corpus(args.kind, args.count, seed=args.seed, vertices=args.vertices)
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        for i, b in enumerate(bodies):
            path = os.path.join(args.out, f"body_{i:04d}.json")
            with open(path, "w", encoding="utf-8") as fh:
                json.dump(body_to_json(b), fh)
                fh.write("\n")
        print(f"wrote {len(bodies)} bodies to {args.out}")
    else:
        json.dump([body_to_json(b) for b in bodies], sys.stdout, indent=2)
        sys.stdout.write("\n")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="circumquad",
        description="Minimum-area circumscribed quadrilaterals and the "
        "certified improvement over the sqrt(2) bound.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add_solver_flags(sp):
        sp.add_argument("--grid", type=int, default=None, help="coarse angle grid size")
        sp.add_argument("--tol", type=float, default=None, help="solver tolerance")

    sp = sub.add_parser("solve", help="minimum circumscribed quadrilateral")
    sp.add_argument("file", help="body JSON file")
    add_solver_flags(sp)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("witness", help="case report for the area bound")
    sp.add_argument("file", help="body JSON file")
    add_solver_flags(sp)
    sp.set_defaults(func=cmd_witness)

    sp = sub.add_parser("certify", help="certify the theorem constants")
    sp.add_argument("--precision", type=int, default=128, help="interval precision bits")
    for name in ("c1", "c2", "c3", "r", "delta"):
        sp.add_argument(f"--{name}", type=str, default=None, help=f"override {name}")
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("bench", help="benchmark CSV over a generated corpus")
    sp.add_argument("--kind", required=True, help=f"one of {KINDS} or 'pentagon'")
    sp.add_argument("--count", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--vertices", type=int, default=None, help="per-body size parameter")
    sp.add_argument(
        "--deterministic",
        action="store_true",
        help="zero the runtime_ms column for byte-identical output",
    )
    sp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("gen", help="generate corpus body files")
    sp.add_argument("--kind", required=True, help=f"one of {KINDS} or 'pentagon'")
    sp.add_argument("--count", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--vertices", type=int, default=None, help="per-body size parameter")
    sp.add_argument("--out", type=str, default=None, help="directory for body files")
    sp.set_defaults(func=cmd_gen)

    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DegenerateBody, DegenerateInput) as exc:
        print(f"degenerate body: {exc}", file=sys.stderr)
        return 3
    except (
        OSError,
        ValueError,
        KeyError,
        TypeError,
        ZeroDivisionError,
        json.JSONDecodeError,
        BadParams,
    ) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except CircumquadError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
