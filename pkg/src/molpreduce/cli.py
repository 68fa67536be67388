"""Command-line entry point: ``molpreduce <command> ...``.

Exit status is 0 on success, 1 when the input problem is rejected or a
cross-check fails, and 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import bench as benchmod
from .benson import solve_benson
from .errors import ConeNotPointed, ConeNotSolid, MolpReduceError
from .linalg import Q, fmt, rank, rank_factorize, trivial_factorize
from .nonessential import nonessential_system, serialize_report, verify_nonessential
from .polyhedra import image
from .problems import (
    is_ok,
    parse_problem,
    serialize_factorization,
    serialize_problem,
    serialize_result,
    validate,
)
from .reduction import SKIPPED, interpretation_problem, reduce_molp, reduce_vlp
from .solver import oracle_efficient_set, solve_enum


def _read_problem(path: str):
    text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    return parse_problem(text)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _warn(msg: str) -> None:
    print(msg, file=sys.stderr)


def cmd_reduce(args) -> int:
    p = _read_problem(args.input)
    for d in validate(p):
        if d.level != "info":
            _warn(str(d))
    if p.is_molp():
        red = reduce_molp(p)
    else:
        k, q, n = rank(p.P), p.q, p.n
        if k == q:
            f = trivial_factorize(p.P, "right")
        elif k == n:
            f = trivial_factorize(p.P, "left")
        else:
            f = rank_factorize(p.P)
        red = reduce_vlp(p, f)
    if red.kind == SKIPPED:
        _warn("reduction skipped: the objective matrix already has full row rank")
    else:
        _warn(f"reduced {p.q} objectives to {red.k} ({red.kind})")
        for d in validate(red.reduced):
            if d.level == "warning":
                _warn(f"reduced problem {d}")
    _emit(serialize_problem(red.reduced), args.output)
    sidecar = args.sidecar or (args.output + ".fact" if args.output else None)
    if sidecar:
        Path(sidecar).write_text(serialize_factorization(red.factorization), encoding="utf-8")
    return 0


def _solve(p, solver: str):
    if solver == "benson":
        try:
            return solve_benson(p)
        except (ConeNotPointed, ConeNotSolid, ValueError) as exc:
            _warn(f"benson not applicable ({exc}); falling back to enumeration")
    return solve_enum(p)


def cmd_solve(args) -> int:
    p = _read_problem(args.input)
    diags = validate(p)
    if not is_ok(diags):
        for d in diags:
            _warn(str(d))
        return 1
    res = _solve(p, args.solver)
    _emit(serialize_result(res), args.output)
    if args.oracle:
        ref = oracle_efficient_set(p)
        same = ref.vertex_set() == res.vertex_set() and ref.point_set() == res.point_set()
        print(f"oracle: {'match' if same else 'MISMATCH'}", file=sys.stderr if not args.output else sys.stdout)
        if not same:
            return 1
    return 0


def cmd_nonessential(args) -> int:
    p = _read_problem(args.input)
    report = nonessential_system(p.P)
    text = serialize_report(report)
    # user-chosen objective combinations are echoed, not selected
    for weights in args.combination or []:
        try:
            w = [Q(t) for t in weights.replace(",", " ").split()]
        except ValueError:
            w = []
        if len(w) != p.q:
            _warn(f"combination needs {p.q} rational weights: {weights!r}")
            return 2
        row = [sum((wi * p.P[i, j] for i, wi in enumerate(w)), Q(0)) for j in range(p.n)]
        text += "combination " + " ".join(fmt(v) for v in w) + " : " + " ".join(fmt(v) for v in row) + "\n"
    if args.verify:
        ok = verify_nonessential(p, report.removed)
        text += f"verified {'true' if ok else 'false'}\n"
    _emit(text, args.output)
    return 0


def _boundary_order(points):
    if not points:
        return []
    k = len(points[0])
    if k != 2:
        return sorted(points)
    cx = sum(float(z[0]) for z in points) / len(points)
    cy = sum(float(z[1]) for z in points) / len(points)
    return sorted(points, key=lambda z: (math.atan2(float(z[1]) - cy, float(z[0]) - cx), z))


def cmd_interpret(args) -> int:
    p = _read_problem(args.input)
    red = reduce_molp(p) if p.is_molp() else reduce_vlp(p, rank_factorize(p.P))
    if red.kind == SKIPPED:
        _warn("reduction skipped: nothing to interpret")
        return 1
    molp0 = interpretation_problem(red)
    _emit(serialize_problem(molp0), args.output)
    verts = list(image(p.S, red.factorization.R).vertices)
    res = solve_enum(molp0)
    minimal = res.vertex_set()
    k = red.k
    lines = [",".join([f"z{i + 1}" for i in range(k)] + ["minimal"])]
    for z in _boundary_order(verts):
        lines.append(",".join([fmt(x) for x in z] + ["1" if z in minimal else "0"]))
    csv_text = "\n".join(lines) + "\n"
    if args.csv:
        Path(args.csv).write_text(csv_text, encoding="utf-8")
    else:
        sys.stdout.write(csv_text)
    return 0


def cmd_bench(args) -> int:
    data = {}
    if args.config:
        data = json.loads(Path(args.config).read_text(encoding="utf-8"))
    for key in ("trials", "warmup", "seed", "q_max"):
        v = getattr(args, key)
        if v is not None:
            data[key] = v
    try:
        cfg = benchmod.BenchConfig.from_mapping(data)
    except (TypeError, ValueError) as exc:
        _warn(f"bad bench config: {exc}")
        return 2
    _warn(f"note: {benchmod.T_NOTE}")
    records = benchmod.run_bench(cfg, log=_warn if args.verbose else None, parallel_verify=args.parallel_verify)
    _emit(benchmod.records_csv(records), args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="molpreduce", description="Objective reduction for multi-objective LPs.")
    sub = ap.add_subparsers(dest="command", required=True)

    r = sub.add_parser("reduce", help="emit the reduced vector LP and its factorization")
    r.add_argument("input")
    r.add_argument("-o", "--output")
    r.add_argument("--sidecar", help="factorization file (default: OUTPUT.fact)")
    r.set_defaults(func=cmd_reduce)

    s = sub.add_parser("solve", help="solve a problem file")
    s.add_argument("input")
    s.add_argument("--solver", choices=["benson", "enum"], default="benson")
    s.add_argument("--oracle", action="store_true", help="cross-check against brute force")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_solve)

    n = sub.add_parser("nonessential", help="find objectives implied by the others")
    n.add_argument("input")
    n.add_argument("--verify", action="store_true", help="check the removal on this feasible set")
    n.add_argument("--combination", action="append", metavar="WEIGHTS", help="also print this weighted sum of objectives (repeatable)")
    n.add_argument("-o", "--output")
    n.set_defaults(func=cmd_nonessential)

    i = sub.add_parser("interpret", help="problem in the reduced image space plus boundary CSV")
    i.add_argument("input")
    i.add_argument("-o", "--output")
    i.add_argument("--csv")
    i.set_defaults(func=cmd_interpret)

    b = sub.add_parser("bench", help="run the low-rank benchmark family")
    b.add_argument("--config", help="JSON file with BenchConfig fields")
    b.add_argument("--trials", type=int)
    b.add_argument("--warmup", type=int)
    b.add_argument("--seed", type=int)
    b.add_argument("--q-max", dest="q_max", type=int)
    b.add_argument("--parallel-verify", action="store_true")
    b.add_argument("-v", "--verbose", action="store_true")
    b.add_argument("-o", "--output")
    b.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except (MolpReduceError, OSError) as exc:
        _warn(f"error: {exc}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
