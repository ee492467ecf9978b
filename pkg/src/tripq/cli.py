"""Command-line front end: ``tripq <subcommand> ...``.

Exit status 0 on success, 2 on malformed input, 3 on a domain error. Errors
go to stderr as ``error[CODE]: message``. Relative ``--output`` paths are
placed under $TRIPQ_OUTPUT_DIR when it is set.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

from . import barycentric, classes, farey, lab, minkowski, svg
from .errors import ParseError, TripError
from .linalg import format_rational, parse_point, parse_rational

OUTPUT_DIR_ENV = "TRIPQ_OUTPUT_DIR"
FORMATS = ("table", "json", "csv", "svg")


def _triple(text: str):
    try:
        return farey.triple(text)
    except (KeyError, ValueError) as exc:
        raise ParseError(f"bad triple {text!r}: {exc}") from exc


def _ints(text: str) -> tuple:
    try:
        return tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError as exc:
        raise ParseError(f"expected comma-separated integers: {text!r}") from exc


def _table(rows: list, header: list) -> str:
    rows = [[str(c) for c in r] for r in rows]
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(header)]
    fmt = "  ".join("{:<%d}" % w for w in widths)
    lines = [fmt.format(*header), fmt.format(*("-" * w for w in widths))]
    lines += [fmt.format(*r) for r in rows]
    return "\n".join(line.rstrip() for line in lines) + "\n"


def _csv(rows: list, header: list) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _emit(args, payload, rows=None, header=None, svg_text=None) -> str:
    fmt = args.format
    if fmt == "json":
        return json.dumps(payload, indent=2, sort_keys=False) + "\n"
    if fmt == "svg":
        if svg_text is None:
            raise ParseError(f"--format svg is not available for '{args.command}'")
        return svg_text
    if rows is None:
        return json.dumps(payload, indent=2) + "\n"
    return _csv(rows, header) if fmt == "csv" else _table(rows, header)


def _verts(cell) -> str:
    return " ".join(str(v) for v in cell.vertices)


def cmd_partition(args) -> str:
    t = _triple(args.triple)
    if args.command == "partition":
        cells = farey.farey_partition(t, args.depth)
    else:
        cells = barycentric.bary_partition(t, args.depth)
    payload = {"triple": str(t), "depth": args.depth,
               "cells": [{"bits": "".join(map(str, w)), **c.to_json()} for w, c in cells]}
    rows = [["".join(map(str, w)) or "-", _verts(c)] for w, c in cells]
    text = svg.render([c for _, c in cells], f"{t.label()} depth {args.depth}") if args.format == "svg" else None
    return _emit(args, payload, rows, ["bits", "vertices"], text)


def cmd_sequence(args) -> str:
    t = _triple(args.triple)
    p = parse_point(args.point)
    if args.kind == "multiplicative":
        seq = farey.multiplicative_sequence(t, p, args.n, args.k_limit)
        payload = {"triple": str(t), "point": p.to_json(), "kind": args.kind, **seq.to_json()}
        rows = [[i + 1, d, s] for i, (d, s) in enumerate(zip(seq.digits, seq.partial_sums))]
        return _emit(args, payload, rows, ["i", "digit", "partial_sum"])
    if args.kind == "additive":
        seq = farey.additive_sequence(t, p, args.n)
    else:
        seq = barycentric.bary_sequence(t, p, args.n)
    payload = {"triple": str(t), "point": p.to_json(), "kind": args.kind, **seq.to_json()}
    return _emit(args, payload, [[str(seq) or "-", seq.boundary_flag]], ["bits", "boundary"])


def cmd_phi(args) -> str:
    t = _triple(args.triple)
    res = minkowski.phi_eval(t, parse_point(args.point), args.depth)
    rows = [["verdict", res.verdict], ["assumption", res.tail_assumption], ["bits", str(res.sequence)],
            ["image", str(res.image)], ["diameter", f"{res.diameter:.6g}"],
            ["gamma_cell", _verts(res.bary_cell)]]
    return _emit(args, res.to_json(), rows, ["field", "value"])


def cmd_qmark(args) -> str:
    x = parse_rational(args.x)
    value = minkowski.classical_qmark(x, args.level)
    if args.format == "table":
        return format_rational(value) + "\n"
    return _emit(args, {"x": format_rational(x), "level": args.level, "value": format_rational(value)},
                 [[format_rational(x), args.level, format_rational(value)]], ["x", "level", "value"])


def cmd_twin(args) -> str:
    t = _triple(args.triple)
    tw = classes.twin(t)
    if args.format == "table":
        return str(tw) + "\n"
    return _emit(args, {"triple": str(t), "twin": str(tw)}, [[str(t), str(tw)]], ["triple", "twin"])


def cmd_classify(args) -> str:
    cls = classes.classify_all()
    payload = [c.to_json() for c in cls]
    rows = [[str(c.representative), len(c), str(c.status), ",".join(sorted(c.provenance))] for c in cls]
    return _emit(args, payload, rows, ["representative", "size", "status", "provenance"])


def _limit_text(res) -> str:
    if res.point is None:
        return " ".join(map(str, res.segment))
    if res.point_exact:
        return str(res.point)
    return "~(%.12f,%.12f)" % (float(res.point.x), float(res.point.y))


def cmd_periodic(args) -> str:
    t = _triple(args.triple)
    period = farey.AdditiveSeq.parse(args.period).bits
    if args.kind == "farey":
        res = farey.periodic_limit_farey(t, period, raise_on_segment=False)
        rows = [["char_poly", res.char_poly_text()], ["min_poly_degree", res.min_poly_degree],
                ["converges", res.converges],
                ["limit", _limit_text(res)]]
    else:
        res = barycentric.periodic_limit_bary(t, period)
        rows = [["kind", res.kind], ["limit", " ".join(map(str, res.points))],
                ["fixed_space_dim", res.fixed_space_dim]]
    return _emit(args, res.to_json(), rows, ["field", "value"])


def cmd_experiment(args) -> str:
    t = _triple(args.triple)
    kind = args.experiment
    if kind == "sn":
        cfg = lab.ExperimentConfig(t, args.samples, args.n, args.seed, args.denominator_bits,
                                   _ints(args.checkpoints), args.threshold, args.k_limit, args.step_budget,
                                   args.map)
        rep = lab.sn_experiment(cfg, args.workers)
        if args.format == "csv":
            return rep.to_csv()
        payload = rep.to_json()
        rows = [[n, *(f"{v:.4f}" for v in rep.quantiles(n).values()), f"{rep.fraction_below(None, n):.4f}"]
                for n in cfg.checkpoints]
        return _emit(args, payload, rows, ["n", "q10", "q25", "median", "q75", "q90", "fraction_below"])
    if kind == "areas":
        table = lab.cylinder_areas(t, args.k_max)
        rows = [[k, format_rational(a), format_rational(table.law(k)), a == table.law(k)]
                for k, a in enumerate(table.areas)]
        return _emit(args, table.to_json(), rows, ["k", "area", "law", "match"])
    if kind == "recursion":
        rep = lab.measure_recursion_check(t, args.N, args.k_max, args.depth_cap)
        rows = [[lv.k, lv.cells, f"{float(lv.area):.6g}",
                 f"{float(lv.ratio):.6g}" if lv.ratio is not None else "-",
                 format_rational(lv.bound) if lv.bound is not None else "-", lv.ok] for lv in rep.levels]
        return _emit(args, rep.to_json(), rows, ["k", "cells", "area", "ratio", "bound", "ok"])
    rep = lab.convergence_survey(t, args.samples, args.depth, args.seed, _ints(args.checkpoints),
                                 args.forced_tail)
    rows = [[s.index, s.status, f"{s.max_side_sq[-1] ** 0.5 if s.max_side_sq else float('nan'):.3e}",
             f"{float(s.min_diameter_sq) ** 0.5:.4f}"] for s in rep.samples]
    return _emit(args, rep.to_json(), rows, ["sample", "status", "final_max_side", "min_diameter"])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tripq", description="Triangle partition maps in exact arithmetic.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="table")
    common.add_argument("--output", help="write to this file instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, helptext in (("partition", "Farey cells to a depth"), ("bary-partition", "barycentric cells")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--triple", required=True)
        p.add_argument("--depth", type=int, required=True)
        p.set_defaults(func=cmd_partition)

    p = sub.add_parser("sequence", parents=[common], help="itinerary of a point")
    p.add_argument("--triple", required=True)
    p.add_argument("--point", required=True, help="x,y as exact rationals, e.g. 3/4,1/2")
    p.add_argument("--kind", choices=("additive", "multiplicative", "barycentric"), default="additive")
    p.add_argument("--n", type=int, default=20)
    p.add_argument("--k-limit", type=int, default=farey.DEFAULT_K_LIMIT)
    p.set_defaults(func=cmd_sequence)

    p = sub.add_parser("phi", parents=[common], help="finite-depth approximation of the question-mark analog")
    p.add_argument("--triple", required=True)
    p.add_argument("--point", required=True)
    p.add_argument("--depth", type=int, default=40)
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("qmark", parents=[common], help="classical question-mark interpolant")
    p.add_argument("--x", required=True)
    p.add_argument("--level", type=int, default=20)
    p.set_defaults(func=cmd_qmark)

    p = sub.add_parser("twin", parents=[common], help="twin of a triple")
    p.add_argument("--triple", required=True)
    p.set_defaults(func=cmd_twin)

    p = sub.add_parser("classify", parents=[common], help="the 15 classes of the 216 maps")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("periodic", parents=[common], help="limit along a repeated period")
    p.add_argument("--triple", required=True)
    p.add_argument("--period", required=True)
    p.add_argument("--kind", choices=("farey", "barycentric"), default="farey")
    p.set_defaults(func=cmd_periodic)

    p = sub.add_parser("experiment", help="singularity diagnostics")
    esub = p.add_subparsers(dest="experiment", required=True)
    e = esub.add_parser("sn", parents=[common], help="digit sums s_n of random points")
    e.add_argument("--triple", required=True)
    e.add_argument("--samples", type=int, default=500)
    e.add_argument("--n", type=int, default=80)
    e.add_argument("--seed", type=int, default=42)
    e.add_argument("--denominator-bits", type=int, default=53)
    e.add_argument("--checkpoints", default="")
    e.add_argument("--threshold", type=float, default=1.5)
    e.add_argument("--k-limit", type=int, default=farey.DEFAULT_K_LIMIT)
    e.add_argument("--step-budget", type=int, default=10**4)
    e.add_argument("--map", choices=("gauss", "tent"), default="gauss")
    e.add_argument("--workers", type=int, default=1)
    e = esub.add_parser("areas", parents=[common], help="areas of the first-digit cylinders")
    e.add_argument("--triple", required=True)
    e.add_argument("--k-max", type=int, default=10)
    e = esub.add_parser("recursion", parents=[common], help="contraction of the bounded-digit sets")
    e.add_argument("--triple", required=True)
    e.add_argument("--N", type=int, default=1)
    e.add_argument("--k-max", type=int, default=4)
    e.add_argument("--depth-cap", type=int, default=64)
    e = esub.add_parser("convergence", parents=[common], help="shrinking of barycentric cells")
    e.add_argument("--triple", required=True)
    e.add_argument("--samples", type=int, default=100)
    e.add_argument("--depth", type=int, default=60)
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--checkpoints", default="")
    e.add_argument("--forced-tail", type=int, choices=(0, 1))
    p.set_defaults(func=cmd_experiment)
    return parser


def _write(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
        return
    path = Path(output)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not path.is_absolute():
        path = Path(base) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _write(args.func(args), args.output)
    except ParseError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return 2
    except TripError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error[E_INVALID_ARGUMENT]: {exc}", file=sys.stderr)
        return 2
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
