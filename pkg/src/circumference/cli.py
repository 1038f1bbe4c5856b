"""Command line entry point: ``circumference <subcommand> ...``.

Exit codes: 0 success, 1 assertion or bound failure, 2 input error.
"""
from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from pathlib import Path

from . import bounds, graphio, harness
from .cuts import PreconditionViolated
from .eulerian import CubificationFailed, eulerian_subgraph, is_eulerian
from .graph import GraphError
from .longest import InternalBoundMiss, long_cycle

log = logging.getLogger("circumference")

OK, FAIL, INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _load(path: str):
    try:
        return graphio.load(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except graphio.GraphFormatError as exc:
        raise InputError(f"{path}: {exc}") from None


def _edge(G, g: int) -> int:
    if not G.has_edge(g):
        raise InputError(f"edge {g} is not in the graph")
    return g


def cmd_longcycle(args) -> int:
    G, w = _load(args.graph)
    e, f = _edge(G, args.e), _edge(G, args.f)
    try:
        res = long_cycle(G, w, e, f)
    except PreconditionViolated as exc:
        raise InputError(str(exc)) from None
    ok = res.cycle.is_valid(G) and res.weight + 1e-9 >= res.bound
    if args.trace:
        Path(args.trace).write_text(json.dumps(res.trace.to_dict(), indent=1) + "\n")
    if args.json:
        print(json.dumps(res.to_dict(trace=False), indent=1))
    else:
        print(f"{res.kind} pair, weight {res.weight}, bound {res.bound:.6f}")
        print("vertices:", " ".join(map(str, res.cycle.vertices)))
        print("edges:", " ".join(map(str, res.cycle.edges)))
    return OK if ok else FAIL


def cmd_eulerian(args) -> int:
    G, w = _load(args.graph)
    e = _edge(G, args.e)
    f = None if args.f is None else _edge(G, args.f)
    if f == e:
        raise InputError("e and f must differ")
    try:
        res = eulerian_subgraph(G, w, e, f)
    except (PreconditionViolated, CubificationFailed) as exc:
        raise InputError(str(exc)) from None
    ok = is_eulerian(G, res.edges) and res.weight + 1e-9 >= res.bound
    if args.json:
        print(json.dumps(res.to_dict(G), indent=1))
    else:
        print(f"weight {res.weight}, bound {res.bound:.6f}")
        print("edges:", " ".join(map(str, res.edges)))
        print("degrees:", " ".join(f"{v}:{d}" for v, d in res.degrees(G).items()))
    return OK if ok else FAIL


def cmd_oracle(args) -> int:
    G, w = _load(args.graph)
    if args.f is not None and args.e is None:
        raise InputError("--f needs --e")
    e = None if args.e is None else _edge(G, args.e)
    f = None if args.f is None else _edge(G, args.f)
    budget = None if args.budget_ms is None else args.budget_ms / 1000
    try:
        weight, cyc = harness.oracle_max_cycle(G, w, e, f, time_budget=budget)
    except harness.BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAIL
    if cyc is None:
        print("no cycle")
        return FAIL
    print(f"weight {weight}")
    print("edges:", " ".join(map(str, cyc.edges)))
    return OK


def cmd_gen(args) -> int:
    try:
        G = harness.random_cubic_3connected(args.n, args.seed)
    except (harness.OddOrder, ValueError) as exc:
        raise InputError(str(exc)) from None
    w = {v: 1 for v in G.vertices}
    if args.weights:
        kind, _, top = args.weights.partition(":")
        if kind != "max" or not top.isdigit():
            raise InputError("--weights takes the form max:K")
        rng = random.Random(args.seed)
        w = {v: rng.randint(0, int(top)) for v in sorted(G.vertices)}
    text = graphio.dumps(G, w)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return OK


def cmd_verify(args) -> int:
    if args.nmax < 4:
        raise InputError("--nmax must be at least 4")
    report = harness.verify(args.trials, args.nmax, args.seed)
    data = report.to_dict()
    if args.json:
        print(json.dumps(data, indent=1, sort_keys=True))
    else:
        print(f"trials {data['trials']}, calls {data['calls']}, oracle checked {data['oracle_checked']}")
        print(f"failures {len(data['failures'])}")
        for label, n in data["histogram"].items():
            print(f"  {label:40s} {n}")
        if report.missing_labels():
            print("never reached: " + ", ".join(report.missing_labels()))
    return FAIL if data["failures"] else OK


def cmd_bounds(args) -> int:
    report = bounds.proof_constants_report()
    grids = {p: bounds.grid_check(p, grid_max=args.grid_max) for p in bounds.PARTS}
    root = bounds.optimal_exponent(1e-12)
    if args.json:
        out = {
            "constants": report,
            "optimal_exponent": root,
            "grid": {p: vars(g) for p, g in grids.items()},
        }
        print(json.dumps(out, indent=1, default=float))
    else:
        for name, item in report.items():
            print(f"{name:24s} {item['value']:.6g}")
        print(f"{'optimal_exponent':24s} {root:.9f}")
        for p, g in grids.items():
            kind = "exhaustive" if g.exhaustive else "sampled"
            print(f"part {p:4s} {kind:10s} points {g.evaluated:8d} failures {g.failures} min margin {g.min_margin:.3g}")
    return FAIL if any(g.failures for g in grids.values()) else OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="circumference", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("longcycle", help="long cycle through two edges")
    p.add_argument("--graph", required=True)
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--f", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("--trace", metavar="FILE")
    p.set_defaults(run=cmd_longcycle)

    p = sub.add_parser("eulerian", help="heavy Eulerian subgraph through one or two edges")
    p.add_argument("--graph", required=True)
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--f", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(run=cmd_eulerian)

    p = sub.add_parser("oracle", help="exact maximum-weight cycle")
    p.add_argument("--graph", required=True)
    p.add_argument("--e", type=int)
    p.add_argument("--f", type=int)
    p.add_argument("--budget-ms", type=int)
    p.set_defaults(run=cmd_oracle)

    p = sub.add_parser("gen", help="random 3-connected cubic graph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--weights", metavar="max:K")
    p.add_argument("--out")
    p.set_defaults(run=cmd_gen)

    p = sub.add_parser("verify", help="randomised end-to-end check")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--nmax", type=int, default=12)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--json", action="store_true")
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("bounds", help="inequality constants and grid checks")
    p.add_argument("--grid-max", type=int, default=50)
    p.add_argument("--json", action="store_true")
    p.set_defaults(run=cmd_bounds)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return INPUT if exc.code else OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.run(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT
    except (InternalBoundMiss, GraphError, AssertionError) as exc:
        print(f"failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return FAIL


if __name__ == "__main__":
    sys.exit(main())
