"""Command-line front end.

One binary with verb-style subcommands (`ord`, `descent`, `enum`,
`ramsey`, `sweep`, `generate`).  All output on stdout is byte-
deterministic for a fixed invocation; wall-clock timing goes to stderr.
The exit code is nonzero exactly when a checker failed or a precondition
was rejected.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path
from typing import List, Optional

from . import descent as descent_mod
from . import enumeration as enum_mod
from .generate import KINDS, generate
from .ordinal import (
    InvalidIndexError,
    OrdinalSyntaxError,
    compare,
    decode,
    encode,
    format_ordinal,
    nat_add,
    nat_mul_k,
    nat_mul_omega,
    omega_pow,
    parse_ordinal,
    std_add,
    tower,
)
from .ramsey.checkers import is_homogeneous, is_transitive
from .ramsey.instances import (
    SetFamily,
    format_coloring,
    format_order,
    format_tournament,
    parse_coloring,
    parse_order,
    parse_tournament,
)
from .ramsey.oracles import brute_max_homogeneous, brute_max_transitive
from .ramsey.solvers import ads_solve, coh_solve, em_solve, rt22_solve, verify_trace
from .report import FORMATS, emit
from .sweep import sweep, verify_cohesive

OK, FAIL = 0, 1


def _read(path: str) -> str:
    return Path(path).read_text()


# ---------------------------------------------------------------------------
# ord
# ---------------------------------------------------------------------------

def _cmd_ord(args) -> int:
    op = args.op
    try:
        if op == "eval":
            print(format_ordinal(parse_ordinal(args.a)))
        elif op == "compare":
            rel = compare(parse_ordinal(args.a), parse_ordinal(args.b))
            print({-1: "LT", 0: "EQ", 1: "GT"}[rel])
        elif op == "add":
            print(format_ordinal(std_add(parse_ordinal(args.a), parse_ordinal(args.b))))
        elif op == "nat-add":
            print(format_ordinal(nat_add(parse_ordinal(args.a), parse_ordinal(args.b))))
        elif op == "nat-mul-k":
            print(format_ordinal(nat_mul_k(parse_ordinal(args.a), int(args.b))))
        elif op == "nat-mul-omega":
            print(format_ordinal(nat_mul_omega(parse_ordinal(args.a))))
        elif op == "omega-pow":
            print(format_ordinal(omega_pow(parse_ordinal(args.a))))
        elif op == "tower":
            print(format_ordinal(tower(parse_ordinal(args.a), int(args.b))))
        elif op == "encode":
            print(encode(parse_ordinal(args.a)))
        elif op == "decode":
            print(format_ordinal(decode(int(args.a))))
    except (OrdinalSyntaxError, InvalidIndexError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAIL
    return OK


# ---------------------------------------------------------------------------
# descent
# ---------------------------------------------------------------------------

def _cmd_descent(args) -> int:
    try:
        if args.op == "combine":
            log = descent_mod.parse_event_log(_read(args.file))
            trace = descent_mod.gamma_combine(log)
            sys.stdout.write(descent_mod.format_descent_trace(trace))
            violation = descent_mod.validate_descent(trace)
            if violation is not None:
                print(f"invalid: index={violation.index} reason={violation.reason}")
                return FAIL
            return OK
        trace = descent_mod.parse_descent_trace(_read(args.file))
        violation = descent_mod.validate_descent(trace)
        if violation is None:
            print(f"ok length={len(trace)}")
            return OK
        print(f"violation index={violation.index} reason={violation.reason}")
        return FAIL
    except (descent_mod.MalformedLogError, OrdinalSyntaxError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAIL


# ---------------------------------------------------------------------------
# enum
# ---------------------------------------------------------------------------

def _builtin_generator(style: str, b: int, d: int, seed: int):
    """Deterministic stage generators for `enum run`."""
    from .generate import SplitMix64

    if style == "full":
        # Complete d-ary tree grown one level per stage.
        def gen():
            level = [()]
            for _ in range(b):
                nxt = []
                for node in level:
                    nxt.extend(node + (i,) for i in range(d))
                yield {n: None for n in nxt}
                level = nxt
        return gen()
    if style == "chain":
        def gen():
            node = ()
            for _ in range(b):
                node = node + (0,)
                yield {node: None}
        return gen()
    if style == "random":
        rng = SplitMix64(seed)
        def gen():
            leaves = [()]
            while leaves:
                stage = {}
                new_leaves = []
                for leaf in leaves:
                    if len(leaf) >= b:
                        continue
                    kids = rng.below(d + 1)
                    if kids == 0 and rng.bit():
                        new_leaves.append(leaf)
                        continue
                    for i in range(kids):
                        child = leaf + (i,)
                        stage[child] = None
                        new_leaves.append(child)
                if not stage:
                    return
                yield stage
                leaves = new_leaves
        return gen()
    raise ValueError(f"unknown style {style!r}")


def _cmd_enum(args) -> int:
    try:
        if args.op == "check":
            enum, ranks, _ = enum_mod.parse_enumeration_log(_read(args.file))
            offender = enum_mod.check_bounded(enum, args.bound) if args.bound is not None else None
            print(f"stages={enum.stage_count() - 1} nodes={len(enum.current)}")
            if offender is not None:
                print(f"bound-violation node={enum_mod.format_node(offender)}")
                return FAIL
            print("ok")
            return OK
        if args.op == "measure":
            enum, ranks, bound = enum_mod.parse_enumeration_log(_read(args.file))
            for s, tree in enumerate(enum.stages):
                print(f"stage={s} zeta={format_ordinal(enum_mod.zeta_measure(tree, ranks))}")
            verdict = enum_mod.zeta_decrease_check(enum, ranks)
            if verdict.ok:
                print("decrease ok")
                return OK
            print(f"violation stage={verdict.stage} kind={verdict.kind}")
            return FAIL
        # run
        gen = _builtin_generator(args.style, args.depth, args.branching, args.seed)
        outcome = enum_mod.run_to_finiteness(gen, args.depth, args.branching, args.fuel)
        if isinstance(outcome, enum_mod.Finished):
            tree = outcome.enumeration.current
            limit = (args.branching + 1) ** (args.depth + 1)
            print(f"finished nodes={len(tree)} bound={limit}")
            return OK
        if isinstance(outcome, enum_mod.FuelExhausted):
            print(f"fuel-exhausted nodes={len(outcome.enumeration.current)}")
            return FAIL
        print(f"rejected: {outcome}")
        return FAIL
    except (ValueError, OrdinalSyntaxError, enum_mod.MissingRankError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAIL


# ---------------------------------------------------------------------------
# ramsey
# ---------------------------------------------------------------------------

def parse_family(text: str) -> SetFamily:
    """Family file: line 1 `n=<int> m=<int>`, then one set per line as
    space-separated elements, `-` for the empty set."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    header = dict(part.split("=", 1) for part in lines[0].split())
    n, m = int(header["n"]), int(header["m"])
    sets = []
    for ln in lines[1:m + 1]:
        sets.append(frozenset() if ln == "-" else frozenset(int(t) for t in ln.split()))
    if len(sets) != m:
        raise ValueError(f"expected {m} set lines, found {len(sets)}")
    return SetFamily(n, tuple(sets))


def format_family(family: SetFamily) -> str:
    lines = [f"n={family.n} m={len(family.sets)}"]
    for s in family.sets:
        lines.append(" ".join(str(x) for x in sorted(s)) if s else "-")
    return "\n".join(lines) + "\n"


def _cmd_ramsey(args) -> int:
    try:
        if args.op == "sweep":
            if args.n is None:
                print("error: ramsey sweep needs --n", file=sys.stderr)
                return FAIL
            return _cmd_sweep(args)
        if args.file is None:
            print(f"error: ramsey {args.op} needs an instance file", file=sys.stderr)
            return FAIL
        if args.op == "solve":
            coloring = parse_coloring(_read(args.file))
            trace = rt22_solve(coloring, args.window)
            if args.format == "trace":
                print(trace.to_json())
            else:
                print(f"n={trace.n} g0={len(trace.cohesive_set)} g1={len(trace.transitive_set)} "
                      f"size={len(trace.final_set)} color={trace.final_color} "
                      f"direction={trace.monotone_direction}")
            check = verify_trace(trace, coloring)
            homog = is_homogeneous(coloring, trace.final_set)
            if not (check.ok and homog.ok):
                print(f"invalid: stage={check.stage} {check.detail}")
                return FAIL
            return OK
        if args.op == "em":
            tournament = parse_tournament(_read(args.file))
            result = em_solve(tournament, args.window)
            print(f"n={tournament.n} size={len(result.subset)} "
                  f"set={','.join(map(str, result.subset))}")
            return OK if is_transitive(tournament, result.subset).ok else FAIL
        if args.op == "ads":
            order = parse_order(_read(args.file))
            result = ads_solve(order)
            print(f"n={order.n} direction={result.direction} size={len(result.sequence)} "
                  f"set={','.join(map(str, result.sequence))}")
            return OK
        if args.op == "coh":
            family = parse_family(_read(args.file))
            target = args.target if args.target is not None else family.n
            result = coh_solve(family, target)
            print(f"n={family.n} m={len(family.sets)} size={len(result.chosen)} "
                  f"set={','.join(map(str, result.chosen))} "
                  f"sides={''.join(map(str, result.sides))} "
                  f"thresholds={','.join(map(str, result.thresholds))}")
            return OK if verify_cohesive(family, result) else FAIL
        if args.op == "brute":
            text = _read(args.file)
            if args.instance == "coloring":
                coloring = parse_coloring(text)
                size, witness = brute_max_homogeneous(coloring)
            else:
                tournament = parse_tournament(text)
                size, witness = brute_max_transitive(tournament)
            print(f"max={size} witness={','.join(map(str, sorted(witness)))}")
            return OK
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAIL
    return FAIL


# ---------------------------------------------------------------------------
# sweep / generate
# ---------------------------------------------------------------------------

def _cmd_sweep(args) -> int:
    mode = "exhaustive" if args.exhaustive else "sample"
    try:
        started = time.monotonic()
        report = sweep(args.kind, args.n, mode, count=args.count, seed=args.seed,
                       window=args.window, target=args.target, max_rows=args.max_rows,
                       want_traces=(args.format == "trace" and args.kind == "coloring"))
        report.wall_clock = time.monotonic() - started
        sys.stdout.write(emit(report, args.format))
        print(f"wall_clock={report.wall_clock:.3f}s", file=sys.stderr)
        return OK if report.failures == 0 else FAIL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAIL


def _cmd_generate(args) -> int:
    try:
        instance = generate(args.kind, args.n, args.seed)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAIL
    if args.kind == "coloring":
        text = format_coloring(instance)
    elif args.kind == "tournament":
        text = format_tournament(instance)
    elif args.kind == "order":
        text = format_order(instance)
    else:
        text = format_family(instance)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="eps0", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_ord = sub.add_parser("ord", help="ordinal calculator")
    p_ord.add_argument("op", choices=["eval", "compare", "add", "nat-add", "nat-mul-k",
                                      "nat-mul-omega", "omega-pow", "tower", "encode", "decode"])
    p_ord.add_argument("a")
    p_ord.add_argument("b", nargs="?")
    p_ord.set_defaults(func=_cmd_ord)

    p_descent = sub.add_parser("descent", help="descent traces and the stream combiner")
    p_descent.add_argument("op", choices=["combine", "validate"])
    p_descent.add_argument("file")
    p_descent.set_defaults(func=_cmd_descent)

    p_enum = sub.add_parser("enum", help="monotone enumerations")
    p_enum.add_argument("op", choices=["check", "measure", "run"])
    p_enum.add_argument("file", nargs="?")
    p_enum.add_argument("--bound", type=int, default=None)
    p_enum.add_argument("--depth", type=int, default=3)
    p_enum.add_argument("--branching", type=int, default=2)
    p_enum.add_argument("--fuel", type=int, default=1000)
    p_enum.add_argument("--style", choices=["full", "chain", "random"], default="full")
    p_enum.add_argument("--seed", type=int, default=0)
    p_enum.set_defaults(func=_cmd_enum)

    p_ramsey = sub.add_parser("ramsey", help="pair-coloring solvers")
    p_ramsey.add_argument("op", choices=["solve", "em", "ads", "coh", "brute", "sweep"])
    p_ramsey.add_argument("file", nargs="?")
    p_ramsey.add_argument("--window", type=int, default=None)
    p_ramsey.add_argument("--target", type=int, default=None)
    p_ramsey.add_argument("--seed", type=int, default=0)
    p_ramsey.add_argument("--format", choices=["trace", "summary", "tsv"], default="summary")
    p_ramsey.add_argument("--instance", choices=["coloring", "tournament"],
                          default="coloring", help="instance kind for `brute`")
    p_ramsey.add_argument("--kind", choices=list(KINDS), default="coloring",
                          help="instance kind for `sweep`")
    p_ramsey.add_argument("--n", type=int, default=None, help="size for `sweep`")
    p_ramsey.add_argument("--exhaustive", action="store_true")
    p_ramsey.add_argument("--count", type=int, default=0)
    p_ramsey.add_argument("--max-rows", type=int, default=100_000)
    p_ramsey.set_defaults(func=_cmd_ramsey)

    p_sweep = sub.add_parser("sweep", help="run a solver over an instance family")
    p_sweep.add_argument("--kind", choices=list(KINDS), required=True)
    p_sweep.add_argument("--n", type=int, required=True)
    group = p_sweep.add_mutually_exclusive_group(required=True)
    group.add_argument("--exhaustive", action="store_true")
    group.add_argument("--count", type=int, default=0)
    p_sweep.add_argument("--seed", type=int, default=0)
    p_sweep.add_argument("--window", type=int, default=None)
    p_sweep.add_argument("--target", type=int, default=None)
    p_sweep.add_argument("--format", choices=list(FORMATS), default="summary")
    p_sweep.add_argument("--max-rows", type=int, default=100_000)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_generate = sub.add_parser("generate", help="emit a deterministic instance")
    p_generate.add_argument("--kind", choices=list(KINDS), required=True)
    p_generate.add_argument("--n", type=int, required=True)
    p_generate.add_argument("--seed", type=int, required=True)
    p_generate.add_argument("-o", "--output", default=None)
    p_generate.set_defaults(func=_cmd_generate)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
