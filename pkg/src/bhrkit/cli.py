"""Command-line interface.

Exit codes: 0 success, 1 verification mismatch, 2 not realizable, 3 unknown or
search budget exhausted, 64 malformed input, 70 internal verification failure.
"""

from __future__ import annotations

import argparse
import sys
import time
from collections import Counter
from typing import Sequence

from . import __version__, store
from .lengths import (
    LengthMultiset,
    MalformedInput,
    PathSeq,
    RealizationKind,
    VerificationFailure,
    certify,
    verify_realization,
)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_NOT_REALIZABLE = 2
EXIT_UNKNOWN = 3
EXIT_USAGE = 64
EXIT_DEFECT = 70


class UsageError(MalformedInput):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with status 2
        raise UsageError(f"{self.prog}: {message}")


def _kind(args) -> RealizationKind:
    return RealizationKind.CYCLIC if args.cyclic else RealizationKind.LINEAR


def _multiset(text: str, v: int | None = None) -> LengthMultiset:
    return LengthMultiset.parse(text, v)


def _labels(labels) -> str:
    return ",".join(str(ell) for ell in labels)


# --- subcommands --------------------------------------------------------------------


def cmd_realize(args) -> int:
    from .catalog import NotRealizable, Unknown, plan_linear, realize

    L = _multiset(args.multiset, args.v)
    kind = _kind(args)
    if args.strategy:
        if kind is RealizationKind.CYCLIC and not L.is_cyclic_ranged():
            raise MalformedInput(f"cyclic lengths must be at most {L.v // 2}")
        plan = plan_linear(L)
        if plan is None or plan.strategy.value != args.strategy:
            chosen = "none" if plan is None else plan.strategy.value
            print(f"unknown: strategy {args.strategy} does not apply (dispatcher picks {chosen})")
            return EXIT_UNKNOWN
        result = certify(plan.build(), L, plan.strategy.value, kind)
    else:
        result = realize(L, kind, oracle_cap=args.oracle_cap)
    if isinstance(result, NotRealizable):
        print(f"not realizable: {result.reason}")
        return EXIT_NOT_REALIZABLE
    if isinstance(result, Unknown):
        print(f"unknown: {result.reason}")
        return EXIT_UNKNOWN
    sys.stdout.write(store.dumps(result))
    if args.out:
        where = store.save(result, args.out)
        print(f"wrote {where}", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    path = PathSeq.parse(args.path)
    L = _multiset(args.multiset, path.v)
    report = verify_realization(path, L, _kind(args))
    print(report.describe())
    return EXIT_OK if report.ok else EXIT_MISMATCH


def cmd_oracle(args) -> int:
    from .oracle import Exhausted, Found, SearchBudget, brute_force, min_ones

    budget = SearchBudget(node_limit=args.node_limit, cap=args.cap)
    if args.min_ones:
        x, b = args.min_ones
        result = min_ones(x, b, budget)
        if isinstance(result, Exhausted):
            print(f"exhausted after {result.nodes} nodes ({result.reason})")
            return EXIT_UNKNOWN
        print(f"min_ones({x},{b}) = {result}")
        return EXIT_OK
    if not args.multiset:
        raise UsageError("oracle needs --multiset or --min-ones")
    L = _multiset(args.multiset, args.v)
    outcome = brute_force(L, _kind(args), budget, workers=None)
    if isinstance(outcome, Found):
        print(f"found: {_labels(outcome.path.labels)}")
        return EXIT_OK
    if isinstance(outcome, Exhausted):
        print(f"exhausted after {outcome.nodes} nodes ({outcome.reason})")
        return EXIT_UNKNOWN
    print(f"proven none ({outcome.nodes} nodes)")
    return EXIT_NOT_REALIZABLE


def cmd_bhr_check(args) -> int:
    from .bhr import coverage_decision
    from .oracle import enumerate_admissible

    support = sorted({int(tok) for tok in args.support.split(",")})
    tally: Counter[str] = Counter()
    open_cases: list[str] = []
    for L in enumerate_admissible(args.v, support):
        d = coverage_decision(L)
        label = d.verdict.value
        if d.strategy:
            label += f" ({d.strategy})"
        elif d.citation:
            label += f" ({d.citation})"
        tally[label] += 1
        if args.list:
            print(f"{{{L}}}  {label}")
        if not d.covered:
            open_cases.append(str(L))
    print(f"v={args.v} support={{{','.join(map(str, support))}}}: {sum(tally.values())} admissible multisets")
    for label, n in sorted(tally.items()):
        print(f"  {n:6d}  {label}")
    for text in open_cases:
        print(f"  open: {{{text}}}")
    return EXIT_OK if not open_cases else EXIT_UNKNOWN


def format_table(table: dict[int, list[int]]) -> str:
    lines = ["  x | open orders v"]
    for x, orders in table.items():
        lines.append(f"{x:3d} | {' '.join(map(str, orders))}".rstrip())
    return "\n".join(lines) + "\n"


def cmd_bhr_table(args) -> int:
    from .bhr import scan_consecutive_support

    table: dict[int, list[int]] = {}
    for x in range(2, args.x_max + 1):
        t0 = time.perf_counter()
        table[x] = scan_consecutive_support(x, mode=args.mode).uncovered
        print(f"x={x}: {len(table[x])} open ({time.perf_counter() - t0:.2f}s)", file=sys.stderr)
    sys.stdout.write(format_table(table))
    return EXIT_OK


def cmd_eval(args) -> int:
    from .notation import evaluate

    ev = evaluate(args.expr, args.v, args.x)
    for warning in ev.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    print(_labels(ev.labels))
    if args.expect is None:
        return EXIT_OK
    if not ev.complete:
        print(f"mismatch: expression visits {len(ev.labels)} of {args.v} labels")
        return EXIT_MISMATCH
    report = verify_realization(ev.as_path(), _multiset(args.expect, args.v), RealizationKind.LINEAR)
    print(report.describe())
    return EXIT_OK if report.ok else EXIT_MISMATCH


def cmd_render(args) -> int:
    from .render import render_grid

    doc = render_grid(PathSeq.parse(args.path), args.width, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(doc)
    else:
        sys.stdout.write(doc)
    return EXIT_OK


# --- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bhrkit", description="Realize edge-length multisets by Hamiltonian paths in K_v.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", help="file of key=value lines giving flag defaults")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("realize", help="build and certify a realization")
    p.add_argument("--multiset", required=True, help="e.g. 1^6,7^18")
    p.add_argument("--v", type=int, help="order (default: multiset size + 1)")
    p.add_argument("--cyclic", action="store_true")
    p.add_argument("--strategy", help="require this construction")
    p.add_argument("--out", help="directory for the certificate file")
    p.add_argument("--oracle-cap", type=int, default=12, help="largest order handed to exhaustive search")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("verify", help="check a path against a multiset")
    p.add_argument("--multiset", required=True)
    p.add_argument("--path", required=True, help="comma-separated labels")
    p.add_argument("--cyclic", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="exhaustive search")
    p.add_argument("--multiset")
    p.add_argument("--v", type=int)
    p.add_argument("--cyclic", action="store_true")
    p.add_argument("--min-ones", nargs=2, type=int, metavar=("X", "B"))
    p.add_argument("--node-limit", type=int, default=5_000_000)
    p.add_argument("--cap", type=int, default=18, help="largest order searched")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("bhr", help="cyclic coverage reports")
    bhr_sub = p.add_subparsers(dest="bhr_command", required=True, parser_class=_Parser)
    q = bhr_sub.add_parser("check", help="coverage of every admissible multiset with a given support")
    q.add_argument("--v", type=int, required=True)
    q.add_argument("--support", required=True, help="e.g. 1,4,13")
    q.add_argument("--list", action="store_true", help="print one line per multiset")
    q.set_defaults(func=cmd_bhr_check)
    q = bhr_sub.add_parser("table", help="open orders for supports {1, x, x+1}")
    q.add_argument("--x-max", type=int, required=True)
    q.add_argument("--mode", choices=("theorem", "dispatcher"), default="theorem")
    q.set_defaults(func=cmd_bhr_table)

    p = sub.add_parser("eval", help="evaluate a column-chain expression")
    p.add_argument("--expr", required=True)
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--expect", help="multiset the path must realize")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("render", help="draw a path on the grid")
    p.add_argument("--path", required=True)
    p.add_argument("--width", type=int, required=True)
    p.add_argument("--format", choices=("ascii", "svg"), default="ascii")
    p.add_argument("--out")
    p.set_defaults(func=cmd_render)
    return parser


def read_config(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    for n, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep or not key.strip():
            raise UsageError(f"{path}:{n}: expected key=value")
        values[key.strip().replace("-", "_")] = value.strip()
    return values


def _apply_config(parser: argparse.ArgumentParser, config: dict[str, str]) -> set[str]:
    """Install config values as defaults throughout the parser tree; return the keys used."""
    used: set[str] = set()
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            for child in action.choices.values():
                used |= _apply_config(child, config)
            continue
        if action.dest not in config:
            continue
        value = config[action.dest]
        if isinstance(action, argparse._StoreTrueAction):
            if value.lower() not in ("true", "false", "1", "0", "yes", "no"):
                raise UsageError(f"config: {action.dest} takes true or false")
            action.default = value.lower() in ("true", "1", "yes")
        elif action.nargs is not None and action.nargs not in ("?",):
            action.default = [action.type(tok) if action.type else tok for tok in value.split()]
        else:
            action.default = value  # argparse applies the type to string defaults
        action.required = False
        used.add(action.dest)
    return used


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        parser = build_parser()
        pre = argparse.ArgumentParser(add_help=False)
        pre.add_argument("--config")
        known, _ = pre.parse_known_args(argv)
        if known.config:
            config = read_config(known.config)
            unknown = set(config) - _apply_config(parser, config)
            if unknown:
                raise UsageError(f"config: unknown keys {sorted(unknown)}")
        args = parser.parse_args(argv)
        return args.func(args)
    except VerificationFailure as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_DEFECT
    except (MalformedInput, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
