"""Command-line surface.

Exit status: 0 on success, 1 on a mathematical negative (not
quasifinite, failed round trip, failed suite), 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import suites
from .classify import SSqWeight, check_qf, roundtrip, synthesize, tensor_labels
from .embedding import phi_hat
from .grammar import ParseError, parse_element, parse_laurent, parse_scalar
from .infmatrix import GlWeight, gl_quasifinite
from .io_json import (SchemaError, descriptor_to_json, load_descriptors,
                      load_weight, qp_to_json, ssq_to_json)
from .scalars import scalar_str
from .superalgebra import superbracket


def _fail_input(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _cmd_bracket(args) -> int:
    lhs = parse_element(args.lhs)
    rhs = parse_element(args.rhs)
    print(superbracket(lhs, rhs))
    return 0


def _parse_window(text: str):
    parts = text.split(":")
    if len(parts) != 2:
        raise ValueError("window must look like lo:hi")
    return Fraction(parts[0]), Fraction(parts[1])


def _cmd_embed(args) -> int:
    x = parse_element(args.element)
    s = parse_scalar(args.s)
    lo, hi = _parse_window(args.window)
    op = phi_hat(x, s, args.m)
    entries = op.window(lo, hi)
    indices = []
    k = lo
    while k <= hi:
        indices.append(k)
        k += Fraction(1, 2)
    grid = [[""] * (len(indices) + 1) for _ in range(len(indices) + 1)]
    for c, idx in enumerate(indices):
        grid[0][c + 1] = str(idx)
    for r, idx in enumerate(indices):
        grid[r + 1][0] = str(idx)
    for r, ri in enumerate(indices):
        for c, ci in enumerate(indices):
            v = entries.get((ri, ci))
            grid[r + 1][c + 1] = str(v) if v is not None else "0"
    widths = [max(len(grid[r][c]) for r in range(len(grid))) for c in range(len(grid[0]))]
    for row in grid:
        print("  ".join(cell.rjust(w) for cell, w in zip(row, widths)).rstrip())
    print(f"central: {op.central}")
    return 0


def _cmd_qfcheck(args) -> int:
    w = load_weight(_read(args.weight))
    if w is None:
        print("quasifinite: false (no annihilator within the degree bound)")
        return 1
    if isinstance(w, GlWeight):
        ok, violations = gl_quasifinite(w)
        print(f"quasifinite: {'true' if ok else 'false'}")
        for l, k in violations[:20]:
            where = "tails" if k is None else f"k = {k}"
            print(f"  violation: l = {l}, {where}")
        return 0 if ok else 1
    ok, b12, b21 = check_qf(w)
    verdict = "true" if ok else "false"
    print(f"quasifinite: {verdict}, b12 = {b12.to_str('x')}, b21 = {b21.to_str('x')}")
    return 0 if ok else 1


def _cmd_classify(args) -> int:
    w = load_weight(_read(args.weight))
    if w is None:
        print("not quasifinite: no annihilator within the degree bound")
        return 1
    if not isinstance(w, SSqWeight):
        return _fail_input("classify expects a quasipolynomial weight file")
    descriptors = synthesize(w.p12, w.p21)
    print(json.dumps([descriptor_to_json(d) for d in descriptors], indent=2))
    return 0


def _cmd_labels(args) -> int:
    descriptors = load_descriptors(_read(args.module))
    wt = tensor_labels(descriptors)
    print(json.dumps(ssq_to_json(wt), indent=2))
    return 0


def _cmd_roundtrip(args) -> int:
    w = load_weight(_read(args.weight))
    if w is None:
        print("not quasifinite: no annihilator within the degree bound")
        return 1
    if not isinstance(w, SSqWeight):
        return _fail_input("roundtrip expects a quasipolynomial weight file")
    report = roundtrip(w.p12, w.p21, w.c)
    print(report)
    return 0 if report.passed else 1


def _cmd_verify(args) -> int:
    names = sorted(suites.SUITES) if args.suite == "all" else [args.suite]
    status = 0
    for name in names:
        if name not in suites.SUITES:
            return _fail_input(f"unknown suite {name!r}; available: "
                               + ", ".join(sorted(suites.SUITES)) + ", all")
        result = suites.run_suite(name, args.seed, args.cases)
        print(result.summary(args.seed))
        for line in result.failures[:5]:
            print(f"  fail: {line}")
        if not result.ok:
            status = 1
    return status


def _cmd_parse(args) -> int:
    if args.element is not None:
        print(parse_element(args.element))
    elif args.laurent is not None:
        print(parse_laurent(args.laurent).to_str())
    else:
        print(scalar_str(parse_scalar(args.scalar)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qsigma",
        description="Exact computer algebra for quantum pseudo-differential operators")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bracket", help="superbracket of two elements")
    p.add_argument("--lhs", required=True)
    p.add_argument("--rhs", required=True)
    p.set_defaults(func=_cmd_bracket)

    p = sub.add_parser("embed", help="matrix window of the embedded element")
    p.add_argument("--element", required=True)
    p.add_argument("--s", default="s")
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--window", default="-2:2")
    p.set_defaults(func=_cmd_embed)

    p = sub.add_parser("qfcheck", help="quasifiniteness check for a weight file")
    p.add_argument("--weight", required=True)
    p.set_defaults(func=_cmd_qfcheck)

    p = sub.add_parser("classify", help="decompose a weight into module descriptors")
    p.add_argument("--weight", required=True)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("labels", help="labels of a module descriptor file")
    p.add_argument("--module", required=True)
    p.set_defaults(func=_cmd_labels)

    p = sub.add_parser("roundtrip", help="synthesis round trip for a weight file")
    p.add_argument("--weight", required=True)
    p.set_defaults(func=_cmd_roundtrip)

    p = sub.add_parser("verify", help="run a seeded property suite")
    p.add_argument("--suite", default="all")
    p.add_argument("--seed", type=int,
                   default=int(os.environ.get("QSIGMA_SEED", "0")))
    p.add_argument("--cases", type=int, default=50)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("parse", help="parse and reprint a literal")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--element")
    group.add_argument("--laurent")
    group.add_argument("--scalar")
    p.set_defaults(func=_cmd_parse)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, SchemaError, ValueError, ZeroDivisionError) as exc:
        return _fail_input(str(exc))
    except OSError as exc:
        return _fail_input(str(exc))


if __name__ == "__main__":
    sys.exit(main())
