"""Command line: ``cubelink generate|verify|oracle|export``.

Exit codes: 0 success (or verdict holds), 1 verified but negative verdict,
2 usage, parse or cost errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional

from . import __version__
from .construct import (
    PERFECT,
    SHARED_APEX,
    STAR,
    PerfectParams,
    SegmentSet,
    build_perfect_cycle,
    build_shared_apex_cycle,
    build_star_tree,
)
from .documents import (
    DocumentError,
    construction_notes,
    dumps,
    outcome_document,
    parse_document,
    report_document,
    serialize,
)
from .exactq import parse_rational
from .hypercube import CostError
from .oracle import lemma1_exhaustive, lemma1_sample
from .render import to_csv, to_svg
from .verify import FAST, FULL, Classification, verify_chain

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2
FULL_MODE_MAX_K = 10


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from None


def _rational_list(text: str) -> List[Fraction]:
    return [_rational(t) for t in text.split(",") if t.strip()]


def _index_pair(text: str):
    try:
        i, j = (int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two comma-separated indices, got {text!r}") from None
    return i, j


def _write(text: str, out: Optional[str]) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _read_document(path: str):
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON: {exc}") from None
    try:
        return data, parse_document(data)
    except DocumentError as exc:
        raise UsageError(f"{path}: {exc}") from None


def cmd_generate(args) -> int:
    if args.scale is not None and args.variant != SHARED_APEX:
        raise UsageError("--scale only applies to --variant shared-apex")
    if args.heights is not None and args.variant != PERFECT:
        raise UsageError("--heights only applies to --variant perfect")
    try:
        if args.variant == SHARED_APEX:
            obj = build_shared_apex_cycle(args.k, Fraction(3) if args.scale is None else args.scale)
        elif args.variant == PERFECT:
            params = None if args.heights is None else PerfectParams(tuple(args.heights))
            obj = build_perfect_cycle(args.k, params)
        else:
            obj = build_star_tree(args.k)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _write(serialize(obj), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    path = args.input or args.input_flag
    if path is None:
        raise UsageError("verify needs an input document")
    data, obj = _read_document(path)
    if isinstance(obj, SegmentSet):
        raise UsageError("star documents are segment sets, not chains; nothing to verify")
    mode = args.mode
    if mode is None:
        if obj.k > FULL_MODE_MAX_K:
            raise UsageError(f"k={obj.k} > {FULL_MODE_MAX_K}: pass --mode fast (or --mode full explicitly)")
        mode = FULL
    rep = verify_chain(obj, mode=mode)
    _write(dumps(report_document(rep, construction_notes(data, obj))), args.out)
    return verdict_exit_code(rep)


def verdict_exit_code(rep) -> int:
    good = rep.classification >= Classification.COVERING_CYCLE and rep.optimal
    return EXIT_OK if good else EXIT_NEGATIVE


def cmd_oracle(args) -> int:
    try:
        if args.mode == "exhaustive":
            out = lemma1_exhaustive(args.k, chunks=args.chunks, workers=args.workers)
            doc = outcome_document(out)
        else:
            out = lemma1_sample(args.k, args.samples, args.seed, args.box)
            doc = outcome_document(out, seed=args.seed, box=str(args.box))
    except CostError as exc:
        raise UsageError(str(exc)) from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _write(dumps(doc), args.out)
    return EXIT_OK if out.holds else EXIT_NEGATIVE


def cmd_export(args) -> int:
    _, obj = _read_document(args.input or args.input_flag)
    try:
        if args.format == "svg":
            text = to_svg(obj, args.proj, args.pixel_scale)
        else:
            text = to_csv(obj)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _write(text, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cubelink", description="Minimum-link covering cycles for the nodes of the k-cube.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", help="build a covering cycle or the star tree")
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--variant", choices=(SHARED_APEX, PERFECT, STAR), default=SHARED_APEX)
    g.add_argument("--scale", type=_rational, help="shared-apex base scale (default 3)")
    g.add_argument("--heights", type=_rational_list, help="perfect-cycle apex heights, comma separated")
    g.add_argument("--out", help="output path (default: stdout)")
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", help="check coverage and classify a chain document")
    v.add_argument("input", nargs="?")
    v.add_argument("--in", dest="input_flag")
    v.add_argument("--mode", choices=(FULL, FAST))
    v.add_argument("--out", help="report path (default: stdout)")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", help="check that 3 links never reach 5 nodes")
    o.add_argument("--k", type=int, required=True)
    o.add_argument("--mode", choices=("exhaustive", "random"), default="exhaustive")
    o.add_argument("--samples", type=int, default=100_000)
    o.add_argument("--seed", type=int, default=0)
    o.add_argument("--box", type=_rational, default=Fraction(3))
    o.add_argument("--chunks", type=int, default=1)
    o.add_argument("--workers", type=int, default=1)
    o.add_argument("--out", help="report path (default: stdout)")
    o.set_defaults(func=cmd_oracle)

    e = sub.add_parser("export", help="render a document as SVG or CSV")
    e.add_argument("input", nargs="?")
    e.add_argument("--in", dest="input_flag")
    e.add_argument("--format", choices=("svg", "csv"), default="svg")
    e.add_argument("--proj", type=_index_pair, default=(0, 1))
    e.add_argument("--pixel-scale", type=int, default=120)
    e.add_argument("--out", help="output path (default: stdout)")
    e.set_defaults(func=cmd_export)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "command", None) == "export" and not (args.input or args.input_flag):
            raise UsageError("export needs an input document")
        return args.func(args)
    except UsageError as exc:
        print(f"cubelink: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
