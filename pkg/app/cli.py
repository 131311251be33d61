"""Command line entry point: `biorder compare|sort|levitt|monodromy|fuzz|serve`.

Exit codes: 0 success (or a positive verdict), 1 negative verdict or a fuzz
counterexample, 2 unparseable input, 3 unmet precondition (for example an
uncertified monodromy). Results go to stdout; logs go to stderr.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from functools import cmp_to_key
from pathlib import Path
from typing import List, Optional, Sequence, TextIO

from dotenv import load_dotenv

from app.core.config import settings
from app.core.errors import BiorderError, ParseError
from app.core.logging import configure_logging
from app.services.contexts import SELECTORS, GroupContext, build_context, parse_monodromy
from app.services.fuzz import parse_laws, run_fuzz
from app.services.torus_bundle import PRESETS, analyze_monodromy
from app.services.zn_order import levitt_check
from app.utils.grammar import parse_matrix

EXIT_OK = 0
EXIT_FALSE = 1

# a matrix such as "-2,1;-1,0" would otherwise be taken for an option
_NEGATIVE_MATRIX = re.compile(r"^-\d+\s*,")


def _dump(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True)


def _add_group_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--group",
        required=True,
        help=f"group context: {', '.join(SELECTORS)}",
    )
    parser.add_argument("--matrix", help="matrix 'm11,m12;m21,m22' for z2-eigen")
    parser.add_argument(
        "--monodromy",
        nargs=4,
        metavar=("PHI_A", "PHI_B", "INV_A", "INV_B"),
        help="monodromy images and inverse images for --group bundle",
    )


def _context(args: argparse.Namespace) -> GroupContext:
    matrix = parse_matrix(args.matrix) if args.matrix else None
    return build_context(args.group, matrix=matrix, monodromy=args.monodromy)


def cmd_compare(args: argparse.Namespace, out: TextIO) -> int:
    ctx = _context(args)
    u, v = ctx.parse(args.left), ctx.parse(args.right)
    verdict = ctx.compare(u, v)
    if args.json:
        decision = ctx.explain(u, v)
        out.write(_dump({"verdict": verdict.name, "stage": decision.stage, "details": decision.details}) + "\n")
    else:
        out.write(verdict.name + "\n")
    return EXIT_OK


def cmd_sort(args: argparse.Namespace, out: TextIO) -> int:
    ctx = _context(args)
    text = sys.stdin.read() if args.file == "-" else Path(args.file).read_text(encoding="utf-8")
    entries = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        entries.append((line, ctx.parse(line, line=number)))
    entries.sort(key=cmp_to_key(lambda p, q: int(ctx.compare(p[1], q[1]))))
    if args.json:
        out.write(_dump({"elements": [line for line, _ in entries]}) + "\n")
    else:
        for line, _ in entries:
            out.write(line + "\n")
    return EXIT_OK


def cmd_levitt(args: argparse.Namespace, out: TextIO) -> int:
    report = levitt_check(parse_matrix(args.matrix))
    if args.json:
        out.write(_dump(report.to_dict()) + "\n")
    else:
        for key, value in report.to_dict().items():
            out.write(f"{key}: {'none' if value is None else value}\n")
    return EXIT_OK if report.preserves else EXIT_FALSE


def cmd_monodromy(args: argparse.Namespace, out: TextIO) -> int:
    if args.words:
        spec = parse_monodromy(args.words)
    elif args.preset:
        spec = PRESETS[args.preset]()
    else:
        raise ParseError("give --preset or --words PHI_A PHI_B INV_A INV_B")
    report = analyze_monodromy(spec)
    payload = {"name": spec.name, "matrix": str(spec.matrix), **report.to_dict()}
    if args.json:
        out.write(_dump(payload) + "\n")
    else:
        out.write(f"monodromy: {spec.name}\n")
        out.write(f"matrix: {spec.matrix}\n")
        out.write(f"verdict: {report.verdict.value}\n")
        out.write(f"period: {'none' if report.period is None else report.period}\n")
        out.write(f"provably-not-biorderable: {str(report.provably_not_biorderable).lower()}\n")
    return EXIT_OK if report.certified else EXIT_FALSE


def cmd_fuzz(args: argparse.Namespace, out: TextIO) -> int:
    ctx = _context(args)
    report = run_fuzz(ctx, parse_laws(args.laws), samples=args.samples, seed=args.seed)
    out.write((_dump(report.to_dict()) if args.json else report.render()) + "\n")
    return EXIT_OK if report.passed else EXIT_FALSE


def cmd_serve(args: argparse.Namespace, out: TextIO) -> int:
    import asyncio

    from hypercorn.asyncio import serve
    from hypercorn.config import Config

    from app.main import app

    config = Config()
    config.bind = [f"{args.host}:{args.port}"]
    config.use_reloader = settings.RELOAD
    asyncio.run(serve(app, config))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="biorder", description="Bi-order comparison oracles")
    parser.add_argument("--log-level", default=None, help="override LOG_LEVEL")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compare", help="compare two elements (LT, EQ or GT)")
    _add_group_options(p)
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_compare)

    p = sub.add_parser("sort", help="sort the elements of a file, one per line ('-' for stdin)")
    _add_group_options(p)
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_sort)

    p = sub.add_parser("levitt", help="does a 2x2 integer matrix preserve a bi-order of Z^2?")
    p.add_argument("matrix", help="'m11,m12;m21,m22'")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_levitt)

    p = sub.add_parser("monodromy", help="certify a punctured-torus bundle monodromy")
    p.add_argument("--preset", choices=sorted(PRESETS))
    p.add_argument("--words", nargs=4, metavar=("PHI_A", "PHI_B", "INV_A", "INV_B"))
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_monodromy)

    p = sub.add_parser("fuzz", help="randomized check of the order laws")
    _add_group_options(p)
    p.add_argument("--samples", type=int, default=settings.FUZZ_SAMPLES)
    p.add_argument("--seed", type=int, default=settings.FUZZ_SEED)
    p.add_argument(
        "--laws",
        default="all",
        help="comma separated: trichotomy, transitivity, left-inv, right-inv, conj-inv, endo-inv",
    )
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_fuzz)

    p = sub.add_parser("serve", help="run the HTTP API with hypercorn")
    p.add_argument("--host", default=settings.HOST)
    p.add_argument("--port", type=int, default=settings.PORT)
    p.set_defaults(handler=cmd_serve)
    return parser


def _shield_matrices(argv: Sequence[str]) -> List[str]:
    """Prefix negative-leading matrix tokens with a space; parse_matrix strips it."""
    return [" " + token if _NEGATIVE_MATRIX.match(token) else token for token in argv]


def main(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None) -> int:
    load_dotenv()
    args = build_parser().parse_args(_shield_matrices(sys.argv[1:] if argv is None else argv))
    configure_logging(args.log_level)
    stream = out if out is not None else sys.stdout
    try:
        return args.handler(args, stream)
    except BiorderError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.exit_code
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return ParseError.exit_code


def run() -> None:
    sys.exit(main())


__all__: List[str] = ["main", "build_parser", "run"]
