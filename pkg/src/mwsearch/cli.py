"""Command-line interface: ``mwsearch {search,gen,bench,dump-table}``.

Exit codes: ``search`` returns 0 when at least one match was found and 1 when
none was; every command returns 2 on error.
"""

from __future__ import annotations

import argparse
import itertools
import logging
import os
import sys

from .bench import BenchConfig, emit_report, gen_random_text, parse_int_list, run_bench
from .engines import EngineKind, EngineSpec, run_engine
from .errors import MWSearchError
from .model import Alphabet, Pattern
from .tables import build_multi_table_blockfill, dump_table

EXIT_FOUND, EXIT_NOT_FOUND, EXIT_ERROR = 0, 1, 2


class CliError(Exception):
    pass


def _letters_to_symbols(raw: bytes) -> bytes:
    """``a, b, c, ...`` as symbols ``0, 1, 2, ...``."""
    out = bytearray()
    for i, b in enumerate(raw):
        if not ord("a") <= b <= ord("z"):
            raise CliError(f"--letters: byte {b!r} at offset {i} is not a lowercase letter")
        out.append(b - ord("a"))
    return bytes(out)


def _read_file(path: str) -> bytes:
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None


def _pattern_bytes(args) -> bytes:
    if args.pattern_file is not None:
        raw = _read_file(args.pattern_file)
    else:
        raw = os.fsencode(args.pattern)
    return _letters_to_symbols(raw) if args.letters else raw


def cmd_search(args) -> int:
    text = _read_file(args.text)
    if args.letters:
        text = _letters_to_symbols(text.rstrip(b"\n"))
    pattern = _pattern_bytes(args)
    if args.alg == "mw":
        spec = EngineSpec(EngineKind.MULTI_WINDOW, args.windows, args.unrolled, args.metrics)
    else:
        if args.unrolled:
            raise CliError("--unrolled applies to --alg mw only")
        spec = EngineSpec(EngineKind(args.alg), instrumented=args.metrics)
    alphabet = Alphabet(args.sigma)
    matches, metrics = run_engine(spec, text, Pattern(pattern, alphabet, max(spec.windows, 1)), alphabet)

    out = sys.stdout
    if args.count_only:
        out.write(f"{len(matches)}\n")
    else:
        out.writelines(f"{p}\n" for p in matches)
    if metrics is not None:
        sys.stderr.write(metrics.summary() + "\n")
    return EXIT_FOUND if len(matches) else EXIT_NOT_FOUND


def cmd_gen(args) -> int:
    data = gen_random_text(args.sigma, args.size, args.seed)
    try:
        with open(args.out, "wb") as fh:
            fh.write(data)
    except OSError as exc:
        raise CliError(f"cannot write {args.out}: {exc.strerror}") from None
    return 0


def cmd_bench(args) -> int:
    try:
        m_list = parse_int_list(args.m)
    except ValueError as exc:
        raise CliError(f"--m: {exc}") from None
    algs = [EngineSpec.parse(a) for a in args.algs.split(",") if a.strip()]
    config = BenchConfig(
        sigma=args.sigma,
        text_size=args.size,
        m_list=m_list,
        algs=algs,
        reps=args.reps,
        patterns_per_cell=args.patterns,
        seed=args.seed,
        warmup=args.warmup,
    )
    text = emit_report(run_bench(config), args.format)
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(text)
        except OSError as exc:
            raise CliError(f"cannot write {args.out}: {exc.strerror}") from None
    else:
        sys.stdout.write(text)
    return 0


def cmd_dump_table(args) -> int:
    raw = os.fsencode(args.pattern)
    if args.letters:
        raw = _letters_to_symbols(raw)
    alphabet = Alphabet(args.sigma)
    pattern = Pattern(raw, alphabet, args.windows)
    table = build_multi_table_blockfill(pattern, windows=args.windows)
    if args.format == "binary":
        sys.stdout.buffer.write(dump_table(table))
        sys.stdout.buffer.flush()
        return 0
    view = table.as_ndarray()
    lines = []
    for index in itertools.product(range(table.sigma), repeat=table.windows):
        lines.append(",".join(map(str, index)) + f": {int(view[index])}\n")
    sys.stdout.writelines(lines)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mwsearch", description="Multi-window exact pattern matching."
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("search", help="find all occurrences of a pattern in a file")
    p.add_argument("--text", required=True, metavar="FILE")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--pattern", metavar="STR", help="pattern bytes, taken verbatim")
    src.add_argument("--pattern-file", metavar="FILE")
    p.add_argument("--alg", choices=["sf", "bmh", "qs", "mw"], default="mw")
    p.add_argument("--windows", type=int, default=2, metavar="N")
    p.add_argument("--sigma", type=int, default=256)
    p.add_argument("--unrolled", action="store_true")
    p.add_argument("--metrics", action="store_true", help="print event counters to stderr")
    p.add_argument("--count-only", action="store_true")
    p.add_argument(
        "--letters",
        action="store_true",
        help="read lowercase letters a, b, c, ... as symbols 0, 1, 2, ... (text and pattern)",
    )
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("gen", help="write a seeded uniform random text")
    p.add_argument("--sigma", type=int, required=True)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, metavar="FILE")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="time engines on seeded random text")
    p.add_argument("--sigma", type=int, required=True)
    p.add_argument("--size", type=int, default=1 << 20)
    p.add_argument("--m", default="2..12", metavar="LIST", help="e.g. 2..12 or 2,4,8")
    p.add_argument("--algs", default="bmh,qs,mw2,mw3", metavar="LIST")
    p.add_argument("--reps", type=int, default=100)
    p.add_argument("--patterns", type=int, default=10)
    p.add_argument("--warmup", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["csv", "table"], default="table")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("dump-table", help="print the multi-window shift table")
    p.add_argument("--pattern", required=True, metavar="STR")
    p.add_argument("--sigma", type=int, default=256)
    p.add_argument("--windows", type=int, default=2, metavar="N")
    p.add_argument("--format", choices=["text", "binary"], default="text")
    p.add_argument("--letters", action="store_true")
    p.set_defaults(func=cmd_dump_table)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verbose:
        logging.basicConfig(level=logging.INFO, format="%(message)s")
    try:
        return args.func(args)
    except (MWSearchError, CliError, ValueError) as exc:
        print(f"mwsearch: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
