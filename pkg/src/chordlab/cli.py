"""Command-line interface.

Exit status: 0 on success, 1 when a checked identity fails, 2 for usage
errors and size-guard refusals.  Results are cached on disk keyed by the
subcommand, its parameters, the output format and the schema version.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, Sequence

from . import commands
from .cache import ResultCache, cache_key, default_cache_dir
from .checks import run_suite
from .chords import DEFAULT_MAX_POINTS, SizeGuardError
from .graphs import DEFAULT_RELATION_WORK
from .partitions import as_partition
from .serialize import FORMATS, UnsupportedFormat, document, serialize

log = logging.getLogger("chordlab")

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _partition(text: str) -> tuple[int, ...]:
    try:
        return as_partition([int(x) for x in text.split(",") if x.strip()])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad partition {text!r}: {exc}") from exc


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("-n", "--points", type=int, help="number of points 2k")
    shared.add_argument("-g", "--genus", type=int)
    shared.add_argument("--k", type=int, help="half the number of points (or 3k for relations)")
    shared.add_argument("--partition", type=_partition, help="comma separated parts, e.g. 2,1,1")
    shared.add_argument("--format", choices=FORMATS, default="json")
    shared.add_argument("--out", type=Path, help="write to this file instead of stdout")
    shared.add_argument("--cache-dir", type=Path, help="result cache (default: $CHORDLAB_CACHE or the user cache)")
    shared.add_argument("--no-cache", action="store_true")
    shared.add_argument("--jobs", type=_positive, default=1)
    shared.add_argument("--seed", type=int, default=0)
    shared.add_argument("--limit-work", type=int, default=DEFAULT_RELATION_WORK)
    shared.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="chordlab", description="Chord diagram pairings and their eigenspaces, exactly.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("partitions", parents=[shared], help="partitions of k with dim E and the eigenvalue")
    sub.add_parser("diagrams", parents=[shared], help="list linear chord diagrams")
    sub.add_parser("matrix", parents=[shared], help="intersection matrix, symbolic or at --genus")
    sub.add_parser("eigen", parents=[shared], help="basis of the eigenspace E_λ for --partition")
    sub.add_parser("table", parents=[shared], help="orthogonal decomposition table")
    d = sub.add_parser("dims", parents=[shared], help="dimension of the invariant space")
    d.add_argument("--verify", action="store_true", help="also compute the Gram rank")
    sub.add_parser("tensors", parents=[shared], help="Φ image and the K∘Φ = M check")
    r = sub.add_parser("relations", parents=[shared], help="graph vectors from eigenspaces with λ_1 > g")
    r.add_argument("--variant", choices=("closed", "pointed"), default="closed")
    s = sub.add_parser("selftest", parents=[shared], help="run verification suites")
    s.add_argument("--level", choices=("quick", "full"), default="quick")
    return p


def _need(args, *names: str) -> None:
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.command} needs --{', --'.join(m.replace('_', '-') for m in missing)}")


def _points(args) -> int:
    if args.points is None and args.k is not None:
        return 2 * args.k
    _need(args, "points")
    if args.points < 0 or args.points % 2:
        raise UsageError("--points must be a non-negative even number")
    if args.points > DEFAULT_MAX_POINTS:
        raise SizeGuardError(f"--points above {DEFAULT_MAX_POINTS} is refused")
    return args.points


def _genus(args, minimum: int = 1) -> int:
    _need(args, "genus")
    if args.genus < minimum:
        raise UsageError(f"--genus must be >= {minimum}")
    return args.genus


def plan(args) -> tuple[str, dict, Callable[[], tuple[dict, bool]]]:
    """(kind, cache parameters, thunk) for a parsed command line."""
    c = args.command
    if c == "partitions":
        _need(args, "k")
        return c, {"k": args.k}, lambda: commands.partitions_doc(args.k)
    if c == "diagrams":
        n = _points(args)
        return c, {"points": n}, lambda: commands.diagrams_doc(n)
    if c == "matrix":
        n = _points(args)
        return c, {"points": n, "genus": args.genus}, lambda: commands.matrix_doc(n, args.genus, args.jobs)
    if c == "eigen":
        _need(args, "partition")
        return c, {"partition": list(args.partition)}, lambda: commands.eigen_doc(args.partition)
    if c == "table":
        n = _points(args)
        return c, {"points": n}, lambda: commands.table_doc(n)
    if c == "dims":
        _need(args, "k")
        g = _genus(args)
        return c, {"genus": g, "k": args.k, "verify": args.verify}, lambda: commands.dims_doc(g, args.k, args.verify)
    if c == "tensors":
        g = _genus(args)
        n = 2 * sum(args.partition) if args.partition and args.points is None else _points(args)
        lam = args.partition
        params = {"genus": g, "points": n, "partition": None if lam is None else list(lam)}
        return c, params, lambda: commands.tensors_doc(g, n, lam, args.jobs)
    if c == "relations":
        _need(args, "k")
        g = _genus(args, 2)
        params = {"k": args.k, "genus": g, "variant": args.variant, "seed": args.seed, "limit_work": args.limit_work}
        return c, params, lambda: commands.relations_doc(args.k, g, args.variant, args.seed, args.limit_work)
    if c == "selftest":
        return c, {"level": args.level}, lambda: _selftest(args.level, args.jobs)
    raise UsageError(f"unknown command {c}")


def _selftest(level: str, jobs: int) -> tuple[dict, bool]:
    results = run_suite(level, jobs)
    rows = [{"name": r.name, "passed": r.passed, "detail": r.detail, "blocking": r.blocking} for r in results]
    ok = all(r.passed for r in results if r.blocking)
    return document("selftest", level=level, passed=sum(r.passed for r in results), results=rows), ok


def execute(args) -> tuple[int, bytes]:
    kind, params, thunk = plan(args)
    key = cache_key(kind, params, args.format)
    cache = None
    # selftest always recomputes: its purpose is to exercise the code
    if not args.no_cache and kind != "selftest":
        cache = ResultCache(args.cache_dir or default_cache_dir())
        hit = cache.get(key)
        if hit is not None:
            log.debug("cache hit %s", cache.path_for(key).name)
            return EXIT_OK, hit
    doc, ok = thunk()
    payload = serialize(doc, args.format)
    if cache is not None and ok:
        try:
            cache.put(key, payload)
        except OSError as exc:
            log.warning("cache write failed: %s", exc)
    return (EXIT_OK if ok else EXIT_FAILED), payload


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        status, payload = execute(args)
    except (UsageError, SizeGuardError, UnsupportedFormat, ValueError) as exc:
        print(f"chordlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if status == EXIT_FAILED:
        print("chordlab: verification failed", file=sys.stderr)
    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_bytes(payload)
    else:
        sys.stdout.buffer.write(payload)
        sys.stdout.flush()
    return status
