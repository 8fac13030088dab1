"""drindex command-line front end.

    drindex build  --input FILE --index OUT [--block-size N] [--bootstrap-oracle]
    drindex count  --index IDX (--pattern P ... | --patterns FILE)
    drindex locate --index IDX (--pattern P ... | --patterns FILE)
    drindex edit   --index IDX --script FILE
    drindex verify --index IDX --input FILE [--script FILE] [--oracle-cap N]
    drindex stats  --input FILE [--oracle-cap N]
    drindex bench  --index IDX [--operations N] [--pattern-count N] [--pattern-length N]

Exit status is 0 on success and 1 on any reported error (2 for usage errors).
"""

import argparse
import logging
import random
import statistics
import sys
import time
from collections.abc import Callable, Sequence
from pathlib import Path

from src import __version__
from src.cli.edit_script import load_script
from src.cli.index_file import read_index, write_index
from src.index.edits import EditOp
from src.index.r_index import DynamicRIndex
from src.index.rlbwt import SENTINEL
from src.oracle.snapshot import apply_edit, build_snapshot, lcp_stats
from src.utils.config import DrIndexConfig, load_config
from src.utils.errors import ArgumentError, DrIndexError

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def _configure_logging(config: DrIndexConfig, verbose: bool) -> None:
    level = logging.DEBUG if verbose else getattr(logging, config.log_level, logging.INFO)
    logging.basicConfig(level=level, format=LOG_FORMAT, force=True)


def _oracle_cap(args: argparse.Namespace, config: DrIndexConfig) -> int:
    return args.oracle_cap if args.oracle_cap is not None else config.oracle_cap


def _read_input(path: Path) -> bytes:
    data = path.read_bytes()
    if SENTINEL in data:
        raise ArgumentError(f"{path} contains the reserved 0x00 byte")
    return data


def _load(args: argparse.Namespace, config: DrIndexConfig) -> DynamicRIndex:
    index = read_index(args.index, fanout=config.fanout)
    index.debug_trace = config.debug_trace
    index.debug_trace_cap = config.debug_trace_cap
    return index


def _patterns(args: argparse.Namespace) -> list[bytes]:
    patterns = [p.encode("utf-8") for p in args.pattern or []]
    if args.patterns is not None:
        patterns.extend(line for line in Path(args.patterns).read_bytes().splitlines() if line)
    if not patterns:
        raise ArgumentError("give at least one --pattern or a --patterns file")
    return patterns


# ---------------------------------------------------------------- commands


def cmd_build(args: argparse.Namespace, config: DrIndexConfig) -> int:
    """Index a file (sentinel appended) and write the index."""
    text = _read_input(Path(args.input))
    block_size = args.block_size or config.block_size
    if args.bootstrap_oracle:
        if len(text) + 1 > _oracle_cap(args, config):
            raise ArgumentError(
                f"--bootstrap-oracle refused: {len(text) + 1} symbols exceed the oracle cap"
            )
        index = DynamicRIndex.from_snapshot(build_snapshot(text + b"\x00"), fanout=config.fanout)
    else:
        index = DynamicRIndex.from_text(
            text, block_size=block_size, fanout=config.fanout, debug_trace=config.debug_trace
        )
    write_index(index, args.index)
    logger.info(f"Indexed {args.input} into {args.index}")
    print(f"n={index.n} r={index.r} n/r={index.n / index.r:.2f}")
    return 0


def cmd_count(args: argparse.Namespace, config: DrIndexConfig) -> int:
    index = _load(args, config)
    for number, pattern in enumerate(_patterns(args), start=1):
        print(f"{number} {index.count(pattern)}")
    return 0


def cmd_locate(args: argparse.Namespace, config: DrIndexConfig) -> int:
    index = _load(args, config)
    for number, pattern in enumerate(_patterns(args), start=1):
        positions = sorted(index.locate(pattern))
        print(" ".join(str(v) for v in [number, *positions]))
    return 0


def cmd_edit(args: argparse.Namespace, config: DrIndexConfig) -> int:
    """Apply a script, persisting the index after every operation."""
    ops = load_script(args.script)
    index = _load(args, config)
    for number, op in enumerate(ops, start=1):
        try:
            stats = index.apply(op)
        except ArgumentError as e:
            raise ArgumentError(
                f"operation {number} ({op.describe()}) rejected, "
                f"{number - 1} earlier operations kept: {e}"
            ) from e
        write_index(index, args.index)
        print(f"{op.kind.value} {stats.summary()}")
    logger.info(f"Applied {len(ops)} operations, n={index.n}, r={index.r}")
    return 0


def _first_difference(label: str, actual: Sequence[int], expected: Sequence[int]) -> str | None:
    if list(actual) == list(expected):
        return None
    for position, (a, b) in enumerate(zip(actual, expected, strict=False), start=1):
        if a != b:
            return f"{label}: first difference at {position}: index {a}, oracle {b}"
    return f"{label}: length {len(actual)} in the index, {len(expected)} in the oracle"


def cmd_verify(args: argparse.Namespace, config: DrIndexConfig) -> int:
    """Compare an index with the oracle arrays of the (edited) text."""
    text = _read_input(Path(args.input)) + b"\x00"
    ops: list[EditOp] = load_script(args.script) if args.script else []
    for op in ops:
        text = apply_edit(text, op)
    cap = _oracle_cap(args, config)
    if len(text) > cap:
        raise ArgumentError(f"verify refused: text of {len(text)} symbols exceeds oracle cap {cap}")

    index = _load(args, config)
    snapshot = build_snapshot(text)
    diffs = [
        diff
        for diff in (
            _first_difference("BWT", index.rlbwt.decode(), snapshot.bwt),
            _first_difference("SA_s", index.sa_s.values(), snapshot.sa_s),
            _first_difference("SA_e", index.sa_e.values(), snapshot.sa_e),
        )
        if diff is not None
    ]
    for diff in diffs:
        print(diff)
    if diffs:
        logger.warning(f"{args.index} does not match {args.input}")
        return 1
    print(f"OK n={index.n} r={index.r}")
    return 0


def cmd_stats(args: argparse.Namespace, config: DrIndexConfig) -> int:
    """Print sigma, n, r, L_avg, L_max and n/r of a text file."""
    text = _read_input(Path(args.input)) + b"\x00"
    cap = _oracle_cap(args, config)
    if len(text) > cap:
        raise ArgumentError(f"stats refused: text of {len(text)} symbols exceeds oracle cap {cap}")
    l_avg, l_max, r = lcp_stats(text)
    sigma = len(set(text) - {SENTINEL})
    print(
        f"sigma={sigma} n={len(text)} r={r} L_avg={float(l_avg):.2f} "
        f"L_max={l_max} n/r={len(text) / r:.2f}"
    )
    return 0


def _timed(samples: list[float], action: Callable[[], object]) -> None:
    started = time.perf_counter()
    action()
    samples.append((time.perf_counter() - started) * 1e6)


def _summary(name: str, samples: list[float]) -> str:
    if not samples:
        return f"{name}: 0.00 ± 0.00 us (0 runs)"
    spread = statistics.stdev(samples) if len(samples) > 1 else 0.0
    return f"{name}: {statistics.mean(samples):.2f} ± {spread:.2f} us ({len(samples)} runs)"


def cmd_bench(args: argparse.Namespace, config: DrIndexConfig) -> int:
    """Random character insertions, then backward search and locate timings."""
    index = _load(args, config)
    index.debug_trace = False
    bench = config.bench
    operations = args.operations if args.operations is not None else bench.operations
    pattern_count = args.pattern_count if args.pattern_count is not None else bench.patterns
    pattern_length = args.pattern_length or bench.pattern_length
    rng = random.Random(args.seed if args.seed is not None else bench.seed)

    alphabet = sorted({run.ch for run in index.runs()} - {SENTINEL}) or [ord("a")]
    inserts = [
        index.insert_char(rng.randint(1, index.n), rng.choice(alphabet)).micros
        for _ in range(operations)
    ]

    body = index.text()[:-1]
    patterns: list[bytes] = []
    if body and pattern_count:
        length = min(pattern_length, len(body))
        for _ in range(pattern_count):
            start = rng.randint(0, len(body) - length)
            patterns.append(body[start : start + length])

    searches: list[float] = []
    locates: list[float] = []
    for pattern in patterns:
        _timed(searches, lambda p=pattern: index.sa_interval(p))
        _timed(locates, lambda p=pattern: index.locate(p))

    print(_summary("insert_char", inserts))
    print(_summary("backward_search", searches))
    print(_summary("locate", locates))
    return 0


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="drindex", description="Dynamic r-index over a mutable text"
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--verbose", "-v", action="store_true", help="Log at DEBUG level")
    parser.add_argument("--config", type=Path, help="YAML configuration file")
    sub = parser.add_subparsers(dest="command", required=True)

    build = sub.add_parser("build", help="Index a text file")
    build.add_argument("--input", type=Path, required=True, help="Text file to index")
    build.add_argument("--index", type=Path, required=True, help="Index file to write")
    build.add_argument("--block-size", type=int, help="Bytes inserted per update")
    build.add_argument(
        "--bootstrap-oracle", action="store_true", help="Build small inputs by suffix sorting"
    )
    build.add_argument("--oracle-cap", type=int, help="Largest text the oracle accepts")
    build.set_defaults(handler=cmd_build)

    for name, handler, help_text in (
        ("count", cmd_count, "Count pattern occurrences"),
        ("locate", cmd_locate, "List pattern occurrences"),
    ):
        query = sub.add_parser(name, help=help_text)
        query.add_argument("--index", type=Path, required=True)
        query.add_argument("--pattern", action="append", help="Literal pattern (repeatable)")
        query.add_argument("--patterns", type=Path, help="File with one pattern per line")
        query.set_defaults(handler=handler)

    edit = sub.add_parser("edit", help="Apply an edit script in place")
    edit.add_argument("--index", type=Path, required=True)
    edit.add_argument("--script", type=Path, required=True)
    edit.set_defaults(handler=cmd_edit)

    verify = sub.add_parser("verify", help="Check an index against the oracle")
    verify.add_argument("--index", type=Path, required=True)
    verify.add_argument("--input", type=Path, required=True, help="Original text file")
    verify.add_argument("--script", type=Path, help="Edits applied since the build")
    verify.add_argument("--oracle-cap", type=int)
    verify.set_defaults(handler=cmd_verify)

    stats = sub.add_parser("stats", help="Text statistics (sigma, n, r, LCP)")
    stats.add_argument("--input", type=Path, required=True)
    stats.add_argument("--oracle-cap", type=int)
    stats.set_defaults(handler=cmd_stats)

    bench = sub.add_parser("bench", help="Time insertions and queries")
    bench.add_argument("--index", type=Path, required=True)
    bench.add_argument("--operations", type=int)
    bench.add_argument("--pattern-count", type=int)
    bench.add_argument("--pattern-length", type=int)
    bench.add_argument("--seed", type=int)
    bench.set_defaults(handler=cmd_bench)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """Entry point for the ``drindex`` console script."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config(args.config)
        _configure_logging(config, args.verbose)
        handler: Callable[[argparse.Namespace, DrIndexConfig], int] = args.handler
        return handler(args, config)
    except (DrIndexError, OSError) as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
