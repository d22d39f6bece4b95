"""Command-line entry point: ``spsp-search {search,verify,bench,table-bench}``."""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import NoReturn

import pandas as pd

from spsp_search.driver.bench import (
    DEFAULT_BENCH_BASES,
    DEFAULT_BENCH_BOUND,
    bench,
    table_bench,
    write_bench_csv,
)
from spsp_search.driver.config import SearchConfig, parse_bound
from spsp_search.driver.search import search
from spsp_search.driver.verify import verify, verify_witness
from spsp_search.driver.witnesses import known_witnesses
from spsp_search.wheelsieve import DEFAULT_HEADROOM

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_UNRESOLVED = 2

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


class UsageError(Exception):
    """Invalid command-line usage or configuration."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="spsp-search",
        description="Tabulate strong pseudoprimes to the first m prime bases.",
    )
    parser.add_argument("--log-level", default="INFO")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("search", help="search for strong pseudoprimes up to B")
    run.add_argument("--config", type=Path, help="YAML file with search settings")
    run.add_argument("--bound", help="upper bound B, e.g. 1.4e6 or 10^7")
    run.add_argument("--bases", type=int, help="number of prime bases m")
    run.add_argument("--cutoff", help="gcd/sieve cutoff X (default: B^(1/3))")
    run.add_argument("--t-max", type=int)
    run.add_argument("--headroom", type=int)
    run.add_argument("--workers", type=int)
    run.add_argument("--out", type=Path)
    run.add_argument("--resume", type=Path, help="checkpoint file to resume from")
    run.add_argument(
        "--no-signatures",
        action="store_true",
        help="sieve by lambda only, without the character wheel",
    )

    check = commands.add_parser("verify", help="verify a claimed strong pseudoprime")
    check.add_argument("--n")
    check.add_argument("--factors", help="comma-separated prime factors")
    check.add_argument("--bases", type=int, help="number of prime bases m")
    check.add_argument(
        "--known", action="store_true", help="verify every published witness"
    )

    timing = commands.add_parser("bench", help="time gcd against sieving per prime k")
    timing.add_argument("--range", dest="span", required=True, help="lo:hi")
    timing.add_argument("--samples", type=int, required=True)
    timing.add_argument("--out", type=Path, required=True)
    timing.add_argument("--repeat", type=int, default=1)
    timing.add_argument("--bound", default=str(DEFAULT_BENCH_BOUND))
    timing.add_argument("--bases", type=int, default=DEFAULT_BENCH_BASES)
    timing.add_argument("--headroom", type=int, default=DEFAULT_HEADROOM)

    table = commands.add_parser(
        "table-bench", help="time signature-table creation and fetching"
    )
    table.add_argument("--limit", required=True)
    table.add_argument("--bases", type=int, default=DEFAULT_BENCH_BASES)
    table.add_argument("--out", type=Path)
    return parser


def _search_config(args: argparse.Namespace) -> SearchConfig:
    values: dict[str, object] = {}
    if args.config is not None:
        import yaml

        loaded = yaml.safe_load(args.config.read_text(encoding="utf-8")) or {}
        if not isinstance(loaded, dict):
            raise UsageError(f"{args.config} does not hold a mapping")
        values.update(loaded)
    overrides = {
        "bound": args.bound,
        "bases": args.bases,
        "cutoff": args.cutoff,
        "t_max": args.t_max,
        "headroom": args.headroom,
        "workers": args.workers,
        "out": args.out,
        "resume": args.resume,
    }
    values.update({key: value for key, value in overrides.items() if value is not None})
    if args.no_signatures:
        values["use_signatures"] = False
    if "bound" not in values or ("bases" not in values and "m" not in values):
        raise UsageError("search needs --bound and --bases (or a --config with both)")
    return SearchConfig.from_mapping(values)


def _run_search(args: argparse.Namespace) -> int:
    cfg = _search_config(args)
    result = search(cfg)
    print(f"hits: {len(result.hits)}")
    if result.psi is None:
        print(f"no strong pseudoprime to {cfg.m} bases up to {cfg.bound}")
    else:
        print(f"smallest: {result.psi}")
    if not result.complete:
        print(f"unresolved k values: {len(result.unresolved)}")
        return EXIT_UNRESOLVED
    return EXIT_OK


def _run_verify(args: argparse.Namespace) -> int:
    if args.known:
        failures = 0
        for witness in known_witnesses():
            report = verify_witness(witness)
            status = "ok" if report.ok else "FAILED"
            print(f"{witness.label}\t{witness.n}\t{report.bases_passed}\t{status}")
            if not report.ok:
                print(report.to_frame().to_string(index=False))
                failures += 1
        return EXIT_OK if failures == 0 else EXIT_USAGE
    if args.n is None:
        raise UsageError("verify needs --n or --known")
    if args.bases is None:
        raise UsageError("verify needs --bases unless --known is given")
    factors = None
    if args.factors:
        factors = [parse_bound(part) for part in args.factors.split(",")]
    report = verify(parse_bound(args.n), factors, args.bases)
    print(f"n={report.n} bases_passed={report.bases_passed} of {report.m}")
    print(report.to_frame().to_string(index=False))
    return EXIT_OK if report.ok else EXIT_USAGE


def _run_bench(args: argparse.Namespace) -> int:
    lo_text, sep, hi_text = args.span.partition(":")
    if not sep:
        raise UsageError("--range must look like lo:hi")
    frame = bench(
        parse_bound(lo_text),
        parse_bound(hi_text),
        args.samples,
        bound=parse_bound(args.bound),
        m=args.bases,
        repeat=args.repeat,
        headroom=args.headroom,
    )
    write_bench_csv(frame, args.out)
    logger.info("Wrote %d bench rows to %s", len(frame), args.out)
    return EXIT_OK


def _run_table_bench(args: argparse.Namespace) -> int:
    frame = table_bench(parse_bound(args.limit), args.bases)
    if args.out is not None:
        frame.to_csv(args.out, index=False)
    with pd.option_context("display.float_format", "{:.3f}".format):
        print(frame.to_string(index=False))
    return EXIT_OK


_COMMANDS = {
    "search": _run_search,
    "verify": _run_verify,
    "bench": _run_bench,
    "table-bench": _run_table_bench,
}


def main(argv: Sequence[str] | None = None) -> int:
    """Run the CLI and return its exit status."""

    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=args.log_level.upper(), format=LOG_FORMAT)
        return _COMMANDS[args.command](args)
    except (UsageError, ValueError, OSError) as exc:
        print(f"spsp-search: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
