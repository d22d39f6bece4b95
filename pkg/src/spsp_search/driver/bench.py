"""Timing of the gcd chain against lambda-sieving and signature sieving."""

from __future__ import annotations

import logging
import time
from collections.abc import Callable
from pathlib import Path

import gmpy2
import numpy as np
import pandas as pd

from spsp_search.bigmath import Natural, factor_small
from spsp_search.gcdfilter import CandidateK, UnresolvedResidualError, gcd_filter
from spsp_search.primestream import FactoredPrime, stream_primes
from spsp_search.signatures import BaseVector
from spsp_search.sigtable import PrimeRecord, SignatureTable
from spsp_search.wheelsieve import DEFAULT_HEADROOM, build_wheel_plan, sieve_candidate

logger = logging.getLogger(__name__)

BENCH_COLUMNS = ["k", "t_gcd_ms", "t_lambda_ms", "t_sig_ms"]
TABLE_BENCH_COLUMNS = ["largest_prime", "entries", "creation_s", "fetching_s"]
DEFAULT_BENCH_BOUND = 10**19
DEFAULT_BENCH_BASES = 8


def sample_points(lo: Natural, hi: Natural, samples: int) -> list[Natural]:
    """Return ``samples`` evenly spaced integers in ``[lo, hi]``.

    Example:
        >>> sample_points(10, 20, 3)
        [10, 15, 20]
    """

    if samples < 0:
        raise ValueError("samples must be non-negative")
    if hi < lo:
        raise ValueError("bench range must satisfy lo <= hi")
    if samples == 0:
        return []
    return [int(v) for v in np.linspace(lo, hi, samples).round()]


def primes_from(point: Natural, count: int) -> list[Natural]:
    """Return the first ``count`` primes that are at least ``point``."""

    primes: list[Natural] = []
    candidate = gmpy2.mpz(max(point, 2) - 1)
    while len(primes) < count:
        candidate = gmpy2.next_prime(candidate)
        primes.append(int(candidate))
    return primes


def _elapsed_ms(action: Callable[[], object]) -> float:
    started = time.perf_counter()
    action()
    return (time.perf_counter() - started) * 1000.0


def time_prime(
    p: Natural,
    bound: Natural,
    nu: BaseVector,
    headroom: int = DEFAULT_HEADROOM,
) -> tuple[float, float, float, int]:
    """Time the three ways of settling ``k = p``.

    Returns:
        Milliseconds for the gcd chain, pure lambda-sieving and signature
        sieving, and the number of wheel primes the signature wheel used.
    """

    record = PrimeRecord.from_factored(FactoredPrime(p, factor_small(p - 1)), nu)
    k = CandidateK((p,), record.sigma, record.lam)

    def run_gcd() -> None:
        try:
            gcd_filter(k, nu, bound)
        except UnresolvedResidualError:
            logger.debug("Residual for k=%d left unresolved during timing", p)

    plans = build_wheel_plan(k, bound, nu, headroom)
    pure = build_wheel_plan(k, bound, nu, headroom, use_signatures=False)
    t_gcd = _elapsed_ms(run_gcd)
    t_lambda = _elapsed_ms(lambda: sieve_candidate(k, pure, bound, nu.m))
    t_sig = _elapsed_ms(lambda: sieve_candidate(k, plans, bound, nu.m))
    wheel_primes = max((len(plan.wheel_primes) for plan in plans), default=0)
    return t_gcd, t_lambda, t_sig, wheel_primes


def bench(
    lo: Natural,
    hi: Natural,
    samples: int,
    *,
    bound: Natural = DEFAULT_BENCH_BOUND,
    m: int = DEFAULT_BENCH_BASES,
    repeat: int = 1,
    headroom: int = DEFAULT_HEADROOM,
) -> pd.DataFrame:
    """Time each sampled prime ``k`` in ``[lo, hi]``.

    Each row averages the timings over the first ``repeat`` primes at or
    after the sample point and is labelled with the first of them.

    Raises:
        ValueError: If ``repeat`` is not positive or the range is invalid.
    """

    if repeat < 1:
        raise ValueError("repeat must be positive")
    nu = BaseVector.first(m)
    rows = []
    for point in sample_points(lo, hi, samples):
        primes = [p for p in primes_from(point, repeat) if p > nu.bases[-1]]
        if not primes:
            continue
        timings = np.array([time_prime(p, bound, nu, headroom) for p in primes])
        means = timings.mean(axis=0)
        rows.append(
            (primes[0], means[0], means[1], means[2], int(timings[:, 3].max()))
        )
        logger.debug("Timed k=%d: %s", primes[0], means)
    return pd.DataFrame(rows, columns=[*BENCH_COLUMNS, "wheel_primes"])


def write_bench_csv(frame: pd.DataFrame, path: Path) -> None:
    """Write the timing columns of ``frame`` to ``path``, replacing any earlier run."""

    frame.reindex(columns=BENCH_COLUMNS).to_csv(path, index=False, float_format="%.3f")


def table_bench(limit: Natural, m: int = DEFAULT_BENCH_BASES) -> pd.DataFrame:
    """Time filling a signature table with every prime up to ``limit`` and fetching.

    Example:
        >>> int(table_bench(100, 2)["entries"].iloc[0])
        23
    """

    nu = BaseVector.first(m)
    table = SignatureTable(m)
    records = []
    started = time.perf_counter()
    if limit >= nu.next_prime:
        for rec in stream_primes(nu.next_prime, limit):
            record = PrimeRecord.from_factored(rec, nu)
            table.insert(record)
            records.append(record)
    creation = time.perf_counter() - started
    started = time.perf_counter()
    for record in records:
        table.fetch(record.sigma)
    fetching = time.perf_counter() - started
    return pd.DataFrame(
        [(limit, len(table), creation, fetching)], columns=TABLE_BENCH_COLUMNS
    )


__all__ = [
    "BENCH_COLUMNS",
    "DEFAULT_BENCH_BASES",
    "DEFAULT_BENCH_BOUND",
    "TABLE_BENCH_COLUMNS",
    "bench",
    "primes_from",
    "sample_points",
    "table_bench",
    "time_prime",
    "write_bench_csv",
]
