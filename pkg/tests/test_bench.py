from pathlib import Path

import pandas as pd
import pytest

from spsp_search.driver import (
    BENCH_COLUMNS,
    TABLE_BENCH_COLUMNS,
    bench,
    sample_points,
    table_bench,
    write_bench_csv,
)
from spsp_search.driver.bench import primes_from
from spsp_search.stats import dominance_fraction, loglog_slope


def test_sample_points_and_primes() -> None:
    assert sample_points(10, 20, 3) == [10, 15, 20]
    assert sample_points(10, 20, 0) == []
    assert primes_from(90, 3) == [97, 101, 103]
    with pytest.raises(ValueError):
        sample_points(20, 10, 2)


def test_bench_rows(tmp_path: Path) -> None:
    frame = bench(10**4, 2 * 10**4, 3, bound=10**12, m=2, repeat=2)
    out = tmp_path / "bench.csv"

    write_bench_csv(frame, out)

    assert list(frame.columns[:4]) == BENCH_COLUMNS
    assert len(frame) == 3
    assert (frame[["t_gcd_ms", "t_lambda_ms", "t_sig_ms"]] >= 0).all().all()
    assert list(pd.read_csv(out).columns) == BENCH_COLUMNS


def test_table_bench_entries() -> None:
    frame = table_bench(10**5, 8)

    assert list(frame.columns) == TABLE_BENCH_COLUMNS
    assert int(frame.loc[0, "entries"]) == 9584


@pytest.mark.slow
def test_table_bench_matches_published_entry_count() -> None:
    assert int(table_bench(10**6, 8).loc[0, "entries"]) == 78490


@pytest.mark.slow
def test_bench_trends() -> None:
    frame = bench(10**7, 3.5 * 10**8, 12, repeat=3)

    assert 0.8 <= loglog_slope(frame["k"], frame["t_gcd_ms"]) <= 1.4
    active = frame["wheel_primes"] > 0
    assert dominance_fraction(frame["t_sig_ms"], frame["t_lambda_ms"], active) >= 0.9
