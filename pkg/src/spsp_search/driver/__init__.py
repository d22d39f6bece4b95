"""Search orchestration, verification and benchmarking."""

from spsp_search.driver.bench import (
    BENCH_COLUMNS,
    TABLE_BENCH_COLUMNS,
    bench,
    sample_points,
    table_bench,
    time_prime,
    write_bench_csv,
)
from spsp_search.driver.checkpoint import Checkpoint, checkpoint_path
from spsp_search.driver.config import MAX_BASES, SearchConfig, parse_bound
from spsp_search.driver.hitfile import format_hit, parse_hit, read_hits, write_hits
from spsp_search.driver.records import Hit, Phase, UnresolvedResidual
from spsp_search.driver.search import (
    GenerationStats,
    SearchResult,
    SignatureMismatchError,
    generate_k,
    partition_range,
    run_unit,
    search,
)
from spsp_search.driver.verify import (
    VerificationCheck,
    VerificationReport,
    verify,
    verify_witness,
)
from spsp_search.driver.witnesses import PSI, PUBLISHED_TABLES, Witness, known_witnesses

__all__ = [
    "BENCH_COLUMNS",
    "Checkpoint",
    "GenerationStats",
    "Hit",
    "MAX_BASES",
    "PSI",
    "PUBLISHED_TABLES",
    "Phase",
    "SearchConfig",
    "SearchResult",
    "SignatureMismatchError",
    "TABLE_BENCH_COLUMNS",
    "UnresolvedResidual",
    "VerificationCheck",
    "VerificationReport",
    "Witness",
    "bench",
    "checkpoint_path",
    "format_hit",
    "generate_k",
    "known_witnesses",
    "parse_bound",
    "parse_hit",
    "partition_range",
    "read_hits",
    "run_unit",
    "sample_points",
    "search",
    "table_bench",
    "time_prime",
    "verify",
    "verify_witness",
    "write_bench_csv",
]
