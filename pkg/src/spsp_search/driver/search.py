"""Candidate generation and the two-phase search loop.

For every ``t = 2, 3, ...`` the candidate preproducts ``k`` are generated
twice: ``k <= X`` goes through the gcd chain and ``k > X`` through wheel
sieving. The loop ends at the first ``t`` that yields no candidate at all.
"""

from __future__ import annotations

import logging
import math
import time
from collections.abc import Callable, Iterable, Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

import gmpy2
import pandas as pd

from spsp_search.bigmath import (
    Natural,
    factor_small,
    is_probable_prime,
    spsp_base_count,
)
from spsp_search.driver.checkpoint import Checkpoint
from spsp_search.driver.config import SearchConfig
from spsp_search.driver.hitfile import append_hit, read_hits, write_hits
from spsp_search.driver.records import Hit, Phase, UnresolvedResidual
from spsp_search.gcdfilter import CandidateK, UnresolvedResidualError, gcd_filter
from spsp_search.primestream import stream_primes
from spsp_search.signatures import BaseVector, compute_signature
from spsp_search.sigtable import PrimeRecord, SignatureTable
from spsp_search.wheelsieve import build_wheel_plan, sieve_candidate

logger = logging.getLogger(__name__)

ProgressCallback = Callable[[Natural, int, Sequence[UnresolvedResidual]], None]
HitSink = Callable[[Hit], None]


class SignatureMismatchError(RuntimeError):
    """Raised when a confirmed hit has factors with different signatures."""

    def __init__(self, n: Natural, factors: tuple[Natural, ...]) -> None:
        self.n = n
        self.factors = factors
        super().__init__(f"Factors {factors} of hit {n} do not share a signature")


@dataclass
class GenerationStats:
    """Counters filled in while a :func:`generate_k` stream is consumed.

    ``candidates`` counts every admissible ``k`` before the phase filter, so
    a zero after both phases means no ``k`` exists for that ``t``.
    """

    outer_primes: int = 0
    candidates: int = 0
    emitted: int = 0
    last_outer: Natural = 0


@dataclass
class UnitResult:
    """Output of one ``(phase, t)`` unit, or of one chunk of it."""

    hits: list[Hit] = field(default_factory=list)
    unresolved: list[UnresolvedResidual] = field(default_factory=list)
    candidates: int = 0
    k_count: int = 0

    def merge(self, other: UnitResult) -> None:
        self.hits.extend(other.hits)
        self.unresolved.extend(other.unresolved)
        self.candidates += other.candidates
        self.k_count += other.k_count


@dataclass
class SearchResult:
    """Deduplicated hits sorted by ``n`` plus any residuals left unfactored."""

    config: SearchConfig
    hits: list[Hit]
    unresolved: list[UnresolvedResidual]
    exhausted: bool = True

    @property
    def complete(self) -> bool:
        """``True`` when no ``k`` was left undecided."""

        return not self.unresolved

    @property
    def psi(self) -> Natural | None:
        """Smallest hit passing every base, if any was found."""

        passing = [hit.n for hit in self.hits if hit.bases_passed == self.config.m]
        return min(passing, default=None)

    def to_frame(self) -> pd.DataFrame:
        columns = ["n", "t", "factors", "bases_passed", "found_by"]
        if not self.hits:
            return pd.DataFrame(columns=columns)
        return pd.DataFrame(
            [
                (
                    hit.n,
                    hit.t,
                    "*".join(map(str, hit.factors)),
                    hit.bases_passed,
                    hit.found_by.value,
                )
                for hit in self.hits
            ],
            columns=columns,
        )


def outer_limit(t: int, cfg: SearchConfig, nu: BaseVector) -> Natural:
    """Largest prime that can be the top factor of a ``k`` with ``t - 1`` factors."""

    if t == 2:
        return math.isqrt(cfg.bound)
    return math.isqrt(cfg.bound // nu.next_prime ** (t - 2))


def insert_limit(t: int, cfg: SearchConfig, nu: BaseVector) -> Natural:
    """Largest prime that can appear below the top factor of ``k``."""

    return int(gmpy2.iroot(cfg.bound // nu.next_prime ** (t - 3), 3)[0])


def generate_k(
    t: int,
    cfg: SearchConfig,
    table: SignatureTable | None = None,
    mode: Phase = Phase.GCD,
    stats: GenerationStats | None = None,
    *,
    start: Natural = 2,
    stop: Natural | None = None,
) -> Iterator[CandidateK]:
    """Yield the candidate ``k`` values with ``t - 1`` prime factors for one phase.

    For ``t = 2`` each prime ``p <= sqrt(B)`` outside the base vector is a
    ``k``. For larger ``t`` every prime ``p`` up to :func:`outer_limit` is
    combined with each ``(t - 2)``-subset of the smaller primes sharing its
    signature; primes up to :func:`insert_limit` are then added to ``table``.
    ``mode`` keeps ``k <= X`` (gcd) or ``k > X`` (sieve), and only top factors
    in ``[start, stop]`` are emitted.

    Raises:
        ValueError: If ``t < 2``.
    """

    if t < 2:
        raise ValueError("t must be at least 2")
    nu = BaseVector.first(cfg.m)
    stats = stats if stats is not None else GenerationStats()
    first = max(start, nu.next_prime)
    last = outer_limit(t, cfg, nu)
    if stop is not None:
        last = min(last, stop)

    if t == 2:
        if mode is Phase.GCD:
            last = min(last, cfg.x)
        else:
            first = max(first, cfg.x + 1)
        if first > last:
            return
        for rec in stream_primes(first, last, cfg.segment_size):
            stats.outer_primes += 1
            stats.last_outer = rec.p
            if rec.p * (rec.p + 1) > cfg.bound:
                break
            stats.candidates += 1
            record = PrimeRecord.from_factored(rec, nu)
            stats.emitted += 1
            yield CandidateK((rec.p,), record.sigma, record.lam)
        return

    if last < first:
        return
    table = table if table is not None else SignatureTable(cfg.m)
    smaller_limit = insert_limit(t, cfg, nu)
    for rec in stream_primes(nu.next_prime, last, cfg.segment_size):
        p = rec.p
        record = PrimeRecord.from_factored(rec, nu)
        if p >= first:
            stats.outer_primes += 1
            stats.last_outer = p
            for subset in combinations(table.fetch(record.sigma), t - 2):
                factors = (*(q for q, _ in subset), p)
                k = math.prod(factors)
                if k * p >= cfg.bound:
                    continue
                stats.candidates += 1
                if (mode is Phase.GCD) != (k <= cfg.x):
                    continue
                stats.emitted += 1
                lam = math.lcm(record.lam, *(lam_q for _, lam_q in subset))
                yield CandidateK(factors, record.sigma, lam)
        if p <= smaller_limit:
            table.insert(record)


def run_unit(
    t: int,
    phase: Phase,
    cfg: SearchConfig,
    start: Natural = 2,
    stop: Natural | None = None,
    on_progress: ProgressCallback | None = None,
    on_hit: HitSink | None = None,
) -> UnitResult:
    """Process every ``k`` of one phase and ``t`` whose top factor is in range.

    Each hit reaches ``on_hit`` before ``on_progress`` can report a frontier
    past its ``k``, so a checkpoint never runs ahead of the hits already
    handed out. The frontier is the top factor of the last finished ``k``;
    resuming there repeats that prime, never skips it.
    """

    nu = BaseVector.first(cfg.m)
    stats = GenerationStats()
    result = UnitResult()
    reported = 0
    for k in generate_k(t, cfg, None, phase, stats, start=start, stop=stop):
        if phase is Phase.GCD:
            found = _gcd_hits(k, cfg, nu, result)
        else:
            found = _sieve_hits(k, cfg, nu)
        result.hits.extend(found)
        if on_hit is not None:
            for hit in found:
                on_hit(hit)
        if on_progress and stats.outer_primes - reported >= cfg.checkpoint_every:
            on_progress(k.largest_factor, stats.candidates, result.unresolved)
            reported = stats.outer_primes
    result.candidates = stats.candidates
    result.k_count = stats.emitted
    return result


def _gcd_hits(
    k: CandidateK, cfg: SearchConfig, nu: BaseVector, result: UnitResult
) -> list[Hit]:
    try:
        outcome = gcd_filter(
            k,
            nu,
            cfg.bound,
            trial_limit=cfg.trial_division_limit,
            sieve_limit=cfg.residual_sieve_limit,
            rho_max_steps=cfg.rho_max_steps,
        )
    except UnresolvedResidualError as exc:
        logger.warning(
            "Unresolved %d-bit residual for k=%d; this k is not settled",
            exc.residual.bit_length(),
            k.k,
        )
        result.unresolved.append(UnresolvedResidual(k.k, exc.residual))
        return []
    confirmed = (_confirm(k, q, nu, cfg, Phase.GCD) for q in outcome.candidate_pts)
    return [hit for hit in confirmed if hit is not None]


def _sieve_hits(k: CandidateK, cfg: SearchConfig, nu: BaseVector) -> list[Hit]:
    plans = build_wheel_plan(
        k, cfg.bound, nu, cfg.headroom, use_signatures=cfg.use_signatures
    )
    confirmed = (
        _confirm(k, found.p_t, nu, cfg, Phase.SIEVE)
        for found in sieve_candidate(k, plans, cfg.bound, nu.m)
        if found.bases_passed == nu.m
    )
    return [hit for hit in confirmed if hit is not None]


def _confirm(
    k: CandidateK, q: Natural, nu: BaseVector, cfg: SearchConfig, phase: Phase
) -> Hit | None:
    n = k.k * q
    if n > cfg.bound or math.gcd(n, nu.product) != 1:
        return None
    if spsp_base_count(n, nu.m) < nu.m:
        return None
    # a composite q means n has more factors and is reached at a larger t
    if not is_probable_prime(q):
        return None
    factors = (*k.factors, q)
    if compute_signature(q, factor_small(q - 1), nu) != k.sigma:
        raise SignatureMismatchError(n, factors)
    hit = Hit(n, factors, nu.m, phase)
    logger.debug(
        "Hit n=%d = %s (%s phase)", n, "*".join(map(str, factors)), phase.value
    )
    return hit


def partition_range(
    lo: Natural, hi: Natural, parts: int
) -> list[tuple[Natural, Natural]]:
    """Split ``[lo, hi]`` into at most ``parts`` contiguous inclusive chunks.

    Example:
        >>> partition_range(1, 10, 3)
        [(1, 4), (5, 8), (9, 10)]
    """

    if parts < 1:
        raise ValueError("parts must be positive")
    if hi < lo:
        return []
    size = -(-(hi - lo + 1) // parts)
    return [(a, min(a + size - 1, hi)) for a in range(lo, hi + 1, size)]


def _run_parallel(
    t: int, phase: Phase, cfg: SearchConfig, start: Natural
) -> UnitResult:
    nu = BaseVector.first(cfg.m)
    lo = max(start, nu.next_prime)
    chunks = partition_range(lo, outer_limit(t, cfg, nu), cfg.workers)
    merged = UnitResult()
    if not chunks:
        return merged
    with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
        futures = [pool.submit(run_unit, t, phase, cfg, a, b) for a, b in chunks]
        for future in futures:
            merged.merge(future.result())
    return merged


def _progress_recorder(
    checkpoint: Checkpoint,
    unit: str,
    previous: int,
    carried: Sequence[UnresolvedResidual],
) -> ProgressCallback:
    def record(
        frontier: Natural, seen: int, unresolved: Sequence[UnresolvedResidual]
    ) -> None:
        checkpoint.record(
            unit, frontier, previous + seen, _dedupe([*carried, *unresolved])
        )

    return record


def _dedupe(items: Iterable[UnresolvedResidual]) -> list[UnresolvedResidual]:
    """Keep one residual per ``k``; a resumed unit repeats its frontier prime."""

    return list({item.k: item for item in items}.values())


def search(cfg: SearchConfig) -> SearchResult:
    """Tabulate every strong pseudoprime ``n <= B`` to the first ``m`` prime bases.

    Hits are appended to ``cfg.output_path`` as they are confirmed, and the
    file is rewritten sorted and deduplicated at the end. Units already marked
    complete in the checkpoint are skipped, keeping their stored unresolved
    residuals; a partial unit restarts at its recorded frontier.
    """

    checkpoint = Checkpoint.for_config(cfg)
    out = cfg.output_path
    hits: dict[Natural, Hit] = {}
    if out is not None:
        if cfg.resume_from is not None:
            hits.update((hit.n, hit) for hit in read_hits(out))
        else:
            write_hits(out, cfg, [])
    unresolved: list[UnresolvedResidual] = []

    def keep(hit: Hit) -> None:
        if hit.n not in hits:
            hits[hit.n] = hit
            if out is not None:
                append_hit(out, cfg, hit)

    exhausted = False
    t = 2
    while cfg.t_max is None or t <= cfg.t_max:
        candidates = 0
        for phase in Phase:
            unit = Checkpoint.unit(phase.value, t)
            carried = checkpoint.unresolved(unit)
            if checkpoint.is_complete(unit):
                candidates += checkpoint.candidates(unit)
                unresolved.extend(carried)
                continue
            started = time.perf_counter()
            start = checkpoint.frontier(unit) or 2
            previous = checkpoint.candidates(unit)
            logger.info("Starting %s phase for t=%d from p=%d", phase.value, t, start)
            if cfg.workers > 1:
                outcome = _run_parallel(t, phase, cfg, start)
            else:
                recorder = _progress_recorder(checkpoint, unit, previous, carried)
                outcome = run_unit(
                    t, phase, cfg, start, on_progress=recorder, on_hit=keep
                )
            for hit in outcome.hits:
                keep(hit)
            settled = _dedupe([*carried, *outcome.unresolved])
            unresolved.extend(settled)
            total = previous + outcome.candidates
            checkpoint.complete(unit, total, settled)
            candidates += total
            logger.info(
                "Finished %s phase for t=%d: %d k values, %d hits, %.2fs",
                phase.value,
                t,
                outcome.k_count,
                len(outcome.hits),
                time.perf_counter() - started,
            )
        if candidates == 0:
            logger.info("No candidate k values for t=%d; search finished", t)
            exhausted = True
            break
        t += 1

    if not exhausted:
        logger.warning("Stopped at t_max=%s before the candidates ran out", cfg.t_max)
    ordered = sorted(hits.values(), key=lambda hit: hit.n)
    if out is not None:
        write_hits(out, cfg, ordered)
    if unresolved:
        logger.warning("%d k values were left unresolved", len(unresolved))
    return SearchResult(cfg, ordered, unresolved, exhausted)


__all__ = [
    "GenerationStats",
    "SearchResult",
    "SignatureMismatchError",
    "UnitResult",
    "generate_k",
    "insert_limit",
    "outer_limit",
    "partition_range",
    "run_unit",
    "search",
]
