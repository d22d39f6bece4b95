"""Stepping through one residue class and testing ``k * p_t``."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import gmpy2

from spsp_search.bigmath import (
    Natural,
    primorial_product,
    spsp_base_count,
    strong_probable_prime,
)
from spsp_search.gcdfilter import CandidateK
from spsp_search.wheelsieve.wheel import WheelPlan, crt_class, enumerate_wheel_residues

logger = logging.getLogger(__name__)

PREFILTER_LIMIT = 1000


@dataclass(frozen=True, slots=True)
class SieveHit:
    """A probable prime ``p_t`` for which ``n = k * p_t`` passed base 2."""

    p_t: Natural
    n: Natural
    bases_passed: int


def sieve_class(
    k: CandidateK,
    x: Natural,
    modulus: Natural,
    lo: Natural,
    hi: Natural,
    m: int,
) -> list[SieveHit]:
    """Test every ``q = x (mod modulus)`` in ``[lo, hi]``.

    Each ``q`` is screened by a gcd with the primes below
    ``min(1000, lo)`` and one strong test to base 2; survivors are paired
    with ``k`` and counted against the first ``m`` bases. Only products
    passing at least base 2 are returned.

    Raises:
        ValueError: If ``modulus`` is not positive.
    """

    if modulus < 1:
        raise ValueError("modulus must be positive")
    if lo > hi:
        return []
    screen = primorial_product(min(PREFILTER_LIMIT, lo - 1)) if lo > 2 else 1
    start = lo + (x - lo) % modulus
    hits: list[SieveHit] = []
    for q in range(start, hi + 1, modulus):
        if q % 2 == 0 or gmpy2.gcd(q, screen) != 1:
            continue
        if not strong_probable_prime(q, 2):
            continue
        n = k.k * q
        passed = spsp_base_count(n, m)
        if passed:
            hits.append(SieveHit(q, n, passed))
    return hits


def sieve_candidate(
    k: CandidateK, plans: list[WheelPlan], bound: Natural, m: int
) -> list[SieveHit]:
    """Sieve every class of every plan for ``k`` over ``(largest factor, bound // k]``.

    A ``k`` that is not invertible modulo a plan's ``lam`` admits no final
    prime; that is logged and nothing is returned for the plan.
    """

    lo = k.largest_factor + 1
    hi = bound // k.k
    hits: list[SieveHit] = []
    for plan in plans:
        modulus = plan.modulus
        for residue in enumerate_wheel_residues(plan):
            x = crt_class(plan, k.k, residue)
            if x is None:
                logger.warning(
                    "k=%d is not invertible modulo lam=%d; class is impossible",
                    k.k,
                    plan.lam,
                )
                break
            hits.extend(sieve_class(k, x, modulus, lo, hi, m))
    return sorted(hits, key=lambda hit: hit.n)


__all__ = ["PREFILTER_LIMIT", "SieveHit", "sieve_candidate", "sieve_class"]
