"""Segmented sieve of Eratosthenes that records the factorization of ``p - 1``.

Each segment is sieved for primality with the primes up to ``sqrt(hi)``. The
same primes are then divided out of the shifted values ``n - 1`` along the
progressions ``n = 1 (mod q)``, so every yielded prime carries its complete
``p - 1`` factorization: whatever remains after removing the small primes is
either 1 or a single prime larger than ``sqrt(hi)``.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterator
from dataclasses import dataclass

import numpy as np

from spsp_search.bigmath import (
    FactoredNumber,
    Natural,
    multiplicative_order,
    small_primes,
)
from spsp_search.signatures import BaseVector
from spsp_search.utils import IntArray, ensure_int_range

logger = logging.getLogger(__name__)

DEFAULT_SEGMENT_SIZE = 2**20


@dataclass(frozen=True, slots=True)
class FactoredPrime:
    """A prime with the factorization of its predecessor."""

    p: Natural
    p_minus_1: FactoredNumber


def stream_primes(
    lo: Natural, hi: Natural, segment_size: int = DEFAULT_SEGMENT_SIZE
) -> Iterator[FactoredPrime]:
    """Yield every prime in ``[lo, hi]`` in increasing order with ``p - 1`` factored.

    Args:
        lo: Inclusive lower bound, at least 2.
        hi: Inclusive upper bound.
        segment_size: Number of integers sieved per segment.

    Raises:
        ValueError: If the bounds are out of order or ``segment_size`` is not
            positive.
    """

    if segment_size < 1:
        raise ValueError("segment_size must be positive")
    if lo < 2 or lo > hi:
        raise ValueError("stream_primes requires 2 <= lo <= hi")

    base = small_primes(math.isqrt(hi))
    segment_lo = lo
    while segment_lo <= hi:
        segment_hi = min(segment_lo + segment_size, hi + 1)
        yield from _sieve_segment(segment_lo, segment_hi, base)
        segment_lo = segment_hi


def _sieve_segment(
    segment_lo: int, segment_hi: int, base: IntArray
) -> Iterator[FactoredPrime]:
    values = ensure_int_range(segment_lo, segment_hi)
    length = values.size
    is_prime = values >= 2
    for q in base.tolist():
        start = max(q * q, -(-segment_lo // q) * q)
        if start >= segment_hi:
            continue
        is_prime[start - segment_lo :: q] = False

    residual = values - 1
    recorded: list[tuple[int, IntArray, IntArray]] = []
    for q in base.tolist():
        offset = (1 - segment_lo) % q
        if offset >= length:
            continue
        positions = np.arange(offset, length, q, dtype=np.int64)
        selected = positions[is_prime[positions]]
        if selected.size == 0:
            continue
        shifted = residual[selected]
        exponents = np.zeros(selected.size, dtype=np.int64)
        divisible = shifted % q == 0
        while divisible.any():
            exponents[divisible] += 1
            shifted[divisible] //= q
            divisible = shifted % q == 0
        residual[selected] = shifted
        keep = exponents > 0
        recorded.append((q, selected[keep], exponents[keep]))

    prime_positions = np.flatnonzero(is_prime).tolist()
    factor_lists: dict[int, list[tuple[int, int]]] = {i: [] for i in prime_positions}
    for q, selected, exponents in recorded:
        for position, exponent in zip(selected.tolist(), exponents.tolist()):
            factor_lists[position].append((q, exponent))

    for position in prime_positions:
        p = segment_lo + position
        factors = factor_lists[position]
        leftover = int(residual[position])
        if leftover > 1:
            factors.append((leftover, 1))
        yield FactoredPrime(p, FactoredNumber(p - 1, tuple(factors)))
    logger.debug(
        "Sieved [%d, %d): %d primes", segment_lo, segment_hi, len(prime_positions)
    )


def base_orders(rec: FactoredPrime, nu: BaseVector) -> tuple[Natural, ...]:
    """Return ``ord_p(a)`` for every base ``a`` in ``nu``.

    Raises:
        ValueError: If ``p`` is one of the bases.
    """

    if rec.p in nu.bases:
        raise ValueError(f"{rec.p} is a base prime; its orders are undefined")
    return tuple(multiplicative_order(base, rec.p, rec.p_minus_1) for base in nu)


def lambda_p(rec: FactoredPrime, nu: BaseVector) -> Natural:
    """Return the lcm of the base orders modulo ``p``.

    Example:
        >>> from spsp_search.bigmath import FactoredNumber
        >>> rec = FactoredPrime(7, FactoredNumber(6, ((2, 1), (3, 1))))
        >>> lambda_p(rec, BaseVector.first(2))
        6
    """

    return math.lcm(*base_orders(rec, nu))


__all__ = [
    "DEFAULT_SEGMENT_SIZE",
    "FactoredPrime",
    "base_orders",
    "lambda_p",
    "stream_primes",
]
