"""Bounded factoring of gcd residuals."""

from __future__ import annotations

import logging
import math
from functools import lru_cache

import gmpy2
import numpy as np
from sympy.ntheory import pollard_rho

from spsp_search.bigmath import (
    Natural,
    is_probable_prime,
    primorial_product,
    small_primes,
)
from spsp_search.utils import IntArray

logger = logging.getLogger(__name__)

DEFAULT_TRIAL_LIMIT = 10**5
DEFAULT_SIEVE_LIMIT = 10**7
DEFAULT_RHO_MAX_STEPS = 10**6

_BLOCK = 2**16


class UnresolvedResidualError(RuntimeError):
    """Raised when a gcd residual cannot be factored within the effort budget."""

    def __init__(self, k: Natural, residual: Natural) -> None:
        self.k = k
        self.residual = residual
        super().__init__(
            f"Could not factor the residual for k={k} "
            f"({int(residual).bit_length()} bits) within the budget"
        )


def _primes_in(lo: int, hi: int) -> IntArray:
    """Primes in ``[lo, hi)`` from one numpy segment."""

    mark = np.ones(hi - lo, dtype=bool)
    if lo < 2:
        mark[: 2 - lo] = False
    for p in small_primes(math.isqrt(hi - 1)).tolist():
        first = max(p * p, -(-lo // p) * p)
        mark[first - lo :: p] = False
    return np.flatnonzero(mark).astype(np.int64) + lo


@lru_cache(maxsize=None)
def _prime_block(index: int) -> tuple[tuple[int, ...], Natural]:
    """Primes of block ``index`` (width ``2**16``) and their product."""

    primes = tuple(_primes_in(index * _BLOCK, (index + 1) * _BLOCK).tolist())
    return primes, gmpy2.mpz(math.prod(primes))


def _strip_sieved_primes(
    cofactor: gmpy2.mpz, above: int, lo: Natural, hi: Natural, found: set[Natural]
) -> None:
    for index in range(above // _BLOCK, hi // _BLOCK + 1):
        primes, product = _prime_block(index)
        common = gmpy2.gcd(cofactor, product)
        if common == 1:
            continue
        for q in primes:
            if q <= above or q > hi or common % q:
                continue
            if q >= lo:
                found.add(q)
            while cofactor % q == 0:
                cofactor //= q
        if cofactor == 1:
            return


def prime_divisors_between(
    x: Natural,
    lo: Natural,
    hi: Natural,
    *,
    k: Natural = 0,
    trial_limit: int = DEFAULT_TRIAL_LIMIT,
    sieve_limit: int = DEFAULT_SIEVE_LIMIT,
    rho_max_steps: int = DEFAULT_RHO_MAX_STEPS,
) -> list[Natural]:
    """Return the distinct prime divisors ``q`` of ``x`` with ``lo <= q <= hi``.

    Small primes are stripped with one gcd against a primorial. When ``hi`` is
    at most ``sieve_limit`` the remaining primes up to ``hi`` are stripped with
    gcds against cached block primorials and the cofactor is discarded, since
    it cannot hold a prime in range. Only larger ``hi`` fall through to
    Pollard rho.

    Raises:
        UnresolvedResidualError: If a composite cofactor resists Pollard rho.

    Example:
        >>> prime_divisors_between(3 * 5 * 1_000_003 * (2**61 - 1), 4, 2 * 10**6)
        [5, 1000003]
    """

    if hi < lo or x < 2:
        return []
    found: set[Natural] = set()
    limit = min(trial_limit, hi)
    cofactor = gmpy2.mpz(x)
    common = gmpy2.gcd(cofactor, primorial_product(limit))
    if common > 1:
        for q in small_primes(limit).tolist():
            if common % q:
                continue
            if q >= lo:
                found.add(q)
            while cofactor % q == 0:
                cofactor //= q
    if cofactor == 1 or hi <= limit:
        return sorted(found)
    if hi <= sieve_limit:
        _strip_sieved_primes(cofactor, limit, lo, hi, found)
        return sorted(found)

    pending = [cofactor]
    while pending:
        n = pending.pop()
        if n == 1:
            continue
        if n <= limit * limit or is_probable_prime(int(n)):
            if lo <= n <= hi:
                found.add(int(n))
            continue
        divisor = pollard_rho(int(n), retries=1, max_steps=max(1, rho_max_steps // 2))
        if divisor is None or divisor in (1, n):
            raise UnresolvedResidualError(k, int(n))
        logger.debug("Pollard rho split a %d-bit cofactor", n.bit_length())
        pending.extend((gmpy2.mpz(divisor), n // divisor))
    return sorted(found)


__all__ = [
    "DEFAULT_RHO_MAX_STEPS",
    "DEFAULT_SIEVE_LIMIT",
    "DEFAULT_TRIAL_LIMIT",
    "UnresolvedResidualError",
    "prime_divisors_between",
]
