"""Arbitrary-precision arithmetic primitives backed by GMP.

Every value in the pipeline is a plain Python :class:`int` at the public
boundary; the heavy lifting (modular exponentiation, gcd, integer roots) is
delegated to :mod:`gmpy2`, whose multiplication, division and gcd are
subquadratic for large operands.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import TypeAlias

import gmpy2
import numpy as np

from spsp_search.utils import IntArray

Natural: TypeAlias = int


@dataclass(frozen=True, slots=True)
class FactoredNumber:
    """A positive integer together with its prime factorization.

    ``factors`` holds ``(prime, exponent)`` pairs with strictly increasing
    primes. The product is checked on construction; primality of the listed
    primes is checked by :meth:`validate`.
    """

    value: Natural
    factors: tuple[tuple[Natural, int], ...]

    def __post_init__(self) -> None:
        if self.value < 1:
            raise ValueError("FactoredNumber requires a positive value.")
        previous = 1
        product = 1
        for prime, exponent in self.factors:
            if prime <= previous:
                raise ValueError("Factor primes must be strictly increasing.")
            if exponent < 1:
                raise ValueError("Factor exponents must be positive.")
            product *= prime**exponent
            previous = prime
        if product != self.value:
            raise ValueError(
                f"Factors multiply to {product}, not to the value {self.value}."
            )

    @property
    def primes(self) -> tuple[Natural, ...]:
        """Return the distinct primes of the factorization."""

        return tuple(prime for prime, _ in self.factors)

    def validate(self) -> None:
        """Check that every listed prime is a probable prime.

        Raises:
            ValueError: If a listed factor fails the probable-prime test.
        """

        from spsp_search.bigmath.primality import is_probable_prime

        for prime, _ in self.factors:
            if not is_probable_prime(prime):
                raise ValueError(f"Listed factor {prime} is not a probable prime.")


def mod_pow(base: Natural, exponent: Natural, modulus: Natural) -> Natural:
    """Return ``base ** exponent mod modulus``.

    Raises:
        ValueError: If ``modulus`` is below 2 or ``exponent`` is negative.

    Example:
        >>> mod_pow(2, 10, 1025)
        1024
    """

    if modulus < 2:
        raise ValueError("modulus must be at least 2")
    if exponent < 0:
        raise ValueError("exponent must be non-negative")
    return int(gmpy2.powmod(base, exponent, modulus))


def big_gcd(a: Natural, b: Natural) -> Natural:
    """Return the greatest common divisor of two naturals.

    Raises:
        ValueError: If both arguments are zero or either is negative.
    """

    if a < 0 or b < 0:
        raise ValueError("gcd arguments must be non-negative")
    if a == 0 and b == 0:
        raise ValueError("gcd(0, 0) is undefined")
    return int(gmpy2.gcd(a, b))


def v2(n: Natural) -> int:
    """Return the 2-adic valuation of ``n``.

    Raises:
        ValueError: If ``n`` is not positive.
    """

    if n < 1:
        raise ValueError("v2 requires a positive integer")
    return int(gmpy2.bit_scan1(n))


def odd_part(n: Natural) -> Natural:
    """Return ``n / 2**v2(n)``."""

    return n >> v2(n)


def iroot_round(n: Natural, k: int) -> Natural:
    """Return the integer nearest to the real ``k``-th root of ``n``."""

    if n < 0 or k < 1:
        raise ValueError("iroot_round requires n >= 0 and k >= 1")
    root = int(gmpy2.iroot(n, k)[0])
    # round up when (root + 1/2)**k <= n
    if (2 * root + 1) ** k <= (2**k) * n:
        return root + 1
    return root


def small_primes(limit: int) -> IntArray:
    """Return all primes ``<= limit`` as an ascending ``int64`` array."""

    if limit < 2:
        return np.array([], dtype=np.int64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p : limit + 1 : p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


@lru_cache(maxsize=None)
def first_primes(count: int) -> tuple[Natural, ...]:
    """Return the first ``count`` primes ``(2, 3, 5, ...)``."""

    if count < 0:
        raise ValueError("count must be non-negative")
    primes: list[Natural] = []
    candidate = gmpy2.mpz(1)
    while len(primes) < count:
        candidate = gmpy2.next_prime(candidate)
        primes.append(int(candidate))
    return tuple(primes)


@lru_cache(maxsize=64)
def primorial_product(limit: int) -> Natural:
    """Return the product of all primes ``<= limit``.

    A single gcd against this product replaces trial division by every prime
    up to ``limit``.
    """

    return math.prod(int(p) for p in small_primes(limit))


__all__ = [
    "FactoredNumber",
    "Natural",
    "big_gcd",
    "first_primes",
    "iroot_round",
    "mod_pow",
    "odd_part",
    "primorial_product",
    "small_primes",
    "v2",
]
