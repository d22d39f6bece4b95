"""Strong probable-prime tests and small factorizations."""

from __future__ import annotations

import gmpy2
from sympy import factorint

from spsp_search.bigmath.arith import FactoredNumber, Natural, first_primes

_DETERMINISTIC_LIMIT = 3_215_031_751
_PRIME_TEST_BASES = (2, 3, 5, 7)


def _strong_test(n: gmpy2.mpz, a: int) -> bool:
    residue = a % n
    if residue == 0:
        return True
    if gmpy2.gcd(residue, n) != 1:
        return False
    n_minus_1 = n - 1
    shift = gmpy2.bit_scan1(n_minus_1)
    x = gmpy2.powmod(residue, n_minus_1 >> shift, n)
    if x == 1 or x == n_minus_1:
        return True
    for _ in range(shift - 1):
        x = gmpy2.powmod(x, 2, n)
        if x == n_minus_1:
            return True
    return False


def strong_probable_prime(n: Natural, a: Natural) -> bool:
    """Return ``True`` if ``n`` passes the strong (Miller-Rabin) test to base ``a``.

    Writing ``n - 1 = 2**s * d`` with ``d`` odd, the test passes when
    ``a**d == 1`` or ``a**(2**k * d) == -1`` modulo ``n`` for some ``k < s``.
    A base sharing a proper factor with ``n`` fails the test.

    Raises:
        ValueError: If ``n`` is even or smaller than 3.

    Example:
        >>> strong_probable_prime(2047, 2), strong_probable_prime(2047, 3)
        (True, False)
    """

    if n < 3 or n % 2 == 0:
        raise ValueError("strong_probable_prime requires an odd n >= 3")
    return _strong_test(gmpy2.mpz(n), a)


def spsp_base_count(n: Natural, m_max: int) -> int:
    """Return how many leading prime bases ``n`` passes, capped at ``m_max``."""

    if n < 3 or n % 2 == 0:
        raise ValueError("spsp_base_count requires an odd n >= 3")
    value = gmpy2.mpz(n)
    count = 0
    for base in first_primes(m_max):
        if not _strong_test(value, base):
            break
        count += 1
    return count


def is_probable_prime(n: Natural) -> bool:
    """Return ``True`` if ``n`` is a strong probable prime to bases 2, 3, 5, 7.

    The four-base test is exact below ``3215031751``; larger inputs are
    additionally run through GMP's randomized test.
    """

    if n < 2:
        return False
    if n in _PRIME_TEST_BASES:
        return True
    if any(n % base == 0 for base in _PRIME_TEST_BASES):
        return False
    value = gmpy2.mpz(n)
    if not all(_strong_test(value, base) for base in _PRIME_TEST_BASES):
        return False
    return n < _DETERMINISTIC_LIMIT or bool(gmpy2.is_prime(value, 25))


def factor_small(n: Natural) -> FactoredNumber:
    """Factor a modest ``n`` completely (desk-scale values only)."""

    if n < 1:
        raise ValueError("factor_small requires a positive integer")
    factors = tuple(
        (int(prime), int(exponent)) for prime, exponent in sorted(factorint(n).items())
    )
    return FactoredNumber(n, factors)


__all__ = [
    "factor_small",
    "is_probable_prime",
    "spsp_base_count",
    "strong_probable_prime",
]
