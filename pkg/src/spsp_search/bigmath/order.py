"""Multiplicative orders and quadratic characters."""

from __future__ import annotations

import gmpy2

from spsp_search.bigmath.arith import FactoredNumber, Natural


def multiplicative_order(a: Natural, p: Natural, p_minus_1: FactoredNumber) -> Natural:
    """Return the multiplicative order of ``a`` modulo the odd prime ``p``.

    The order is found by starting from ``p - 1`` and stripping each prime
    factor while the reduced power still equals one, so no factoring happens
    here.

    Args:
        a: The base.
        p: An odd prime.
        p_minus_1: The factorization of ``p - 1``.

    Raises:
        ValueError: If ``p`` divides ``a`` or the factorization is not of
            ``p - 1``.

    Example:
        >>> from spsp_search.bigmath import FactoredNumber
        >>> multiplicative_order(2, 7, FactoredNumber(6, ((2, 1), (3, 1))))
        3
    """

    if p_minus_1.value != p - 1:
        raise ValueError("p_minus_1 must be the factorization of p - 1")
    residue = a % p
    if residue == 0:
        raise ValueError(f"{a} is divisible by {p}; the order is undefined")
    order = gmpy2.mpz(p - 1)
    for prime, exponent in p_minus_1.factors:
        for _ in range(exponent):
            reduced = order // prime
            if gmpy2.powmod(residue, reduced, p) != 1:
                break
            order = reduced
    return int(order)


def jacobi(a: int, n: Natural) -> int:
    """Return the Jacobi symbol ``(a/n)`` for odd ``n >= 1``.

    Raises:
        ValueError: If ``n`` is even or not positive.
    """

    if n < 1 or n % 2 == 0:
        raise ValueError("jacobi requires an odd modulus n >= 1")
    return int(gmpy2.jacobi(a % n, n))


__all__ = ["jacobi", "multiplicative_order"]
