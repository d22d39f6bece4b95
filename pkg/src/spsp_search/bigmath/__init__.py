"""Arbitrary-precision and word-size number theory primitives."""

from spsp_search.bigmath.arith import (
    FactoredNumber,
    Natural,
    big_gcd,
    first_primes,
    iroot_round,
    mod_pow,
    odd_part,
    primorial_product,
    small_primes,
    v2,
)
from spsp_search.bigmath.order import jacobi, multiplicative_order
from spsp_search.bigmath.primality import (
    factor_small,
    is_probable_prime,
    spsp_base_count,
    strong_probable_prime,
)

__all__ = [
    "FactoredNumber",
    "Natural",
    "big_gcd",
    "factor_small",
    "first_primes",
    "iroot_round",
    "is_probable_prime",
    "jacobi",
    "mod_pow",
    "multiplicative_order",
    "odd_part",
    "primorial_product",
    "small_primes",
    "spsp_base_count",
    "strong_probable_prime",
    "v2",
]
