"""Ordered prime enumeration with ``p - 1`` in factored form."""

from spsp_search.primestream.segmented import (
    DEFAULT_SEGMENT_SIZE,
    FactoredPrime,
    base_orders,
    lambda_p,
    stream_primes,
)

__all__ = [
    "DEFAULT_SEGMENT_SIZE",
    "FactoredPrime",
    "base_orders",
    "lambda_p",
    "stream_primes",
]
