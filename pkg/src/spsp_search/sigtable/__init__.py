"""Signature-keyed storage of small primes.

The table holds ``2**m`` buckets indexed by :func:`hash_signature`. Primes
arrive in increasing order, so appending keeps every bucket sorted and a
fetch is a single in-order scan of one bucket.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from spsp_search.bigmath import Natural
from spsp_search.primestream import FactoredPrime, base_orders
from spsp_search.signatures import (
    BaseVector,
    Signature,
    hash_signature,
    signature_from_orders,
)


@dataclass(frozen=True, slots=True)
class PrimeRecord:
    """A stored prime with its signature and ``lambda_p``."""

    p: Natural
    sigma: Signature
    lam: Natural

    @classmethod
    def from_factored(cls, rec: FactoredPrime, nu: BaseVector) -> PrimeRecord:
        """Compute the signature and ``lambda_p`` from one pass over the base orders."""

        orders = base_orders(rec, nu)
        return cls(rec.p, signature_from_orders(orders), math.lcm(*orders))


@dataclass
class SignatureTable:
    """Array of ``2**m`` append-only buckets of :class:`PrimeRecord`."""

    m: int
    last_inserted: Natural = 0
    _buckets: list[list[PrimeRecord]] = field(init=False, repr=False)
    _size: int = field(default=0, init=False, repr=False)

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError("m must be at least 1")
        self._buckets = [[] for _ in range(2**self.m)]

    def __len__(self) -> int:
        return self._size

    @property
    def slot_count(self) -> int:
        return len(self._buckets)

    def insert(self, rec: PrimeRecord) -> None:
        """Append ``rec`` to its bucket.

        Raises:
            ValueError: If ``rec.p`` does not exceed every prime already stored,
                or its signature has the wrong length.
        """

        if rec.p <= self.last_inserted:
            raise ValueError(
                f"Insertions must be increasing: {rec.p} <= {self.last_inserted}"
            )
        if rec.sigma.m != self.m:
            raise ValueError("Signature length does not match the table.")
        self._buckets[hash_signature(rec.sigma)].append(rec)
        self.last_inserted = rec.p
        self._size += 1

    def fetch(self, sigma: Signature) -> list[tuple[Natural, Natural]]:
        """Return ``(p, lambda_p)`` for each stored prime with signature ``sigma``."""

        bucket = self._buckets[hash_signature(sigma)]
        return [(rec.p, rec.lam) for rec in bucket if rec.sigma == sigma]

    def bucket(self, index: int) -> tuple[PrimeRecord, ...]:
        """Return a read-only view of one bucket."""

        return tuple(self._buckets[index])


__all__ = ["PrimeRecord", "SignatureTable"]
