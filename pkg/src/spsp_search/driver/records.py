"""Records produced by a search."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from spsp_search.bigmath import Natural


class Phase(Enum):
    """Which stage handles a ``k`` (and therefore which stage found a hit)."""

    GCD = "gcd"
    SIEVE = "sieve"


@dataclass(frozen=True, slots=True)
class Hit:
    """A strong pseudoprime to every base of the run, with its factorization."""

    n: Natural
    factors: tuple[Natural, ...]
    bases_passed: int
    found_by: Phase

    def __post_init__(self) -> None:
        if len(self.factors) < 2:
            raise ValueError("A hit needs at least two prime factors.")
        if any(b <= a for a, b in zip(self.factors, self.factors[1:])):
            raise ValueError("Hit factors must be strictly increasing.")
        if math.prod(self.factors) != self.n:
            raise ValueError(f"Factors do not multiply to {self.n}")

    @property
    def t(self) -> int:
        return len(self.factors)


@dataclass(frozen=True, slots=True)
class UnresolvedResidual:
    """A gcd residual that could not be factored; its ``k`` was not settled."""

    k: Natural
    residual: Natural


__all__ = ["Hit", "Phase", "UnresolvedResidual"]
