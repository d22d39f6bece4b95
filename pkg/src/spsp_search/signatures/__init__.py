"""Prime signatures, their hash, and the quadratic characters they imply.

The signature of a prime ``p`` over the base vector ``(a_1, ..., a_m)`` is the
vector of 2-adic valuations ``v2(ord_p(a_i))``. Euler's criterion ties each
entry to a quadratic character: ``(a/q) = +1`` exactly when
``v2(ord_q(a)) < v2(q - 1)``. That link lets a signature be translated into
residue classes that any prime ``q`` with the same signature must occupy.
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

from spsp_search.bigmath import (
    FactoredNumber,
    Natural,
    first_primes,
    jacobi,
    multiplicative_order,
    v2,
)


@dataclass(frozen=True, slots=True)
class BaseVector:
    """The first ``m`` primes used as strong-test bases."""

    bases: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.bases:
            raise ValueError("A base vector needs at least one base.")
        if self.bases != first_primes(len(self.bases)):
            raise ValueError("Base vectors must hold the first m primes in order.")

    @classmethod
    def first(cls, m: int) -> BaseVector:
        """Return the vector of the first ``m`` primes."""

        if m < 1:
            raise ValueError("m must be at least 1")
        return cls(first_primes(m))

    @property
    def m(self) -> int:
        return len(self.bases)

    @property
    def odd_bases(self) -> tuple[int, ...]:
        return self.bases[1:]

    @property
    def next_prime(self) -> int:
        """The smallest prime not in the vector (``a_{m+1}``)."""

        return first_primes(self.m + 1)[-1]

    @property
    def product(self) -> int:
        value = 1
        for base in self.bases:
            value *= base
        return value

    def __iter__(self) -> Iterator[int]:
        return iter(self.bases)

    def __len__(self) -> int:
        return len(self.bases)


@dataclass(frozen=True, slots=True)
class Signature:
    """Vector of 2-adic valuations of the base orders modulo one prime."""

    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.entries:
            raise ValueError("A signature needs at least one entry.")
        if any(entry < 0 for entry in self.entries):
            raise ValueError("Signature entries must be non-negative.")

    @property
    def m(self) -> int:
        return len(self.entries)

    @property
    def c_star(self) -> int:
        """The largest entry."""

        return max(self.entries)

    def is_binary(self) -> bool:
        return all(entry <= 1 for entry in self.entries)


class Scenario(Enum):
    """How ``v2(q - 1)`` of a matching prime compares with ``c_star``."""

    EQUAL_VALUATION = "equal"
    GREATER_VALUATION = "greater"


@dataclass(frozen=True, slots=True)
class CharacterPlan:
    """Residue-class constraints shared by every prime of one signature.

    ``two_adic_residue`` modulo ``two_adic_modulus`` (``2**(c_star + 1)``)
    pins ``v2(q - 1)``; ``base2_character`` is the required ``(2/q)``;
    ``per_base`` lists ``(odd base, required (a/q))`` pairs.
    """

    scenario: Scenario
    c_star: int
    two_adic_residue: int
    two_adic_modulus: int
    base2_character: int
    per_base: tuple[tuple[int, int], ...] = field(default_factory=tuple)

    @property
    def two_adic_lift_modulus(self) -> int:
        """Modulus large enough to carry both the valuation class and ``(2/q)``."""

        return max(self.two_adic_modulus, 8)

    def two_adic_residues(self) -> tuple[int, ...]:
        """Residues modulo :attr:`two_adic_lift_modulus` satisfying the 2-adic rules."""

        modulus = self.two_adic_lift_modulus
        return tuple(
            residue
            for residue in range(1, modulus, 2)
            if residue % self.two_adic_modulus == self.two_adic_residue
            and _character_of_two(residue) == self.base2_character
        )

    def character_for(self, base: int) -> int:
        if base == 2:
            return self.base2_character
        for odd_base, character in self.per_base:
            if odd_base == base:
                return character
        raise KeyError(base)


def compute_signature(
    p: Natural, p_minus_1: FactoredNumber, nu: BaseVector
) -> Signature:
    """Return the signature of the odd prime ``p`` over ``nu``.

    Raises:
        ValueError: If ``p`` divides one of the bases.

    Example:
        >>> from spsp_search.bigmath import FactoredNumber
        >>> p_minus_1 = FactoredNumber(6, ((2, 1), (3, 1)))
        >>> compute_signature(7, p_minus_1, BaseVector.first(2))
        Signature(entries=(0, 1))
    """

    if any(base % p == 0 for base in nu):
        raise ValueError(f"{p} divides a base; it has no signature over {nu.bases}")
    return Signature(
        tuple(v2(multiplicative_order(base, p, p_minus_1)) for base in nu)
    )


def hash_signature(sigma: Signature) -> int:
    """Return the bucket index of ``sigma`` in ``[0, 2**m)``.

    Binary signatures hash to their own bits; otherwise the entries equal to
    the maximum become the 1-bits. The first entry is the most significant.

    Example:
        >>> hash_signature(Signature((3, 4, 0, 4, 2, 1, 2, 4)))
        81
    """

    if sigma.is_binary():
        bits = sigma.entries
    else:
        top = sigma.c_star
        bits = tuple(1 if entry == top else 0 for entry in sigma.entries)
    value = 0
    for bit in bits:
        value = (value << 1) | bit
    return value


def character_plans(
    sigma: Signature, nu: BaseVector | None = None
) -> list[CharacterPlan]:
    """Return the residue-class plans covering every prime with signature ``sigma``.

    A matching prime ``q`` has ``v2(q - 1) >= c_star``. When the valuations
    are equal the bases whose entry equals ``c_star`` are non-residues and the
    rest are residues; when ``v2(q - 1)`` is larger every base is a residue.
    The equal-valuation plan is dropped when its class mod 8 contradicts the
    character it requires of 2.
    """

    bases = nu if nu is not None else BaseVector.first(sigma.m)
    if bases.m != sigma.m:
        raise ValueError("Signature length does not match the base vector.")
    c_star = sigma.c_star
    modulus = 2 ** (c_star + 1)

    greater = CharacterPlan(
        scenario=Scenario.GREATER_VALUATION,
        c_star=c_star,
        two_adic_residue=1,
        two_adic_modulus=modulus,
        base2_character=1,
        per_base=tuple((base, 1) for base in bases.odd_bases),
    )
    plans = [greater]
    if c_star >= 1:
        characters = [(-1 if entry == c_star else 1) for entry in sigma.entries]
        equal = CharacterPlan(
            scenario=Scenario.EQUAL_VALUATION,
            c_star=c_star,
            two_adic_residue=1 + 2**c_star,
            two_adic_modulus=modulus,
            base2_character=characters[0],
            per_base=tuple(zip(bases.odd_bases, characters[1:])),
        )
        if equal.two_adic_residues():
            plans.insert(0, equal)
    return plans


@lru_cache(maxsize=1024)
def allowed_residues(a: int, epsilon: int, q_mod_4: int) -> frozenset[int]:
    """Return residues ``r`` mod ``a`` with ``(a/q) = epsilon`` for primes ``q = r``.

    Quadratic reciprocity gives ``(a/q) = s * (q/a)`` with ``s = -1`` exactly
    when ``a`` and ``q`` are both ``3 mod 4``.

    Example:
        >>> sorted(allowed_residues(5, -1, 1))
        [2, 3]
    """

    if a < 3 or a % 2 == 0:
        raise ValueError("allowed_residues requires an odd prime base")
    if epsilon not in (-1, 1):
        raise ValueError("epsilon must be -1 or +1")
    if q_mod_4 not in (1, 3):
        raise ValueError("q_mod_4 must be 1 or 3")
    sign = -1 if a % 4 == 3 and q_mod_4 == 3 else 1
    target = epsilon * sign
    return frozenset(r for r in range(1, a) if jacobi(r, a) == target)


def signature_from_orders(orders: Sequence[int]) -> Signature:
    """Build a signature from precomputed orders."""

    return Signature(tuple(v2(order) for order in orders))


def _character_of_two(residue: int) -> int:
    return 1 if residue % 8 in (1, 7) else -1


__all__ = [
    "BaseVector",
    "CharacterPlan",
    "Scenario",
    "Signature",
    "allowed_residues",
    "character_plans",
    "compute_signature",
    "hash_signature",
    "signature_from_orders",
]
