"""Ruling out candidate ``k`` values with a chain of gcds.

For ``n = k * p_t`` to be a strong pseudoprime to base ``b``, the final prime
``p_t`` must divide one algebraic factor ``h(b, k)`` of ``b**(k-1) - 1``.
Writing ``k - 1 = u * 2**d`` with ``u`` odd and ``c = v2(ord_k(b))``::

    h(b, k) = b**u - 1              if c == 0
    h(b, k) = b**(u * 2**(c-1)) + 1  if c > 0

The smallest ``h`` is materialized first. Each further ``h`` is either
materialized and fed to a subquadratic gcd, or, once the running gcd is small
enough that repeated squaring modulo it is cheaper, reduced with a modular
exponentiation.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import Enum

import gmpy2

from spsp_search.bigmath import Natural, v2
from spsp_search.gcdfilter.factoring import (
    DEFAULT_RHO_MAX_STEPS,
    DEFAULT_SIEVE_LIMIT,
    DEFAULT_TRIAL_LIMIT,
    prime_divisors_between,
)
from spsp_search.signatures import BaseVector, Signature

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class CandidateK:
    """Product of ``t - 1`` distinct primes sharing one signature."""

    factors: tuple[Natural, ...]
    sigma: Signature
    lam: Natural
    k: Natural = field(init=False)

    def __post_init__(self) -> None:
        if not self.factors:
            raise ValueError("A candidate k needs at least one prime factor.")
        if any(b <= a for a, b in zip(self.factors, self.factors[1:])):
            raise ValueError("Factors of k must be strictly increasing.")
        object.__setattr__(self, "k", math.prod(self.factors))

    @property
    def t(self) -> int:
        """Number of prime factors of ``n = k * p_t``."""

        return len(self.factors) + 1

    @property
    def largest_factor(self) -> Natural:
        return self.factors[-1]


class HForm(Enum):
    MINUS = "-"
    PLUS = "+"


class Verdict(Enum):
    RULED_OUT = "ruled_out"
    SURVIVORS = "survivors"


@dataclass(frozen=True, slots=True)
class GcdOutcome:
    """Result of running the gcd chain for one ``k``."""

    verdict: Verdict
    residual: Natural
    candidate_pts: tuple[Natural, ...] = ()
    first_base: int = 0
    first_gcd: Natural | None = None
    bases_used: tuple[int, ...] = ()


def h_exponent_and_form(b: int, k: CandidateK) -> tuple[HForm, Natural]:
    """Return which algebraic factor of ``b**(k-1) - 1`` applies, and its exponent.

    ``v2(ord_k(b))`` is read from the signature shared by the factors of ``k``.

    Raises:
        ValueError: If ``k`` is even or ``b`` is not one of the signature's bases.

    Example:
        >>> from spsp_search.signatures import Signature
        >>> k = CandidateK((151121,), Signature((3, 4, 0)), 151120)
        >>> h_exponent_and_form(5, k)
        (<HForm.MINUS: '-'>, 9445)
    """

    if k.k % 2 == 0:
        raise ValueError("k must be odd")
    bases = BaseVector.first(k.sigma.m).bases
    if b not in bases:
        raise ValueError(f"{b} is not among the first {k.sigma.m} prime bases")
    u = (k.k - 1) >> v2(k.k - 1)
    c = k.sigma.entries[bases.index(b)]
    if c == 0:
        return HForm.MINUS, u
    return HForm.PLUS, u << (c - 1)


def estimate_h_bits(b: int, form: HForm, exponent: Natural) -> int:
    """Return the approximate bit length of ``b**exponent -/+ 1``."""

    size = exponent * math.log2(b)
    if form is HForm.MINUS:
        return max(1, math.ceil(size))
    return math.floor(size) + 1


def gcd_filter(
    k: CandidateK,
    nu: BaseVector,
    bound: Natural,
    *,
    trial_limit: int = DEFAULT_TRIAL_LIMIT,
    sieve_limit: int = DEFAULT_SIEVE_LIMIT,
    rho_max_steps: int = DEFAULT_RHO_MAX_STEPS,
) -> GcdOutcome:
    """Run the gcd chain for ``k`` and extract any admissible final primes.

    Candidates ``p_t`` must exceed the largest factor of ``k`` and satisfy
    ``k * p_t <= bound``. The chain stops as soon as the running gcd drops to
    that floor.

    Raises:
        ValueError: If ``k`` is even or shares a factor with a base.
        UnresolvedResidualError: If the surviving residual cannot be factored.
    """

    if k.k % 2 == 0:
        raise ValueError("k must be odd")
    if math.gcd(k.k, nu.product) != 1:
        raise ValueError("k must be coprime to every base")
    if k.sigma.m != nu.m:
        raise ValueError("Signature length does not match the base vector.")

    forms = {b: h_exponent_and_form(b, k) for b in nu}
    first = min(nu, key=lambda b: estimate_h_bits(b, *forms[b]))
    x = _materialize(first, *forms[first])
    floor = k.largest_factor
    first_gcd: Natural | None = None
    used = [first]

    for base in _remaining(nu.bases, first):
        if x <= floor:
            break
        form, exponent = forms[base]
        x = gmpy2.gcd(x, _reduce(base, form, exponent, x))
        used.append(base)
        if first_gcd is None:
            first_gcd = int(x)

    residual = int(x)
    if residual <= floor:
        logger.debug("k=%d ruled out after %d bases", k.k, len(used))
        return GcdOutcome(
            Verdict.RULED_OUT, residual, (), first, first_gcd, tuple(used)
        )

    coprime_to_bases = [
        q
        for q in prime_divisors_between(
            residual,
            floor + 1,
            bound // k.k,
            k=k.k,
            trial_limit=trial_limit,
            sieve_limit=sieve_limit,
            rho_max_steps=rho_max_steps,
        )
        if nu.product % q
    ]
    verdict = Verdict.SURVIVORS if coprime_to_bases else Verdict.RULED_OUT
    logger.debug("k=%d %s with candidates %s", k.k, verdict.value, coprime_to_bases)
    return GcdOutcome(
        verdict, residual, tuple(coprime_to_bases), first, first_gcd, tuple(used)
    )


def _materialize(b: int, form: HForm, exponent: Natural) -> gmpy2.mpz:
    power = gmpy2.mpz(b) ** exponent
    return power + 1 if form is HForm.PLUS else power - 1


def _reduce(b: int, form: HForm, exponent: Natural, x: gmpy2.mpz) -> gmpy2.mpz:
    if x.bit_length() * exponent.bit_length() > estimate_h_bits(b, form, exponent):
        return _materialize(b, form, exponent)
    power = gmpy2.powmod(b, exponent, x)
    return power + 1 if form is HForm.PLUS else power - 1


def _remaining(bases: Sequence[int], first: int) -> list[int]:
    return [base for base in bases if base != first]


__all__ = [
    "CandidateK",
    "GcdOutcome",
    "HForm",
    "Verdict",
    "estimate_h_bits",
    "gcd_filter",
    "h_exponent_and_form",
]
