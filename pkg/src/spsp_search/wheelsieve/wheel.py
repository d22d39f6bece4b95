"""Space-saving wheels built from the quadratic characters a signature implies.

A wheel is stored as one residue set per component modulus (a power of two
and a few odd bases). Residues modulo the full wheel are produced on demand
by an odometer over those sets, so memory grows with the sum of the set
sizes while the number of residues is their product.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterator
from dataclasses import dataclass

from spsp_search.bigmath import Natural, odd_part
from spsp_search.gcdfilter import CandidateK
from spsp_search.signatures import (
    BaseVector,
    CharacterPlan,
    allowed_residues,
    character_plans,
)

logger = logging.getLogger(__name__)

DEFAULT_HEADROOM = 1000
SIGNATURE_WHEEL_MAX_T = 3


@dataclass(frozen=True, slots=True)
class WheelPlan:
    """Residue classes one family of candidate ``p_t`` is restricted to.

    ``two_adic_residues`` live modulo ``two_adic_modulus``; ``residue_sets[i]``
    lists the allowed residues modulo ``wheel_primes[i]``. A pure
    lambda-sieving plan has no wheel primes, ``two_adic_modulus == 1`` and
    ``plan is None``.
    """

    wheel_primes: tuple[int, ...]
    residue_sets: tuple[tuple[int, ...], ...]
    two_adic_residues: tuple[int, ...]
    two_adic_modulus: int
    lam: Natural
    plan: CharacterPlan | None = None

    def __post_init__(self) -> None:
        if len(self.wheel_primes) != len(self.residue_sets):
            raise ValueError("Each wheel prime needs exactly one residue set.")
        if self.two_adic_modulus & (self.two_adic_modulus - 1):
            raise ValueError("two_adic_modulus must be a power of two")
        if not self.two_adic_residues:
            raise ValueError("A wheel plan needs at least one 2-adic residue.")
        if self.lam < 1:
            raise ValueError("lam must be positive")
        if math.gcd(self.w, self.lam) != 1:
            raise ValueError("The wheel modulus and lam must be coprime.")

    @property
    def w(self) -> Natural:
        """The wheel modulus."""

        return self.two_adic_modulus * math.prod(self.wheel_primes)

    @property
    def modulus(self) -> Natural:
        """Step between consecutive candidates of one class (``w * lam``)."""

        return self.w * self.lam

    @property
    def class_count(self) -> int:
        return len(self.two_adic_residues) * math.prod(
            len(residues) for residues in self.residue_sets
        )

    @classmethod
    def pure_lambda(cls, lam: Natural) -> WheelPlan:
        """Plan that sieves only by ``p_t = k^-1 (mod lam)``."""

        return cls((), (), (0,), 1, lam)


def build_wheel_plan(
    k: CandidateK,
    bound: Natural,
    nu: BaseVector,
    headroom: int = DEFAULT_HEADROOM,
    *,
    use_signatures: bool = True,
) -> list[WheelPlan]:
    """Return the wheel plans that together cover every admissible ``p_t``.

    Odd bases join the wheel, smallest first, while
    ``k * lambda_k * a * w < bound / headroom`` and ``a`` does not divide
    ``lambda_k``. The power of two in ``lambda_k`` is replaced by the 2-adic
    class of the character plan, so the sieving modulus is the odd part of
    ``lambda_k``.

    With ``use_signatures=False``, or for ``t`` above three, a single pure
    lambda-sieving plan is returned.

    Raises:
        ValueError: If ``headroom`` is not positive or the signature does not
            match ``nu``.
    """

    if headroom < 1:
        raise ValueError("headroom must be positive")
    if k.sigma.m != nu.m:
        raise ValueError("Signature length does not match the base vector.")
    if not use_signatures or k.t > SIGNATURE_WHEEL_MAX_T:
        return [WheelPlan.pure_lambda(k.lam)]

    lam = odd_part(k.lam)
    plans: list[WheelPlan] = []
    for plan in character_plans(k.sigma, nu):
        residues = plan.two_adic_residues()
        for q_mod_4 in (1, 3):
            group = tuple(r for r in residues if r % 4 == q_mod_4)
            if not group:
                continue
            primes, sets = _select_wheel_primes(k, bound, plan, headroom, q_mod_4)
            plans.append(
                WheelPlan(
                    wheel_primes=primes,
                    residue_sets=sets,
                    two_adic_residues=group,
                    two_adic_modulus=plan.two_adic_lift_modulus,
                    lam=lam,
                    plan=plan,
                )
            )
    logger.debug(
        "k=%d: %d wheel plans with %s classes",
        k.k,
        len(plans),
        [p.class_count for p in plans],
    )
    return plans


def _select_wheel_primes(
    k: CandidateK, bound: Natural, plan: CharacterPlan, headroom: int, q_mod_4: int
) -> tuple[tuple[int, ...], tuple[tuple[int, ...], ...]]:
    primes: list[int] = []
    sets: list[tuple[int, ...]] = []
    w = 1
    for base, character in plan.per_base:
        if k.lam % base == 0:
            continue
        if k.k * k.lam * base * w * headroom >= bound:
            break
        primes.append(base)
        sets.append(tuple(sorted(allowed_residues(base, character, q_mod_4))))
        w *= base
    return tuple(primes), tuple(sets)


def enumerate_wheel_residues(plan: WheelPlan) -> Iterator[int]:
    """Yield every residue modulo ``plan.w`` that the plan allows, once each.

    Example:
        >>> wheel = WheelPlan((5, 13), ((2, 3), (2, 5, 6, 7, 8, 11)), (0,), 1, 1)
        >>> sum(1 for _ in enumerate_wheel_residues(wheel))
        12
    """

    moduli = (plan.two_adic_modulus, *plan.wheel_primes)
    sets = (plan.two_adic_residues, *plan.residue_sets)
    w = plan.w
    coefficients = []
    for modulus in moduli:
        cofactor = w // modulus
        coefficients.append(cofactor * pow(cofactor, -1, modulus) % w)

    # odometer over per-component indices
    indices = [0] * len(sets)
    while True:
        yield sum(s[i] * c for s, i, c in zip(sets, indices, coefficients)) % w
        position = len(indices) - 1
        while position >= 0:
            indices[position] += 1
            if indices[position] < len(sets[position]):
                break
            indices[position] = 0
            position -= 1
        if position < 0:
            return


def crt_class(plan: WheelPlan, k: Natural, residue: int) -> int | None:
    """Combine ``residue`` mod ``w`` with ``k^-1`` mod ``lam`` into one class.

    Returns ``None`` when ``k`` is not invertible modulo ``lam``.
    """

    lam = plan.lam
    if math.gcd(k, lam) != 1:
        return None
    w = plan.w
    target = pow(k, -1, lam) if lam > 1 else 0
    step = (target - residue) * (pow(w, -1, lam) if lam > 1 else 0) % lam
    return (residue + w * step) % (w * lam)


__all__ = [
    "DEFAULT_HEADROOM",
    "SIGNATURE_WHEEL_MAX_T",
    "WheelPlan",
    "build_wheel_plan",
    "crt_class",
    "enumerate_wheel_residues",
]
