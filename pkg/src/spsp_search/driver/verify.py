"""Independent verification of claimed strong pseudoprimes."""

from __future__ import annotations

import logging
import math
from collections.abc import MutableSequence, Sequence
from dataclasses import dataclass, field

import pandas as pd

from spsp_search.bigmath import (
    Natural,
    factor_small,
    is_probable_prime,
    spsp_base_count,
)
from spsp_search.driver.witnesses import Witness
from spsp_search.signatures import BaseVector, Signature, compute_signature

logger = logging.getLogger(__name__)


@dataclass
class VerificationCheck:
    """Outcome of one sub-check."""

    check: str
    ok: bool
    detail: str = ""


@dataclass
class VerificationReport:
    """Structured report generated by :func:`verify`."""

    n: Natural
    m: int
    bases_passed: int
    composite: bool
    checks: MutableSequence[VerificationCheck] = field(default_factory=list)
    signatures: dict[Natural, Signature] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        """Return ``True`` when every check passed."""

        return all(check.ok for check in self.checks)

    @property
    def failures(self) -> list[VerificationCheck]:
        return [check for check in self.checks if not check.ok]

    def to_frame(self) -> pd.DataFrame:
        """Return the checks as a DataFrame for logging or display."""

        if not self.checks:
            return pd.DataFrame(columns=["check", "ok", "detail"])
        return pd.DataFrame([check.__dict__ for check in self.checks])


def verify(
    n: Natural, factors: Sequence[Natural] | None = None, m: int = 1
) -> VerificationReport:
    """Check that ``n`` is a strong pseudoprime to the first ``m`` prime bases.

    When ``factors`` are given, their product, probable primality,
    distinctness and shared signature are reported as separate checks.

    Raises:
        ValueError: If ``n`` is even or smaller than 3.

    Example:
        >>> verify(2047, [23, 89], 1).ok
        True
    """

    if n < 3 or n % 2 == 0:
        raise ValueError("verify requires an odd n >= 3")
    nu = BaseVector.first(m)
    report = VerificationReport(
        n=n,
        m=m,
        bases_passed=spsp_base_count(n, m),
        composite=not is_probable_prime(n),
    )
    report.checks.append(
        VerificationCheck(
            "composite", report.composite, "" if report.composite else "n is prime"
        )
    )
    report.checks.append(
        VerificationCheck(
            "strong_pseudoprime",
            report.bases_passed == m,
            f"passes {report.bases_passed} of {m} bases",
        )
    )
    if factors is None:
        return report

    claimed = sorted(int(p) for p in factors)
    product = math.prod(claimed)
    report.checks.append(
        VerificationCheck(
            "product",
            product == n,
            "" if product == n else f"factors multiply to {product}",
        )
    )
    composite_factors = [p for p in claimed if not is_probable_prime(p)]
    report.checks.append(
        VerificationCheck(
            "factors_prime",
            not composite_factors,
            ", ".join(f"{p} is composite" for p in composite_factors),
        )
    )
    distinct = len(set(claimed)) == len(claimed)
    report.checks.append(
        VerificationCheck("distinct", distinct, "" if distinct else "repeated factor")
    )
    report.checks.append(_signature_check(claimed, nu, report))
    if not report.ok:
        logger.warning("Verification of %d failed: %s", n, report.failures)
    return report


def _signature_check(
    claimed: Sequence[Natural], nu: BaseVector, report: VerificationReport
) -> VerificationCheck:
    for p in claimed:
        if p % 2 == 0 or any(base % p == 0 for base in nu):
            return VerificationCheck(
                "signatures_equal", False, f"{p} has no signature over the bases"
            )
        if not is_probable_prime(p):
            return VerificationCheck("signatures_equal", False, f"{p} is not prime")
        report.signatures[p] = compute_signature(p, factor_small(p - 1), nu)
    distinct = {sig.entries for sig in report.signatures.values()}
    detail = "" if len(distinct) == 1 else f"signatures differ: {sorted(distinct)}"
    return VerificationCheck("signatures_equal", len(distinct) == 1, detail)


def verify_witness(witness: Witness, max_bases: int = 13) -> VerificationReport:
    """Verify a published witness.

    Witnesses without a fixed base count are checked against as many leading
    bases (up to ``max_bases``) as ``n`` actually passes.
    """

    m = witness.bases
    if m is None:
        m = max(1, spsp_base_count(witness.n, max_bases))
    return verify(witness.n, witness.factors, m)


__all__ = ["VerificationCheck", "VerificationReport", "verify", "verify_witness"]
