"""GCD elimination of candidate ``k`` values."""

from spsp_search.gcdfilter.chain import (
    CandidateK,
    GcdOutcome,
    HForm,
    Verdict,
    estimate_h_bits,
    gcd_filter,
    h_exponent_and_form,
)
from spsp_search.gcdfilter.factoring import (
    DEFAULT_RHO_MAX_STEPS,
    DEFAULT_SIEVE_LIMIT,
    DEFAULT_TRIAL_LIMIT,
    UnresolvedResidualError,
    prime_divisors_between,
)

__all__ = [
    "CandidateK",
    "DEFAULT_RHO_MAX_STEPS",
    "DEFAULT_SIEVE_LIMIT",
    "DEFAULT_TRIAL_LIMIT",
    "GcdOutcome",
    "HForm",
    "UnresolvedResidualError",
    "Verdict",
    "estimate_h_bits",
    "gcd_filter",
    "h_exponent_and_form",
    "prime_divisors_between",
]
