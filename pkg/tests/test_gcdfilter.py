import pytest
from sympy import primerange

from spsp_search.bigmath import factor_small, spsp_base_count
from spsp_search.gcdfilter import (
    CandidateK,
    HForm,
    UnresolvedResidualError,
    Verdict,
    estimate_h_bits,
    gcd_filter,
    h_exponent_and_form,
    prime_divisors_between,
)
from spsp_search.primestream import FactoredPrime
from spsp_search.signatures import BaseVector, Signature
from spsp_search.sigtable import PrimeRecord


def _candidate(p: int, m: int) -> CandidateK:
    record = PrimeRecord.from_factored(
        FactoredPrime(p, factor_small(p - 1)), BaseVector.first(m)
    )
    return CandidateK((p,), record.sigma, record.lam)


def test_candidate_k_product_and_ordering() -> None:
    k = CandidateK((151, 751), Signature((1, 1, 1, 1)), 750)

    assert k.k == 113401
    assert k.t == 3
    assert k.largest_factor == 751
    with pytest.raises(ValueError):
        CandidateK((751, 151), Signature((1,)), 1)


def test_h_forms_follow_signature_entries() -> None:
    k = _candidate(151121, 3)

    assert k.sigma == Signature((3, 4, 0))
    assert h_exponent_and_form(2, k) == (HForm.PLUS, 37780)
    assert h_exponent_and_form(3, k) == (HForm.PLUS, 75560)
    assert h_exponent_and_form(5, k) == (HForm.MINUS, 9445)
    with pytest.raises(ValueError):
        h_exponent_and_form(7, k)


def test_estimate_h_bits() -> None:
    assert estimate_h_bits(2, HForm.MINUS, 10) == 10
    assert estimate_h_bits(2, HForm.PLUS, 10) == 11


def test_golden_chain_rules_out_151121() -> None:
    k = _candidate(151121, 3)

    outcome = gcd_filter(k, BaseVector.first(3), 10**12)

    assert outcome.first_base == 5
    assert outcome.first_gcd == 151121
    assert outcome.verdict is Verdict.RULED_OUT
    assert outcome.candidate_pts == ()
    assert outcome.bases_used == (5, 2)


def test_gcd_filter_finds_2047() -> None:
    outcome = gcd_filter(_candidate(23, 1), BaseVector.first(1), 2048)

    assert outcome.verdict is Verdict.SURVIVORS
    assert outcome.candidate_pts == (89,)
    assert outcome.residual == 2047


def test_gcd_filter_keeps_final_prime_of_psi_2() -> None:
    outcome = gcd_filter(_candidate(829, 2), BaseVector.first(2), 1_400_000)

    assert 1657 in outcome.candidate_pts


def test_gcd_filter_rejects_invalid_k() -> None:
    nu = BaseVector.first(2)
    with pytest.raises(ValueError):
        gcd_filter(CandidateK((3, 5), Signature((1, 1)), 4), nu, 10**6)
    with pytest.raises(ValueError):
        gcd_filter(CandidateK((2,), Signature((0, 0)), 1), nu, 10**6)


def test_prime_divisors_between_trial_range() -> None:
    assert prime_divisors_between(2 * 3 * 5 * 7 * 101, 4, 200) == [5, 7, 101]
    # the cofactor above the trial range cannot hold a divisor <= 100
    assert prime_divisors_between(7 * 1000003, 2, 100) == [7]
    assert prime_divisors_between(15, 20, 10) == []


def test_prime_divisors_between_uses_pollard_rho() -> None:
    x = 3 * 1000003 * 1000033

    found = prime_divisors_between(x, 5, 10**7, trial_limit=1000, sieve_limit=1000)

    assert found == [1000003, 1000033]


def test_unfactorable_residual_raises() -> None:
    x = 1000000007 * 1000000009

    with pytest.raises(UnresolvedResidualError) as info:
        prime_divisors_between(x, 2, 10**10, k=99, trial_limit=1000, rho_max_steps=2)

    assert info.value.k == 99
    assert info.value.residual == x


def test_prime_divisors_between_sieves_below_the_cap_without_rho() -> None:
    x = 1000000007 * 1000000009 * 1000003 * 97

    found = prime_divisors_between(x, 50, 5 * 10**6, trial_limit=100, rho_max_steps=1)

    assert found == [97, 1000003]


@pytest.mark.parametrize("p", [797, 887, 983, 997])
def test_gcd_filter_settles_k_near_the_cutoff(p: int) -> None:
    bound = 10**9
    k = _candidate(p, 1)

    outcome = gcd_filter(k, BaseVector.first(1), bound)

    assert outcome.verdict in (Verdict.RULED_OUT, Verdict.SURVIVORS)
    assert all(p < q <= bound // p for q in outcome.candidate_pts)
    if p == 797:
        expected = [
            q
            for q in primerange(p + 1, bound // p + 1)
            if spsp_base_count(p * q, 1) == 1
        ]
        assert set(expected) <= set(outcome.candidate_pts)
