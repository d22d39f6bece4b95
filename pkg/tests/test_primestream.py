import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import primerange

from spsp_search.bigmath import FactoredNumber
from spsp_search.primestream import FactoredPrime, base_orders, lambda_p, stream_primes
from spsp_search.signatures import BaseVector


def test_stream_primes_small_range() -> None:
    records = list(stream_primes(2, 30))

    assert [rec.p for rec in records] == list(primerange(2, 31))
    assert records[0].p_minus_1.factors == ()
    assert records[-1].p_minus_1.factors == ((2, 2), (7, 1))


@settings(max_examples=40, deadline=None)
@given(
    lo=st.integers(min_value=2, max_value=5000),
    span=st.integers(min_value=0, max_value=5000),
    segment=st.integers(min_value=1, max_value=700),
)
def test_stream_primes_matches_reference(lo: int, span: int, segment: int) -> None:
    hi = lo + span

    records = list(stream_primes(lo, hi, segment_size=segment))

    assert [rec.p for rec in records] == list(primerange(lo, hi + 1))
    for rec in records:
        assert rec.p_minus_1.value == rec.p - 1
        rec.p_minus_1.validate()


def test_stream_primes_validates_bounds() -> None:
    with pytest.raises(ValueError):
        list(stream_primes(10, 5))
    with pytest.raises(ValueError):
        list(stream_primes(1, 5))
    with pytest.raises(ValueError):
        list(stream_primes(2, 5, segment_size=0))


def test_base_orders_and_lambda() -> None:
    rec = FactoredPrime(23, FactoredNumber(22, ((2, 1), (11, 1))))

    assert base_orders(rec, BaseVector.first(2)) == (11, 11)
    assert lambda_p(rec, BaseVector.first(1)) == 11


def test_base_orders_rejects_base_prime() -> None:
    rec = FactoredPrime(3, FactoredNumber(2, ((2, 1),)))

    with pytest.raises(ValueError):
        base_orders(rec, BaseVector.first(2))


def test_stream_primes_hand_checked_range() -> None:
    records = list(stream_primes(2, 20, segment_size=16))

    assert [rec.p for rec in records] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert records[5].p_minus_1.factors == ((2, 2), (3, 1))


def test_stream_primes_factors_151120() -> None:
    (record,) = stream_primes(151121, 151121)

    assert record.p_minus_1.factors == ((2, 4), (5, 1), (1889, 1))


def test_prime_count_to_one_million() -> None:
    assert sum(1 for _ in stream_primes(2, 10**6)) == 78498


def test_lambda_of_300000317_is_p_minus_1() -> None:
    p = 300000317
    (record,) = stream_primes(p, p)

    assert record.p_minus_1.factors == ((2, 2), (7, 1), (11, 1), (23, 1), (42349, 1))
    assert lambda_p(record, BaseVector.first(12)) == p - 1


def test_lambda_divides_p_minus_1() -> None:
    nu = BaseVector.first(4)
    for rec in stream_primes(nu.next_prime, 20000):
        assert (rec.p - 1) % lambda_p(rec, nu) == 0


@pytest.mark.slow
def test_lambda_is_usually_p_minus_1_for_eight_bases() -> None:
    nu = BaseVector.first(8)
    full = total = 0
    for rec in stream_primes(nu.next_prime, 10**6):
        lam = lambda_p(rec, nu)
        assert (rec.p - 1) % lam == 0
        full += lam == rec.p - 1
        total += 1

    assert full / total > 0.9
