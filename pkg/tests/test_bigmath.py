import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import isprime, primerange

from spsp_search.bigmath import (
    FactoredNumber,
    big_gcd,
    factor_small,
    first_primes,
    iroot_round,
    is_probable_prime,
    jacobi,
    mod_pow,
    multiplicative_order,
    odd_part,
    primorial_product,
    small_primes,
    spsp_base_count,
    strong_probable_prime,
    v2,
)


def test_mod_pow_and_gcd() -> None:
    assert mod_pow(2, 10, 1000) == 24
    assert big_gcd(12, 18) == 6
    assert big_gcd(0, 7) == 7


def test_mod_pow_rejects_small_modulus() -> None:
    with pytest.raises(ValueError):
        mod_pow(3, 4, 1)


def test_big_gcd_rejects_double_zero() -> None:
    with pytest.raises(ValueError):
        big_gcd(0, 0)


def test_two_adic_helpers() -> None:
    assert v2(48) == 4
    assert odd_part(48) == 3
    assert v2(7) == 0
    with pytest.raises(ValueError):
        v2(0)


def test_iroot_round_rounds_to_nearest() -> None:
    assert iroot_round(2048, 3) == 13
    assert iroot_round(27, 3) == 3
    assert iroot_round(10**7, 3) == 215


def test_prime_tables() -> None:
    assert small_primes(30).tolist() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert small_primes(1).size == 0
    assert first_primes(5) == (2, 3, 5, 7, 11)
    assert primorial_product(10) == 210


def test_factored_number_checks_product() -> None:
    assert FactoredNumber(12, ((2, 2), (3, 1))).primes == (2, 3)
    with pytest.raises(ValueError):
        FactoredNumber(12, ((2, 1), (3, 1)))
    with pytest.raises(ValueError):
        FactoredNumber(6, ((3, 1), (2, 1)))


def test_factored_number_validate_rejects_composite_factor() -> None:
    with pytest.raises(ValueError):
        FactoredNumber(8, ((8, 1),)).validate()


def test_multiplicative_order() -> None:
    assert multiplicative_order(2, 23, FactoredNumber(22, ((2, 1), (11, 1)))) == 11
    assert multiplicative_order(3, 7, FactoredNumber(6, ((2, 1), (3, 1)))) == 6
    with pytest.raises(ValueError):
        multiplicative_order(14, 7, FactoredNumber(6, ((2, 1), (3, 1))))


def test_jacobi() -> None:
    assert jacobi(2, 7) == 1
    assert jacobi(3, 7) == -1
    assert jacobi(-1, 5) == 1
    with pytest.raises(ValueError):
        jacobi(3, 8)


def test_strong_test_on_first_pseudoprimes() -> None:
    assert strong_probable_prime(2047, 2)
    assert not strong_probable_prime(2047, 3)
    assert spsp_base_count(1373653, 3) == 2
    assert spsp_base_count(3215031751, 5) == 4
    assert spsp_base_count(9, 4) == 0


def test_strong_test_rejects_even() -> None:
    with pytest.raises(ValueError):
        strong_probable_prime(10, 3)


def test_is_probable_prime_near_deterministic_limit() -> None:
    assert not is_probable_prime(3215031751)
    assert is_probable_prime(2147483647)
    assert is_probable_prime(4294967291)
    assert is_probable_prime(2)
    assert not is_probable_prime(1)


@settings(max_examples=300, deadline=None)
@given(st.integers(min_value=0, max_value=10**7))
def test_is_probable_prime_matches_sympy(n: int) -> None:
    assert is_probable_prime(n) == isprime(n)


def test_factor_small() -> None:
    assert factor_small(360).factors == ((2, 3), (3, 2), (5, 1))
    assert factor_small(300000316).factors == (
        (2, 2),
        (7, 1),
        (11, 1),
        (23, 1),
        (42349, 1),
    )


def _naive_pow(base: int, exponent: int, modulus: int) -> int:
    result = 1 % modulus
    square = base % modulus
    while exponent:
        if exponent & 1:
            result = result * square % modulus
        square = square * square % modulus
        exponent >>= 1
    return result


def _schoolbook_mul(a: int, b: int) -> int:
    left = [int(d) for d in reversed(str(a))]
    right = [int(d) for d in reversed(str(b))]
    digits = [0] * (len(left) + len(right))
    for i, x in enumerate(left):
        carry = 0
        for j, y in enumerate(right):
            total = digits[i + j] + x * y + carry
            digits[i + j], carry = total % 10, total // 10
        digits[i + len(right)] += carry
    return int("".join(map(str, reversed(digits))))


def test_mod_pow_examples() -> None:
    assert mod_pow(7, 0, 13) == 1
    assert mod_pow(2, 10, 1025) == 1024


def test_mod_pow_matches_schoolbook_square_and_multiply() -> None:
    modulus, result, square, exponent = 151121, 1, 3, 75560
    while exponent:
        if exponent & 1:
            result = _schoolbook_mul(result, square) % modulus
        square = _schoolbook_mul(square, square) % modulus
        exponent >>= 1

    assert mod_pow(3, 75560, 151121) == result
    # 75560 = (151121 - 1) / 2, so Euler's criterion leaves only +-1
    assert result in (1, 151120)


def test_mod_pow_matches_naive_multiplication_on_word_sample() -> None:
    rng = np.random.default_rng(151121)
    samples = rng.integers(0, 2**16, size=(100_000, 3)).tolist()

    for base, exponent, modulus in samples:
        modulus = max(modulus, 2)
        assert mod_pow(base, exponent, modulus) == _naive_pow(base, exponent, modulus)


@settings(max_examples=300, deadline=None)
@given(
    st.integers(min_value=0, max_value=10**30),
    st.integers(min_value=1, max_value=10**30),
)
def test_big_gcd_divides_both_and_absorbs_common_divisors(a: int, b: int) -> None:
    g = big_gcd(a, b)

    assert a % g == 0
    assert b % g == 0
    for d in range(2, 1001):
        if a % d == 0 and b % d == 0:
            assert g % d == 0


def test_big_gcd_recovers_151121() -> None:
    h_five = 5**9445 - 1

    assert big_gcd((2**37780 + 1) % h_five, h_five) == 151121
    assert big_gcd(151121, 0) == 151121


def test_v2_examples() -> None:
    assert v2(8) == 3
    assert v2(9445) == 0
    assert v2(151120) == 4


def test_orders_modulo_151121() -> None:
    p_minus_1 = factor_small(151120)

    assert p_minus_1.factors == ((2, 4), (5, 1), (1889, 1))
    assert v2(multiplicative_order(5, 151121, p_minus_1)) == 0
    assert v2(multiplicative_order(2, 151121, p_minus_1)) == 3


def test_multiplicative_order_is_the_minimal_divisor_of_p_minus_1() -> None:
    for p in primerange(3, 3000):
        p_minus_1 = factor_small(p - 1)
        for a in range(2, 38):
            if a % p == 0:
                continue
            order = multiplicative_order(a, p, p_minus_1)
            assert (p - 1) % order == 0
            assert pow(a, order, p) == 1
            for q in factor_small(order).primes:
                assert pow(a, order // q, p) != 1, (a, p)


def test_primes_pass_every_small_base() -> None:
    assert strong_probable_prime(13, 2)
    for p in primerange(3, 10**5 + 1):
        for a in range(2, 21):
            if a % p:
                assert strong_probable_prime(p, a), (p, a)


def test_jacobi_examples() -> None:
    assert jacobi(1, 9) == 1
    assert jacobi(3, 5) == -1
    assert all(jacobi(r, 13) == -1 for r in (2, 5, 6, 7, 8, 11))


@settings(max_examples=300, deadline=None)
@given(
    st.sampled_from(list(primerange(3, 2000))),
    st.integers(min_value=-(10**6), max_value=10**6),
    st.integers(min_value=-(10**6), max_value=10**6),
)
def test_jacobi_is_multiplicative(p: int, a: int, b: int) -> None:
    assert jacobi(a, p) * jacobi(b, p) == jacobi(a * b, p)


def test_jacobi_matches_order_valuation() -> None:
    for p in primerange(3, 10**4 + 1):
        p_minus_1 = factor_small(p - 1)
        for a in range(2, 38):
            if a % p == 0:
                continue
            residue = v2(multiplicative_order(a, p, p_minus_1)) < v2(p - 1)
            assert (jacobi(a, p) == 1) == residue, (p, a)


def test_spsp_base_count_on_published_values() -> None:
    assert spsp_base_count(2047, 13) == 1
    assert spsp_base_count(3825123056546413051, 13) == 11
    assert spsp_base_count(318665857834031151167461, 12) == 12
    assert spsp_base_count(3317044064679887385961981, 13) == 13
