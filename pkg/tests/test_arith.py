import math

import pytest
from hypothesis import given, strategies as st

from ringlock.arith import (
    Composite,
    Prime,
    PrimePower,
    classify_integer,
    divisors,
    is_prime,
    lcm,
    multiplicative_order,
    prime_power,
    primes_up_to,
    xgcd,
    xgcd_multi,
)

ints = st.integers(min_value=-10**30, max_value=10**30)


@given(ints, ints)
def test_xgcd_bezout(a, b):
    g, u, v = xgcd(a, b)
    assert g == math.gcd(a, b)
    assert u * a + v * b == g


@given(st.lists(ints, min_size=1, max_size=6))
def test_xgcd_multi_bezout(values):
    w = xgcd_multi(values)
    assert w.gcd == math.gcd(*values)
    assert w.check(values)


def test_xgcd_multi_needs_values():
    with pytest.raises(ValueError):
        xgcd_multi([])


def test_bezout_check_rejects_wrong_gcd():
    w = xgcd_multi([4, 6])
    assert not type(w)(4, w.coefficients).check([4, 6])


def _trial_prime(n):
    return n >= 2 and all(n % d for d in range(2, math.isqrt(n) + 1))


def test_is_prime_matches_trial_division():
    assert [n for n in range(200) if is_prime(n)] == [n for n in range(200) if _trial_prime(n)]
    assert primes_up_to(50) == [n for n in range(51) if _trial_prime(n)]


@pytest.mark.parametrize("n, expected", [(2, (2, 1)), (8, (2, 3)), (81, (3, 4)), (12, None), (1, None), (2**61 - 1, (2**61 - 1, 1))])
def test_prime_power(n, expected):
    assert prime_power(n) == expected


def test_classify_integer():
    assert isinstance(classify_integer(7), Prime)
    assert isinstance(classify_integer(49), PrimePower)
    assert isinstance(classify_integer(42), Composite)


@given(st.integers(min_value=1, max_value=5000))
def test_divisors_oracle(n):
    assert divisors(n) == [d for d in range(1, n + 1) if n % d == 0]


@pytest.mark.parametrize("p, q", [(2, 3), (2, 7), (3, 13), (5, 31), (10, 7)])
def test_multiplicative_order(p, q):
    k = multiplicative_order(p, q)
    assert pow(p, k, q) == 1
    assert all(pow(p, j, q) != 1 for j in range(1, k))


def test_lcm():
    assert lcm(1, 2, 5) == 10
    assert lcm(4, 6) == 12
