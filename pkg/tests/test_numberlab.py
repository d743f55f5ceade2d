import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from reference_tables import BAD_FOR_2, FIELD_TABLE, ODD_BAD_FOR_3, ODD_BAD_FOR_5, SIMPLE_TO_100
from ringlock.arith import is_prime, prime_power
from ringlock.fppoly import FpPoly, poly_gcd
from ringlock.numberlab import (
    classify_n,
    coincide,
    get_exponent,
    good_bad,
    is_good,
    is_simple,
    is_simple_at,
    is_unpleasant,
    least_coinciding,
    linear_gcd,
    n_powers,
    n_primes,
    simple_density,
    simple_numbers,
    unpleasant_survey,
)


def _fields(n):
    return [q for q in range(2, n + 1) if (n - 1) % (q - 1) == 0 and prime_power(q)]


def test_field_table():
    for n, fields in FIELD_TABLE.items():
        assert list(n_powers(n)) == fields


@given(st.integers(2, 3000))
def test_n_powers_oracle(n):
    assert list(n_powers(n)) == _fields(n)
    assert list(n_primes(n)) == [q for q in _fields(n) if is_prime(q)]


@given(st.integers(2, 3000))
def test_get_exponent_oracle(n):
    for p in n_primes(n):
        ds = [d for d in range(1, n.bit_length() + 1) if p ** d <= n and (n - 1) % (p ** d - 1) == 0]
        assert get_exponent(p, n) == math.lcm(*ds)


def test_get_exponent_examples():
    assert get_exponent(2, 94) == 10
    assert get_exponent(2, 22) == 6
    assert get_exponent(3, 73) == 2
    with pytest.raises(ValueError):
        get_exponent(4, 10)
    with pytest.raises(ValueError):
        get_exponent(3, 8)


def test_simple_numbers():
    assert simple_numbers(100) == SIMPLE_TO_100
    assert all(is_simple(n) == (n in SIMPLE_TO_100) for n in range(2, 101))
    assert classify_n(6).is_simple and not classify_n(7).is_simple


def test_density_small_oracle():
    N = 5000
    assert simple_density(N) == Fraction(sum(is_simple(n) for n in range(2, N + 1)), N)


def test_n_must_exceed_one():
    with pytest.raises(ValueError):
        n_powers(1)


def _linear_gcd_generic(p, n):
    T = FpPoly.T(p)
    g = FpPoly.zero(p)
    for u in range(p):
        f = T + u
        g = poly_gcd(g, f ** n - f)
    return g


@pytest.mark.parametrize("p", [2, 3])
def test_linear_gcd_oracle(p):
    for n in range(2, 140):
        if (n - 1) % (p - 1) == 0:
            assert linear_gcd(p, n) == _linear_gcd_generic(p, n)


def test_small_unpleasant_survey():
    r = unpleasant_survey(2, 2, 300, jobs=1)
    oracle = [n for n in range(2, 301) if is_simple_at(2, n) and is_unpleasant(2, n)]
    assert list(r.unpleasant) == oracle
    assert r.unpleasant[0] == 74
    assert r.simple_at_p == sum(is_simple_at(2, n) for n in range(2, 301))


def test_survey_parallel_agrees():
    assert unpleasant_survey(2, 2, 2000, jobs=1) == unpleasant_survey(2, 2, 2000, jobs=2)


def test_bad_exponents():
    direct, marked = good_bad(2, 100)
    assert direct == marked == BAD_FOR_2
    for p, odd in ((3, ODD_BAD_FOR_3), (5, ODD_BAD_FOR_5)):
        direct, marked = good_bad(p, 100)
        assert direct == marked
        assert [k for k in direct if k % 2] == odd


@given(st.sampled_from([2, 3, 5, 7, 11]), st.integers(1, 60))
def test_bad_is_closed_under_multiples(p, k):
    if not is_good(p, k):
        assert not is_good(p, 2 * k)


def test_coincidence():
    assert coincide(10, 4)
    assert least_coinciding(46) == 16
    assert least_coinciding(75) == 3
    assert least_coinciding(22) is None
