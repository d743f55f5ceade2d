"""Number-theoretic classification: n-fields, reduction exponents, simple
numbers, nice/unpleasant numbers and good/bad exponents."""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from . import fppoly
from .arith import divisors, is_prime, lcm, multiplicative_order, prime_power, primes_up_to


@dataclass(frozen=True)
class NClassification:
    n: int
    n_primes: tuple[int, ...]
    n_powers: tuple[int, ...]
    is_simple: bool


def _check_n(n: int) -> None:
    if n <= 1:
        raise ValueError(f"n must exceed 1, got {n}")


def n_powers(n: int) -> tuple[int, ...]:
    """Prime powers q with q - 1 | n - 1, ascending (the orders of the n-fields)."""
    _check_n(n)
    return tuple(d + 1 for d in divisors(n - 1) if prime_power(d + 1) is not None)


def classify_n(n: int) -> NClassification:
    qs = n_powers(n)
    primes = tuple(q for q in qs if is_prime(q))
    return NClassification(n, primes, qs, primes == qs)


def n_primes(n: int) -> tuple[int, ...]:
    return classify_n(n).n_primes


def get_exponent(p: int, n: int) -> int:
    """lcm of all d >= 1 with p^d - 1 | n - 1."""
    _check_n(n)
    if not is_prime(p) or (n - 1) % (p - 1):
        raise ValueError(f"Invalid arguments: need prime p with p-1 | n-1, got p={p}, n={n}")
    ds = []
    d, pd = 1, p
    while pd <= n:
        if (n - 1) % (pd - 1) == 0:
            ds.append(d)
        d += 1
        pd *= p
    return lcm(*ds)


def is_simple(n: int) -> bool:
    return classify_n(n).is_simple


def _simple_sieve(limit: int) -> bytearray:
    """flags[n] == 1 iff n is simple, for 2 <= n <= limit."""
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for p in primes_up_to(int(math.isqrt(limit)) + 1):
        q = p * p
        while q - 1 <= limit - 1:
            step = q - 1
            # n = 1 + j*(q-1), j >= 1
            flags[1 + step::step] = bytes(len(range(1 + step, limit + 1, step)))
            q *= p
    return flags


def simple_numbers(limit: int) -> list[int]:
    if limit < 2:
        return []
    flags = _simple_sieve(limit)
    return [n for n in range(2, limit + 1) if flags[n]]


def simple_density(N: int) -> Fraction:
    """#{simple n <= N} / N as an exact fraction."""
    if N < 2:
        raise ValueError("N must be at least 2")
    return Fraction(sum(_simple_sieve(N)), N)


def is_simple_at(p: int, n: int) -> bool:
    return (n - 1) % (p - 1) == 0 and get_exponent(p, n) == 1


# -- unpleasant survey --------------------------------------------------------

def _linear_gcd_gf2(n: int) -> int:
    """gcd(T^n - T, (T+1)^n - (T+1)) over GF(2) as a bit-vector."""
    f0 = (1 << n) | 2
    f1 = fppoly._to_bits((fppoly.FpPoly.T(2) + 1).coeffs)
    acc, base = 1, f1
    e = n
    while e:
        if e & 1:
            acc = fppoly._g2_mul(acc, base)
        e >>= 1
        if e:
            base = fppoly._g2_square(base)
    f1 = acc ^ 3
    return fppoly._g2_gcd(f0, f1 ^ f0)


def linear_gcd(p: int, n: int) -> fppoly.FpPoly:
    """gcd of (T+u)^n - (T+u) over all u in GF(p)."""
    if p == 2:
        return fppoly.FpPoly._raw(2, fppoly._from_bits(_linear_gcd_gf2(n)))
    T = fppoly.FpPoly.T(p)
    f0 = T ** n - T
    g = f0
    for u in range(1, p):
        fu = (T + u) ** n - (T + u)
        g = fppoly.poly_gcd(g, fu % g)
        if len(g.coeffs) == p + 1:
            break
    return g


def is_unpleasant(p: int, n: int) -> bool:
    """For n simple at p: whether the linear witnesses fail to give T^p - T."""
    g = linear_gcd(p, n)
    return len(g.coeffs) != p + 1


def _survey_chunk(args: tuple[int, int, int]) -> tuple[int, list[int]]:
    p, lo, hi = args
    count, bad = 0, []
    for n in range(lo, hi + 1):
        if is_simple_at(p, n):
            count += 1
            if is_unpleasant(p, n):
                bad.append(n)
    return count, bad


@dataclass(frozen=True)
class SurveyResult:
    p: int
    start: int
    end: int
    simple_at_p: int
    unpleasant: tuple[int, ...]


def unpleasant_survey(p: int, start: int, end: int, jobs: int | None = None) -> SurveyResult:
    """Count the n in [start, end] simple at p and list the unpleasant ones."""
    if start < 2:
        raise ValueError("start must be at least 2")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    jobs = jobs or os.cpu_count() or 1
    if end < start:
        return SurveyResult(p, start, end, 0, ())
    # interleave boundaries so work per chunk is roughly balanced
    nchunks = max(1, min(jobs * 8, end - start + 1))
    bounds = [start + (end - start + 1) * i // nchunks for i in range(nchunks + 1)]
    tasks = [(p, bounds[i], bounds[i + 1] - 1) for i in range(nchunks) if bounds[i] < bounds[i + 1]]
    if jobs == 1:
        results = [_survey_chunk(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_survey_chunk, tasks))
    count = sum(c for c, _ in results)
    bad = sorted(n for _, b in results for n in b)
    return SurveyResult(p, start, end, count, tuple(bad))


# -- good and bad exponents --------------------------------------------------

def is_good(p: int, k: int) -> bool:
    return math.gcd(k, p ** k - 1) == 1


def good_bad(p: int, kmax: int) -> tuple[list[int], list[int]]:
    """Bad exponents k <= kmax, once by gcd(k, p^k - 1) and once as the union
    of the progressions q*ord_q(p)*N+ over primes q != p."""
    if kmax < 1:
        raise ValueError("kmax must be positive")
    direct = [k for k in range(1, kmax + 1) if not is_good(p, k)]
    marked = set()
    for q in primes_up_to(kmax):
        if q == p:
            continue
        step = q * multiplicative_order(p, q)
        marked.update(range(step, kmax + 1, step))
    return direct, sorted(marked)


# -- coincidence of classes --------------------------------------------------

def coincide(n: int, m: int) -> bool:
    """n-rings and m-rings coincide iff they have the same fields."""
    return set(n_powers(n)) == set(n_powers(m))


def least_coinciding(n: int) -> int | None:
    """Smallest m < n with coincide(n, m), if any."""
    target = set(n_powers(n))
    for m in range(2, n):
        if set(n_powers(m)) == target:
            return m
    return None
