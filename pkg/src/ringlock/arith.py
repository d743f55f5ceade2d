"""Integer utilities: primality, prime powers, multiplicative orders and
multi-argument extended gcd.

Python integers are already arbitrary precision, so values such as
``3**2023 - 3`` are handled exactly without any wrapper type.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import sympy


@dataclass(frozen=True)
class BezoutWitness:
    gcd: int
    coefficients: tuple[int, ...]

    def check(self, values: Sequence[int]) -> bool:
        if len(values) != len(self.coefficients) or self.gcd < 0:
            return False
        if sum(c * v for c, v in zip(self.coefficients, values)) != self.gcd:
            return False
        if self.gcd == 0:
            return all(v == 0 for v in values)
        return all(v % self.gcd == 0 for v in values)


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, u, v)`` with ``u*a + v*b == g == gcd(a, b) >= 0``."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def xgcd_multi(values: Sequence[int]) -> BezoutWitness:
    """Extended gcd of several integers.

    Folds first/rest exactly like the classical recursive extension of a
    two-argument xgcd, so the coefficients are reproducible.
    """
    values = [int(v) for v in values]
    if not values:
        raise ValueError("xgcd_multi needs at least one value")
    if len(values) == 1:
        a = values[0]
        return BezoutWitness(abs(a), (-1 if a < 0 else 1,))
    if len(values) == 2:
        g, u, v = xgcd(values[0], values[1])
        return BezoutWitness(g, (u, v))
    first, rest = values[0], values[1:]
    inner = xgcd_multi(rest)
    g, u, v = xgcd(first, inner.gcd)
    return BezoutWitness(g, (u,) + tuple(v * c for c in inner.coefficients))


@dataclass(frozen=True)
class Prime:
    p: int


@dataclass(frozen=True)
class PrimePower:
    p: int
    e: int


@dataclass(frozen=True)
class Composite:
    n: int


Classification = Union[Prime, PrimePower, Composite]


def is_prime(n: int) -> bool:
    return n >= 2 and bool(sympy.isprime(n))


def prime_power(n: int) -> tuple[int, int] | None:
    """Return ``(p, e)`` with ``p**e == n`` and ``e >= 1``, or None."""
    if n < 2:
        return None
    if is_prime(n):
        return n, 1
    pp = sympy.perfect_power(n)
    if not pp:
        return None
    base, e = int(pp[0]), int(pp[1])
    # perfect_power may hand back a composite base, e.g. 64 -> (8, 2)
    inner = prime_power(base)
    if inner is None:
        return None
    return inner[0], inner[1] * e


def is_prime_power(n: int) -> bool:
    return prime_power(n) is not None


def classify_integer(n: int) -> Classification:
    if n < 2:
        raise ValueError(f"classify_integer needs n >= 2, got {n}")
    pp = prime_power(n)
    if pp is None:
        return Composite(n)
    p, e = pp
    return Prime(p) if e == 1 else PrimePower(p, e)


def multiplicative_order(p: int, q: int) -> int:
    """Least ``d >= 1`` with ``p**d == 1 (mod q)`` for a prime ``q``."""
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    if p % q == 0:
        raise ValueError(f"{q} divides {p}; order undefined")
    return int(sympy.n_order(p % q, q))


def divisors(n: int) -> list[int]:
    return [int(d) for d in sympy.divisors(n)]


def primes_up_to(limit: int) -> list[int]:
    return [int(p) for p in sympy.primerange(2, limit + 1)]


def next_prime(n: int) -> int:
    return int(sympy.nextprime(n))


def lcm(*values: int) -> int:
    return math.lcm(*values) if values else 1
