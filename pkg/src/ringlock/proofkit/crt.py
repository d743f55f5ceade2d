"""Gluing commutativity modulo single primes into commutativity outright.

From ``xy - yx = p_i u_i`` for pairwise coprime p_1..p_s we build, one prime
at a time, integers c_i with ``xy - yx = (p_1 ... p_s) * sum c_i u_i``. Each
step takes q1 P + q2 p = 1 for the running product P and the next prime p
and replaces w by q1 u_new + q2 w.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from ..arith import is_prime, xgcd
from .model import CertificateFormatError, Checks, Record, dec_int, enc_int, register, require_keys


@register
@dataclass(frozen=True)
class CrtGlue(Record):
    kind = "CrtGlue"

    primes: tuple[int, ...]
    steps: tuple[tuple[int, int], ...]  # (q1, q2) per prime after the first
    coefficients: tuple[int, ...]

    @property
    def product(self) -> int:
        return math.prod(self.primes)

    def to_payload(self) -> dict:
        return {
            "primes": [enc_int(p) for p in self.primes],
            "steps": [[enc_int(q1), enc_int(q2)] for q1, q2 in self.steps],
            "coefficients": [enc_int(c) for c in self.coefficients],
        }

    @classmethod
    def from_payload(cls, d: dict) -> "CrtGlue":
        require_keys(d, ("primes", "steps", "coefficients"))
        primes = tuple(dec_int(p) for p in d["primes"])
        if not primes:
            raise CertificateFormatError("need at least one prime")
        steps = []
        for s in d["steps"]:
            if not isinstance(s, list) or len(s) != 2:
                raise CertificateFormatError(f"bad step {s!r}")
            steps.append((dec_int(s[0]), dec_int(s[1])))
        coeffs = tuple(dec_int(c) for c in d["coefficients"])
        if len(steps) != len(primes) - 1 or len(coeffs) != len(primes):
            raise CertificateFormatError("step or coefficient count does not match the primes")
        return cls(primes, tuple(steps), coeffs)

    def run_checks(self, c: Checks) -> None:
        ps = self.primes
        c.add("primes are prime and distinct", all(is_prime(p) for p in ps) and len(set(ps)) == len(ps))

        def steps_ok() -> bool:
            P, w = ps[0], [1]
            for p, (q1, q2) in zip(ps[1:], self.steps):
                if q1 * P + q2 * p != 1:
                    return False
                w = [q2 * x for x in w] + [q1]
                P *= p
            return tuple(w) == self.coefficients

        c.add("each step q1*P + q2*p = 1 and the fold gives the coefficients", steps_ok)
        P = self.product
        c.add("sum c_i * P / p_i = 1", sum(ci * (P // p) for ci, p in zip(self.coefficients, ps)) == 1)


def crt_glue_certificate(primes: Sequence[int]) -> CrtGlue:
    primes = tuple(int(p) for p in primes)
    if not primes:
        raise ValueError("need at least one prime")
    if len(set(primes)) != len(primes):
        raise ValueError(f"repeated primes in {primes}")
    if not all(is_prime(p) for p in primes):
        raise ValueError(f"not all of {primes} are prime")
    P, w, steps = primes[0], [1], []
    for p in primes[1:]:
        g, q1, q2 = xgcd(P, p)
        assert g == 1
        steps.append((q1, q2))
        w = [q2 * x for x in w] + [q1]
        P *= p
    return CrtGlue(primes, tuple(steps), tuple(w))
