"""Identities behind commutativity of p^2-rings with p = 0.

The trace holds four checkable pieces:

(a) e = X + X^p satisfies e^p - e = quotient * (X^(p^2) - X) in GF(p)[X];
(b) (x+y)^p - x^p - y^p is the sum of the brackets [x^i y^(p-i)], 0 < i < p,
    over Z/p;
(c) the Vandermonde matrix (lambda^i) over GF(p) and an explicit inverse
    whose row i holds the T^i coefficients of 1 - (T - lambda)^(p-1);
(d) y*[x y^(p-1)] and [x y^(p-1)]*y share all words but one each, which
    leaves y^p x = x y^p.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

from ..arith import is_prime
from ..fppoly import FpPoly
from ..freering import FreePoly, bracket
from .model import (
    CertificateFormatError,
    Checks,
    Record,
    dec_free,
    dec_poly,
    dec_prime,
    enc_free,
    enc_poly,
    register,
    require_keys,
)

MAX_P = 13


def vandermonde(p: int) -> list[list[int]]:
    return [[pow(lam, i, p) for i in range(p)] for lam in range(p)]


def vandermonde_inverse(p: int) -> list[list[int]]:
    """U[i][lam] = coefficient of T^i in 1 - (T - lam)^(p-1)."""
    U = [[0] * p for _ in range(p)]
    T = FpPoly.T(p)
    for lam in range(p):
        f = FpPoly.const(p, 1) - (T - lam) ** (p - 1)
        for i, c in enumerate(f.coeffs):
            U[i][lam] = c
    return U


def _matmul(A, B, p):
    return [[sum(a * b for a, b in zip(row, col)) % p for col in zip(*B)] for row in A]


def _identity(p):
    return [[int(i == j) for j in range(p)] for i in range(p)]


def _bracket_sum(p: int) -> FreePoly:
    acc = FreePoly.zero(p)
    for i in range(1, p):
        acc = acc + bracket(i, p - i, modulus=p)
    return acc


def _dec_matrix(arr: Any, p: int) -> list[list[int]]:
    if (not isinstance(arr, list) or len(arr) != p
            or any(not isinstance(r, list) or len(r) != p for r in arr)):
        raise CertificateFormatError(f"expected a {p}x{p} matrix")
    for r in arr:
        for x in r:
            if isinstance(x, bool) or not isinstance(x, int) or not 0 <= x < p:
                raise CertificateFormatError(f"matrix entry {x!r} not in range(0, {p})")
    return arr


def _dec_word(w: Any) -> tuple[str, ...]:
    if not isinstance(w, list) or not all(isinstance(v, str) and v for v in w):
        raise CertificateFormatError(f"bad word {w!r}")
    return tuple(w)


@register
@dataclass(frozen=True)
class P2Trace(Record):
    kind = "P2Trace"

    p: int
    e: FpPoly
    quotient: FpPoly
    brackets: tuple[FreePoly, ...]
    V: tuple[tuple[int, ...], ...]
    U: tuple[tuple[int, ...], ...]
    lhs_words: tuple[tuple[str, ...], ...]
    rhs_words: tuple[tuple[str, ...], ...]

    def to_payload(self) -> dict:
        return {
            "p": self.p,
            "e": enc_poly(self.e),
            "quotient": enc_poly(self.quotient),
            "brackets": [enc_free(b) for b in self.brackets],
            "vandermonde": [list(r) for r in self.V],
            "inverse": [list(r) for r in self.U],
            "lhs_words": [list(w) for w in self.lhs_words],
            "rhs_words": [list(w) for w in self.rhs_words],
        }

    @classmethod
    def from_payload(cls, d: dict) -> "P2Trace":
        require_keys(d, ("p", "e", "quotient", "brackets", "vandermonde", "inverse", "lhs_words", "rhs_words"))
        p = dec_prime(d["p"])
        if p > MAX_P:
            raise CertificateFormatError(f"p = {p} exceeds the expansion budget {MAX_P}")
        if not isinstance(d["brackets"], list):
            raise CertificateFormatError("brackets must be a list")
        brackets = tuple(dec_free(b) for b in d["brackets"])
        V = tuple(tuple(r) for r in _dec_matrix(d["vandermonde"], p))
        U = tuple(tuple(r) for r in _dec_matrix(d["inverse"], p))
        for key in ("lhs_words", "rhs_words"):
            if not isinstance(d[key], list):
                raise CertificateFormatError(f"{key} must be a list")
        lhs = tuple(_dec_word(w) for w in d["lhs_words"])
        rhs = tuple(_dec_word(w) for w in d["rhs_words"])
        return cls(p, dec_poly(p, d["e"]), dec_poly(p, d["quotient"]), brackets, V, U, lhs, rhs)

    def run_checks(self, c: Checks) -> None:
        p = self.p
        X = FpPoly.T(p)
        c.add("(a) e = X + X^p", self.e == X + FpPoly.monomial(p, p))
        c.add("(a) e^p - e = quotient * (X^(p^2) - X)",
              lambda: self.e ** p - self.e == self.quotient * (FpPoly.monomial(p, p * p) - X))

        def bracket_shape() -> bool:
            if len(self.brackets) != p - 1:
                return False
            for i, br in enumerate(self.brackets, start=1):
                if br.modulus != p or len(br.terms) != math.comb(p, i):
                    return False
                for w, coeff in br.terms.items():
                    if coeff != 1 or len(w) != p or w.count("x") != i or w.count("y") != p - i:
                        return False
            return True

        c.add("(b) bracket i lists every word with i x's and p-i y's once", bracket_shape)

        def binomial() -> bool:
            x, y = FreePoly.var("x", p), FreePoly.var("y", p)
            lhs = (x + y) ** p - x ** p - y ** p
            total = FreePoly.zero(p)
            for br in self.brackets:
                total = total + br
            return lhs == total

        c.add("(b) (x+y)^p - x^p - y^p = sum of brackets", binomial)
        c.add("(c) V[lam][i] = lam^i", [list(r) for r in self.V] == vandermonde(p))
        c.add("(c) U*V = I", lambda: _matmul(self.U, self.V, p) == _identity(p))
        c.add("(c) V*U = I", lambda: _matmul(self.V, self.U, p) == _identity(p))

        def words() -> bool:
            if len(self.lhs_words) != p or len(self.rhs_words) != p:
                return False
            y = FreePoly.var("y", p)
            br = self.brackets[0]
            lhs_expected = {w for w in (y * br).terms}
            rhs_expected = {w for w in (br * y).terms}
            if set(self.lhs_words) != lhs_expected or set(self.rhs_words) != rhs_expected:
                return False
            if any(self.lhs_words[i] != self.rhs_words[i + 1] for i in range(p - 1)):
                return False
            return (self.lhs_words[-1] == ("y",) * p + ("x",)
                    and self.rhs_words[0] == ("x",) + ("y",) * p)

        c.add("(d) y*[x y^(p-1)] and [x y^(p-1)]*y match word i to word i+1", words)


def p2_trace(p: int, max_p: int = MAX_P) -> P2Trace:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p > max_p:
        raise ValueError(f"p = {p} exceeds the expansion budget {max_p}")
    X = FpPoly.T(p)
    e = X + FpPoly.monomial(p, p)
    quotient, rem = divmod(e ** p - e, FpPoly.monomial(p, p * p) - X)
    assert rem.is_zero()
    brackets = tuple(bracket(i, p - i, modulus=p) for i in range(1, p))
    if _bracket_sum(p) != (FreePoly.var("x", p) + FreePoly.var("y", p)) ** p - FreePoly.var("x", p) ** p \
            - FreePoly.var("y", p) ** p:
        raise ArithmeticError("bracket expansion failed")
    # summand i of [x y^(p-1)] is y^i x y^(p-1-i)
    summands = [("y",) * i + ("x",) + ("y",) * (p - 1 - i) for i in range(p)]
    lhs = tuple(("y",) + w for w in summands)
    rhs = tuple(w + ("y",) for w in summands)
    V = tuple(tuple(r) for r in vandermonde(p))
    U = tuple(tuple(r) for r in vandermonde_inverse(p))
    return P2Trace(p, e, quotient, brackets, V, U, lhs, rhs)
