"""Idempotent machinery.

``idempotent_certificate`` records the identity
``X = sum_{u in F_q^x} u * (1 - (X - u)^(q-1))`` in F_q[X]; each
``(x - u)^(q-1)`` is idempotent in a q-ring, so x is a combination of
central elements.

``eg_system`` builds the orthogonal idempotents e_g of F_p[T]/(T^(p^k) - T),
one per monic irreducible g with deg g | k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..fppoly import FpPoly, FqElement, mod_t_n_minus_t, fq_enumerate_units, is_irreducible, monic_irreducibles_dividing, poly_xgcd
from .model import (
    CertificateFormatError,
    Checks,
    Record,
    dec_poly,
    dec_poly_list,
    dec_prime,
    dec_small,
    enc_poly,
    register,
    require_keys,
)

# polynomials over F_q are lists of FqElement, ascending


def _fq_poly_mul(a: list[FqElement], b: list[FqElement], zero: FqElement) -> list[FqElement]:
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def _fq_trim(a: list[FqElement]) -> list[FqElement]:
    a = list(a)
    while a and a[-1].is_zero():
        a.pop()
    return a


def _linear_power(u: FqElement, n: int, one: FqElement) -> list[FqElement]:
    """Coefficients of (X - u)^n by the binomial theorem."""
    p = u.modulus.p
    neg = -u
    pows = [one]
    for _ in range(n):
        pows.append(pows[-1] * neg)
    return [pows[n - i] * (math.comb(n, i) % p) for i in range(n + 1)]


def idempotent_expansion(modulus: FpPoly, units: list[FqElement]) -> list[FqElement]:
    """Coefficients in X of sum_u u*(1 - (X - u)^(q-1))."""
    q = len(units) + 1
    zero = FqElement.of(modulus, 0)
    one = FqElement.of(modulus, 1)
    acc = [zero] * q
    for u in units:
        term = [zero - c for c in _linear_power(u, q - 1, one)]
        term[0] = term[0] + one
        for i, c in enumerate(term):
            acc[i] = acc[i] + u * c
    return _fq_trim(acc)


def short_form_expansion(modulus: FpPoly, units: list[FqElement], coeffs: list[FqElement]) -> list[FqElement]:
    """Coefficients in X of sum_u c_u (X - u)^(q-1)."""
    q = len(units) + 1
    zero = FqElement.of(modulus, 0)
    one = FqElement.of(modulus, 1)
    acc = [zero] * q
    for u, c in zip(units, coeffs):
        for i, x in enumerate(_linear_power(u, q - 1, one)):
            acc[i] = acc[i] + c * x
    return _fq_trim(acc)


@register
@dataclass(frozen=True)
class IdempotentDecomposition(Record):
    kind = "IdempotentDecomposition"

    p: int
    modulus: FpPoly
    units: tuple[FpPoly, ...]
    expansion: tuple[FpPoly, ...]
    short_form: tuple[FpPoly, ...]

    @property
    def q(self) -> int:
        return self.p ** (len(self.modulus.coeffs) - 1)

    def to_payload(self) -> dict:
        return {
            "p": self.p,
            "modulus": enc_poly(self.modulus),
            "units": [enc_poly(u) for u in self.units],
            "expansion": [enc_poly(c) for c in self.expansion],
            "short_form": [enc_poly(c) for c in self.short_form],
        }

    @classmethod
    def from_payload(cls, d: dict) -> "IdempotentDecomposition":
        require_keys(d, ("p", "modulus", "units", "expansion", "short_form"))
        p = dec_prime(d["p"])
        return cls(p, dec_poly(p, d["modulus"]), tuple(dec_poly_list(p, d["units"])),
                   tuple(dec_poly_list(p, d["expansion"])), tuple(dec_poly_list(p, d["short_form"])))

    def run_checks(self, c: Checks) -> None:
        m = self.modulus
        e = len(m.coeffs) - 1
        c.add("modulus monic of positive degree", m.is_monic() and e >= 1)
        c.add("modulus irreducible", lambda: is_irreducible(m))
        c.add("units reduced, nonzero and distinct",
              all(not u.is_zero() and len(u.coeffs) <= e for u in self.units)
              and len(set(self.units)) == len(self.units))
        c.add("one unit per nonzero field element", len(self.units) == self.q - 1)
        units = [FqElement(m, u) for u in self.units]
        expected = idempotent_expansion(m, units) if c.ok else []

        def stored_matches() -> bool:
            return len(expected) == len(self.expansion) and all(
                x.value == y for x, y in zip(expected, self.expansion))

        c.add("stored expansion equals sum u(1-(X-u)^(q-1))", stored_matches)
        c.add("expansion equals X", lambda: [x.value for x in expected] == [FpPoly.zero(self.p), FpPoly.const(self.p, 1)])
        if self.q > 2:
            def short() -> bool:
                if len(self.short_form) != len(units):
                    return False
                coeffs = [FqElement(m, x) for x in self.short_form]
                if any(x.value != (-u).value for x, u in zip(coeffs, units)):
                    return False
                got = short_form_expansion(m, units, coeffs)
                return [x.value for x in got] == [FpPoly.zero(self.p), FpPoly.const(self.p, 1)]

            c.add("short form sum (-u)(X-u)^(q-1) equals X", short)
        else:
            c.add("no short form for q = 2", len(self.short_form) == 0)


def idempotent_certificate(p: int, modulus: FpPoly | None = None) -> IdempotentDecomposition:
    """Certificate for X = sum_u u(1 - (X-u)^(q-1)) over F_q = F_p[Z]/(modulus).

    Without a modulus (or with a linear one) the prime field is used.
    """
    if modulus is None:
        modulus = FpPoly.T(p)
    if modulus.p != p:
        raise ValueError("modulus characteristic mismatch")
    if modulus.degree == 1:
        modulus = FpPoly.T(p)
    units = fq_enumerate_units(p, modulus)
    expansion = idempotent_expansion(modulus, units)
    q = len(units) + 1
    short = tuple((-u).value for u in units) if q > 2 else ()
    return IdempotentDecomposition(p, modulus, tuple(u.value for u in units),
                                   tuple(x.value for x in expansion), short)


# -- e_g systems -----------------------------------------------------------------

def _product(polys, p: int) -> FpPoly:
    acc = FpPoly.const(p, 1)
    for f in polys:
        acc = acc * f
    return acc


@register
@dataclass(frozen=True)
class EgSystem(Record):
    kind = "EgSystem"

    p: int
    k: int
    S: tuple[FpPoly, ...]
    u: tuple[FpPoly, ...]
    v: tuple[FpPoly, ...]
    e: tuple[FpPoly, ...]

    def idempotent(self, g: FpPoly) -> FpPoly:
        return self.e[self.S.index(g)]

    def to_payload(self) -> dict:
        return {
            "p": self.p,
            "k": self.k,
            "S": [enc_poly(g) for g in self.S],
            "u": [enc_poly(x) for x in self.u],
            "v": [enc_poly(x) for x in self.v],
            "e": [enc_poly(x) for x in self.e],
        }

    @classmethod
    def from_payload(cls, d: dict) -> "EgSystem":
        require_keys(d, ("p", "k", "S", "u", "v", "e"))
        p = dec_prime(d["p"])
        k = dec_small(d["k"], 1)
        S, u, v, e = (tuple(dec_poly_list(p, d[key])) for key in ("S", "u", "v", "e"))
        if not (len(S) == len(u) == len(v) == len(e)) or not S:
            raise CertificateFormatError("S, u, v, e must have equal nonzero length")
        return cls(p, k, S, u, v, e)

    def run_checks(self, c: Checks) -> None:
        p, k = self.p, self.k
        M = FpPoly.monomial(p, p ** k) - FpPoly.T(p)
        c.add("S monic, distinct, degrees divide k",
              len(set(self.S)) == len(self.S)
              and all(g.is_monic() and g.degree >= 1 and k % int(g.degree) == 0 for g in self.S))
        c.add("S irreducible", lambda: all(is_irreducible(g) for g in self.S))
        c.add("product of S equals T^(p^k) - T", lambda: _product(self.S, p) == M)
        cofactors = []
        if c.ok:
            cofactors = [_product(self.S[:i] + self.S[i + 1:], p) for i in range(len(self.S))]
        c.add("u*g + v*prod(others) = 1",
              lambda: all(ui * g + vi * P == FpPoly.const(p, 1)
                          for ui, vi, g, P in zip(self.u, self.v, self.S, cofactors)))
        c.add("e_g = v*prod(others)", lambda: all(vi * P == ei for vi, P, ei in zip(self.v, cofactors, self.e)))
        c.add("e_g = 1 mod g", lambda: all(ei % g == FpPoly.const(p, 1) % g for ei, g in zip(self.e, self.S)))
        # e_g = 0 mod g' for g' != g is immediate from e_g = v*prod(others)
        N = p ** k

        def red(f: FpPoly) -> FpPoly:
            return mod_t_n_minus_t(f, N) if N >= 2 else f % M

        c.add("sum e_g = 1 mod T^(p^k) - T", lambda: red(_sum(self.e, p)) == FpPoly.const(p, 1))
        c.add("e_g^2 = e_g mod T^(p^k) - T", lambda: all(red(ei * ei - ei).is_zero() for ei in self.e))
        c.add("e_g e_g' = 0 mod T^(p^k) - T",
              lambda: all(red(self.e[i] * self.e[j]).is_zero()
                          for i in range(len(self.e)) for j in range(i + 1, len(self.e))))


def _sum(polys, p: int) -> FpPoly:
    acc = FpPoly.zero(p)
    for f in polys:
        acc = acc + f
    return acc


def eg_system(p: int, k: int) -> EgSystem:
    S = monic_irreducibles_dividing(p, k)
    us, vs, es = [], [], []
    for i, g in enumerate(S):
        P = _product(S[:i] + S[i + 1:], p)
        one, u, v = poly_xgcd(g, P)
        if one != FpPoly.const(p, 1):
            raise ArithmeticError(f"{g} not coprime to the other factors")
        us.append(u)
        vs.append(v)
        es.append(v * P)
    return EgSystem(p, k, tuple(S), tuple(us), tuple(vs), tuple(es))
