"""Reduction certificates.

* characteristic: an integer combination of numbers z^n - z equal to the
  product of all primes p with p - 1 | n - 1, so that product vanishes in
  every n-ring;
* prime power: a GF(p)[T] combination g = sum u_i (f_i^n - f_i) with
  g | T^(p^k) - T, so every n-ring with p = 0 satisfies x^(p^k) = x.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .arith import is_prime, next_prime, xgcd_multi
from .fppoly import FpPoly, monic_irreducibles, monic_polys, poly_gcd, poly_xgcd_multi, powmod
from .numberlab import get_exponent, n_primes
from .proofkit.model import (
    CertificateFormatError,
    Checks,
    Record,
    dec_int,
    dec_poly,
    dec_poly_list,
    dec_prime,
    dec_small,
    enc_int,
    enc_poly,
    register,
    require_keys,
)


@register
@dataclass(frozen=True)
class CharacteristicCertificate(Record):
    kind = "Characteristic"

    n: int
    primes: tuple[int, ...]
    witnesses: tuple[int, ...]
    coefficients: tuple[int, ...]

    @property
    def product(self) -> int:
        return math.prod(self.primes)

    def to_payload(self) -> dict:
        return {
            "n": enc_int(self.n),
            "primes": [enc_int(p) for p in self.primes],
            "witnesses": [enc_int(z) for z in self.witnesses],
            "coefficients": [enc_int(c) for c in self.coefficients],
        }

    @classmethod
    def from_payload(cls, d: dict) -> "CharacteristicCertificate":
        require_keys(d, ("n", "primes", "witnesses", "coefficients"))
        n = dec_int(d["n"])
        if n < 2:
            raise CertificateFormatError("n must exceed 1")
        primes = tuple(dec_int(x) for x in d["primes"])
        wit = tuple(dec_int(x) for x in d["witnesses"])
        coeffs = tuple(dec_int(x) for x in d["coefficients"])
        if len(wit) != len(coeffs) or not wit:
            raise CertificateFormatError("need one coefficient per witness")
        return cls(n, primes, wit, coeffs)

    def run_checks(self, c: Checks) -> None:
        n = self.n
        c.add("primes are prime", all(is_prime(p) for p in self.primes))
        c.add("primes ascending and distinct", list(self.primes) == sorted(set(self.primes)))
        c.add("p-1 divides n-1 for every listed prime", all((n - 1) % (p - 1) == 0 for p in self.primes))
        c.add("primes are exactly those with p-1 | n-1", lambda: self.primes == n_primes(n))
        c.add("witnesses distinct and >= 2", len(set(self.witnesses)) == len(self.witnesses)
              and all(z >= 2 for z in self.witnesses))
        c.add("sum c_j (z_j^n - z_j) equals the product",
              lambda: sum(cj * (z ** n - z) for cj, z in zip(self.coefficients, self.witnesses))
              == self.product)


def characteristic_certificate(n: int) -> CharacteristicCertificate:
    """Accumulate gcd(z^n - z) over primes z = 2, 3, 5, ... until it equals
    the product of the primes p with p - 1 | n - 1."""
    if n < 2:
        raise ValueError(f"n must exceed 1, got {n}")
    primes = n_primes(n)
    target = math.prod(primes)
    z, g, witnesses = 1, 0, []
    while g != target:
        z = next_prime(z)
        witnesses.append(z)
        g = math.gcd(g, z ** n - z)
    w = xgcd_multi([z ** n - z for z in witnesses])
    return CharacteristicCertificate(n, primes, tuple(witnesses), w.coefficients)


@register
@dataclass(frozen=True)
class ReductionCertificate(Record):
    kind = "Reduction"

    n: int
    p: int
    k: int
    polys: tuple[FpPoly, ...]
    coefficients: tuple[FpPoly, ...]
    g: FpPoly
    cofactor: FpPoly

    @property
    def target(self) -> int:
        return self.p ** self.k

    def target_poly(self) -> FpPoly:
        T = FpPoly.T(self.p)
        return FpPoly.monomial(self.p, self.target) - T

    def to_payload(self) -> dict:
        return {
            "n": enc_int(self.n),
            "p": self.p,
            "k": self.k,
            "polys": [enc_poly(f) for f in self.polys],
            "coefficients": [enc_poly(u) for u in self.coefficients],
            "g": enc_poly(self.g),
            "cofactor": enc_poly(self.cofactor),
        }

    @classmethod
    def from_payload(cls, d: dict) -> "ReductionCertificate":
        require_keys(d, ("n", "p", "k", "polys", "coefficients", "g", "cofactor"))
        n = dec_int(d["n"])
        p = dec_prime(d["p"])
        k = dec_small(d["k"], 1)
        polys = tuple(dec_poly_list(p, d["polys"]))
        coeffs = tuple(dec_poly_list(p, d["coefficients"]))
        if len(polys) != len(coeffs) or not polys:
            raise CertificateFormatError("need one coefficient per witness polynomial")
        return cls(n, p, k, polys, coeffs, dec_poly(p, d["g"]), dec_poly(p, d["cofactor"]))

    def run_checks(self, c: Checks) -> None:
        n, p = self.n, self.p
        c.add("n > 1 and p-1 divides n-1", n > 1 and (n - 1) % (p - 1) == 0)
        c.add("k is the lcm of all d with p^d-1 | n-1", lambda: get_exponent(p, n) == self.k)
        c.add("witnesses monic of positive degree",
              all(f.is_monic() and f.degree >= 1 for f in self.polys))
        c.add("g monic", self.g.is_monic())

        def combination() -> bool:
            acc = FpPoly.zero(p)
            for u, f in zip(self.coefficients, self.polys):
                acc = acc + u * (f ** n - f)
            return acc == self.g

        c.add("sum u_i (f_i^n - f_i) equals g", combination)
        c.add("g times cofactor equals T^(p^k) - T", lambda: self.g * self.cofactor == self.target_poly())


def _witness_candidates(p: int, max_degree: int):
    for d in range(1, max_degree + 1):
        yield from monic_polys(p, d)


def reduction_certificate(
    n: int,
    p: int,
    *,
    full: bool = False,
    witnesses: Sequence[FpPoly] | None = None,
) -> ReductionCertificate:
    """Partial-gcd search over monic witnesses T, T+1, ... in (degree, coefficient)
    order, stopping once the running gcd divides T^(p^k) - T.

    With ``full=True`` the chain continues until the running gcd equals the
    gcd over all f of degree < n (the product from :func:`gform_product`);
    this can differ from the early stop, e.g. for n = 22, p = 2 where
    T^22 - T alone already divides T^64 - T. An explicit ``witnesses`` list
    skips the search and certifies that list.
    """
    if not is_prime(p) or n < 2 or (n - 1) % (p - 1):
        raise ValueError(f"Invalid arguments: need prime p with p-1 | n-1, got n={n}, p={p}")
    k = get_exponent(p, n)
    T = FpPoly.T(p)
    target = FpPoly.monomial(p, p ** k) - T
    if witnesses is not None:
        chosen = [f if isinstance(f, FpPoly) else FpPoly.parse(p, f) for f in witnesses]
        if not chosen or any(f.p != p or not f.is_monic() or f.degree < 1 for f in chosen):
            raise ValueError("witnesses must be monic of positive degree over GF(p)")
        g = poly_xgcd_multi([f ** n - f for f in chosen])[0]
        if not g.divides(target):
            raise ValueError(f"gcd {g} of the given witnesses does not divide T^{p ** k}-T")
    else:
        chosen, g = _search(n, p, k, target, gform_product(p, n) if full else None)
    values = [f ** n - f for f in chosen]
    gcd, coeffs = poly_xgcd_multi(values)
    assert gcd == g, "partial gcd disagrees with the extended gcd"
    cofactor, rem = divmod(target, g)
    assert rem.is_zero()
    return ReductionCertificate(n, p, k, tuple(chosen), tuple(coeffs), g, cofactor)


def _search(n, p, k, target, stop_at):
    T = FpPoly.T(p)
    chosen: list[FpPoly] = []
    g: FpPoly | None = None
    for f in _witness_candidates(p, n - 1):
        if g is None:
            g = (f ** n - f).monic()
        else:
            r = (powmod(f, n, g) - f) % g
            if r.is_zero():
                continue
            g = poly_gcd(g, r)
        chosen.append(f)
        if stop_at is not None:
            if g == stop_at:
                return chosen, g
        elif powmod(T, p ** k, g) == T % g:
            return chosen, g
    raise RuntimeError(f"witness search exhausted for n={n}, p={p}")


def gform_product(p: int, n: int) -> FpPoly:
    """Product of the monic irreducibles of degree d with p^d - 1 | n - 1."""
    if not is_prime(p) or n < 2 or (n - 1) % (p - 1):
        raise ValueError(f"need prime p with p-1 | n-1, got n={n}, p={p}")
    acc = FpPoly.const(p, 1)
    d = 1
    while p ** d <= n:
        if (n - 1) % (p ** d - 1) == 0:
            for f in monic_irreducibles(p, d):
                acc = acc * f
        d += 1
    return acc
