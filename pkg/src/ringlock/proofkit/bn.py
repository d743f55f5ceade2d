"""The b_n / B_n engine.

Fix a ring element a with g(a) = 0 (g monic irreducible of degree m >= 2)
and any b. Two recursions are supported:

* ``b_{n+1} = b_n a - f_n(a) b_n`` with f_0 = T (modes monomial, affine,
  custom); ``W_{p,k,f_n}`` turns b_{n+1} = 0 into b_n = 0 for n >= 1;
* ``b_{n+1} = a b_n - b_n a - f_n(a) b_n`` over all f of degree < m
  starting with f_0 = 0 (mode generalcase); here ``W_{p,k,T-f_n}`` is used.

Each b_n equals sum lambda_ij a^i b a^j, encoded as B_n = sum lambda_ij X^i Y^j
in GF(p)[X, Y]. B_n is computed reduced mod (g(X), g(Y)); independently, b_n
is computed in the free ring on letters a, b by rewriting a^m with g(a) = 0,
and the two must agree term by term.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

from ..fppoly import BivariatePoly, FpPoly, bivariate_reduce, is_irreducible, poly_gcd
from ..freering import FreePoly
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

MODES = ("monomial", "affine", "custom", "generalcase")


class NoTermination(RuntimeError):
    """The enumeration ran out before B_n reached zero."""

    def __init__(self, p: int, k: int, g: FpPoly, mode: str, steps: int):
        self.p, self.k, self.g, self.mode, self.steps = p, k, g, mode, steps
        super().__init__(f"B_n did not vanish within {steps} steps for p={p}, k={k}, g={g}, mode={mode}")


def make_enumeration(p: int, k: int, g: FpPoly, mode: str, custom: Sequence[FpPoly] | None = None) -> list[FpPoly]:
    m = int(g.degree)
    T = FpPoly.T(p)
    if mode == "monomial":
        return [FpPoly.monomial(p, p ** i) for i in range(max(k, m))]
    if mode == "affine":
        return [T + u for u in range(p)]
    if mode == "custom":
        if not custom:
            raise ValueError("custom enumeration needs a polynomial list")
        fs = [f if isinstance(f, FpPoly) else FpPoly.parse(p, f) for f in custom]
        if fs[0] != T:
            raise ValueError("enumeration must start with T")
        return fs
    if mode == "generalcase":
        out = []
        for v in range(p ** m):
            digits = []
            for _ in range(m):
                v, d = divmod(v, p)
                digits.append(d)
            out.append(FpPoly(p, digits))
        return out
    raise ValueError(f"unknown enumeration mode {mode!r}")


def _step_factor(mode: str, f: FpPoly) -> BivariatePoly:
    p = f.p
    X = BivariatePoly(p, {(1, 0): 1})
    Y = BivariatePoly(p, {(0, 1): 1})
    if mode == "generalcase":
        return X - Y - BivariatePoly.in_x(f)
    return Y - BivariatePoly.in_x(f)


def b_sequence(g: FpPoly, mode: str, fs: Sequence[FpPoly], stop_at_zero: bool = True) -> list[BivariatePoly]:
    """B_0 = 1 and B_{n+1} = factor(f_n) * B_n, each reduced mod (g(X), g(Y))."""
    B = [BivariatePoly.one(g.p)]
    for f in fs:
        if stop_at_zero and B[-1].is_zero():
            break
        B.append(bivariate_reduce(_step_factor(mode, f) * B[-1], g, g))
    return B


# -- noncommutative route ------------------------------------------------------

def _reduce_a_run(e: int, g: FpPoly) -> dict[int, int]:
    """a^e rewritten with a^m -> a^m - g(a) until every exponent is below m."""
    p, m = g.p, int(g.degree)
    tail = {i: (-c) % p for i, c in enumerate(g.coeffs[:-1]) if c}
    acc = {e: 1}
    while True:
        top = max((i for i, c in acc.items() if c and i >= m), default=None)
        if top is None:
            return {i: c for i, c in acc.items() if c}
        c = acc.pop(top)
        for i, t in tail.items():
            key = top - m + i
            acc[key] = (acc.get(key, 0) + c * t) % p


def _normalize(f: FreePoly, g: FpPoly) -> FreePoly:
    """Rewrite every word a^i b a^j so that i, j < deg g."""
    cache: dict[int, dict[int, int]] = {}

    def run(e: int) -> dict[int, int]:
        if e not in cache:
            cache[e] = _reduce_a_run(e, g)
        return cache[e]

    out: dict[tuple[str, ...], int] = {}
    for w, c in f.terms.items():
        if w.count("b") != 1 or any(x not in ("a", "b") for x in w):
            raise ValueError(f"word {w} is not of the form a^i b a^j")
        i = w.index("b")
        j = len(w) - i - 1
        for s, x in run(i).items():
            for t, y in run(j).items():
                key = ("a",) * s + ("b",) + ("a",) * t
                out[key] = out.get(key, 0) + c * x * y
    return FreePoly(out, f.modulus)


def _poly_in_a(f: FpPoly) -> FreePoly:
    return FreePoly({("a",) * e: c for e, c in enumerate(f.coeffs) if c}, f.p)


def nc_sequence(g: FpPoly, mode: str, fs: Sequence[FpPoly], steps: int) -> list[FreePoly]:
    """b_0 = b and the recursion of ``mode``, normalised after each step."""
    p = g.p
    a = FreePoly.var("a", p)
    bs = [FreePoly.var("b", p)]
    for f in fs[:steps]:
        bn = bs[-1]
        if mode == "generalcase":
            nxt = a * bn - bn * a - _poly_in_a(f) * bn
        else:
            nxt = bn * a - _poly_in_a(f) * bn
        bs.append(_normalize(nxt, g))
    return bs


def as_bivariate(f: FreePoly, p: int) -> BivariatePoly:
    terms = {}
    for w, c in f.terms.items():
        i = w.index("b")
        terms[(i, len(w) - i - 1)] = c
    return BivariatePoly(p, terms)


def obligations(mode: str, fs: Sequence[FpPoly], m: int) -> list[FpPoly]:
    """The W_{p,k,f} needed to walk b_m = 0 down to b_1 = 0."""
    T = FpPoly.T(fs[0].p)
    if mode == "generalcase":
        return [T - fs[n] for n in range(1, m)]
    return list(fs[1:m])


def _unit_factors(mode: str, fs: Sequence[FpPoly], m: int) -> list[FpPoly]:
    # the element that must be invertible mod g for each down step
    T = FpPoly.T(fs[0].p)
    if mode == "generalcase":
        return list(fs[1:m])
    return [f - T for f in fs[1:m]]


# -- record ---------------------------------------------------------------------

def _enc_biv(B: BivariatePoly) -> list[list[int]]:
    return [[i, j, c] for i, j, c in B.sorted_terms()]


def _dec_biv(p: int, arr: Any, m: int) -> BivariatePoly:
    if not isinstance(arr, list):
        raise CertificateFormatError("bivariate polynomial must be a list of [i, j, c]")
    terms = {}
    prev = None
    for t in arr:
        if (not isinstance(t, list) or len(t) != 3
                or any(isinstance(x, bool) or not isinstance(x, int) for x in t)):
            raise CertificateFormatError(f"bad bivariate term {t!r}")
        i, j, c = t
        if not (0 <= i < m and 0 <= j < m and 0 < c < p):
            raise CertificateFormatError(f"bivariate term {t!r} not reduced")
        if prev is not None and (i, j) <= prev:
            raise CertificateFormatError("bivariate terms must be strictly ascending")
        prev = (i, j)
        terms[(i, j)] = c
    return BivariatePoly(p, terms)


@register
@dataclass(frozen=True)
class BnRecord(Record):
    kind = "Bn"

    p: int
    k: int
    g: FpPoly
    mode: str
    enumeration: tuple[FpPoly, ...]
    B: tuple[BivariatePoly, ...]
    obligations: tuple[FpPoly, ...]

    @property
    def m(self) -> int:
        """The terminating index: B_m = 0."""
        return len(self.B) - 1

    def to_payload(self) -> dict:
        return {
            "p": self.p,
            "k": self.k,
            "g": enc_poly(self.g),
            "mode": self.mode,
            "enumeration": [enc_poly(f) for f in self.enumeration],
            "B": [_enc_biv(b) for b in self.B],
            "obligations": [enc_poly(f) for f in self.obligations],
        }

    @classmethod
    def from_payload(cls, d: dict) -> "BnRecord":
        require_keys(d, ("p", "k", "g", "mode", "enumeration", "B", "obligations"))
        p = dec_prime(d["p"])
        k = dec_small(d["k"], 1)
        g = dec_poly(p, d["g"])
        if d["mode"] not in MODES:
            raise CertificateFormatError(f"unknown mode {d['mode']!r}")
        if g.degree < 1:
            raise CertificateFormatError("g must have positive degree")
        m = int(g.degree)
        if not isinstance(d["B"], list) or len(d["B"]) < 2:
            raise CertificateFormatError("B must list B_0 .. B_m")
        B = tuple(_dec_biv(p, x, m) for x in d["B"])
        return cls(p, k, g, d["mode"], tuple(dec_poly_list(p, d["enumeration"])), B,
                   tuple(dec_poly_list(p, d["obligations"])))

    def run_checks(self, c: Checks) -> None:
        p, k, g, mode = self.p, self.k, self.g, self.mode
        fs = self.enumeration
        c.add("g monic of degree >= 2 dividing k", g.is_monic() and g.degree >= 2 and k % int(g.degree) == 0)
        c.add("g irreducible", lambda: is_irreducible(g))
        T = FpPoly.T(p)
        first = FpPoly.zero(p) if mode == "generalcase" else T
        c.add("enumeration starts correctly", len(fs) >= self.m and fs[0] == first)
        if mode in ("monomial", "affine"):
            c.add(f"enumeration is the {mode} sequence",
                  lambda: list(fs) == make_enumeration(p, k, g, mode)[:len(fs)])
        if mode == "generalcase":
            c.add("enumeration has degree < deg g and no repeats",
                  all(f.degree < g.degree for f in fs) and len(set(fs)) == len(fs))
        c.add("B_0 = 1", self.B[0] == BivariatePoly.one(p))
        c.add("B_{n+1} = factor(f_n) * B_n reduced",
              lambda: all(bivariate_reduce(_step_factor(mode, f) * b, g, g) == nxt
                          for f, b, nxt in zip(fs, self.B, self.B[1:])))
        c.add("B_m = 0", self.B[-1].is_zero())
        c.add("B_n != 0 for n < m", all(not b.is_zero() for b in self.B[:-1]))
        c.add("obligations match the enumeration", lambda: list(self.obligations) == obligations(mode, fs, self.m))
        c.add("down steps use units mod g",
              lambda: all(poly_gcd(u, g) == FpPoly.const(p, 1) for u in _unit_factors(mode, fs, self.m)))
        c.add("noncommutative b_n agrees with B_n",
              lambda: [as_bivariate(b, p) for b in nc_sequence(g, mode, fs, self.m)] == list(self.B))


def bn_certificate(p: int, k: int, g: FpPoly, enumeration: str | Sequence[FpPoly] = "monomial") -> BnRecord:
    """Run the recursion until B_n vanishes; raises NoTermination otherwise.

    ``enumeration`` is a mode name or an explicit list starting with T.
    """
    if isinstance(enumeration, str):
        mode, custom = enumeration, None
    else:
        mode, custom = "custom", list(enumeration)
    if g.p != p or not g.is_monic() or g.degree < 2:
        raise ValueError("g must be monic over GF(p) of degree >= 2")
    if k % int(g.degree):
        raise ValueError(f"deg g = {g.degree} does not divide k = {k}")
    if not is_irreducible(g):
        raise ValueError(f"{g} is reducible")
    fs = make_enumeration(p, k, g, mode, custom)
    B = b_sequence(g, mode, fs)
    if not B[-1].is_zero():
        raise NoTermination(p, k, g, mode, len(fs))
    m = len(B) - 1
    nc = nc_sequence(g, mode, fs, m)
    if [as_bivariate(b, p) for b in nc] != B:
        raise ArithmeticError("noncommutative and commutative computations disagree")
    used = tuple(fs[:m])
    return BnRecord(p, k, g, mode, used, tuple(B), tuple(obligations(mode, fs, m)))
