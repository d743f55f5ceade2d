"""Univariate polynomials over GF(p), extension-field elements, irreducible
enumeration and the bivariate reduction used to encode b_n sequences.

Coefficients are stored ascending, as a tuple of ints in ``range(p)`` with no
trailing zeros; the zero polynomial is the empty tuple.

Dense products go through Kronecker substitution (pack into one big int,
multiply, unpack), so high powers such as ``(T^2+T+1)^2023`` stay cheap.
Over GF(2) division and gcd run on int bit-vectors; for odd p, long
division of large operands is vectorised with numpy.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .arith import is_prime

NEG_INF = -math.inf

# ascending-coefficient tuples <-> GF(2) int bit-vectors
_TO_ASCII = bytes.maketrans(b"\x00\x01", b"01")
_FROM_ASCII = bytes.maketrans(b"01", b"\x00\x01")

_SCHOOLBOOK_LIMIT = 1024
_NUMPY_LIMIT = 48


def _trim(c: list[int]) -> list[int]:
    while c and not c[-1]:
        c.pop()
    return c


def _to_bits(c: Sequence[int]) -> int:
    if not c:
        return 0
    return int(bytes(reversed(c)).translate(_TO_ASCII), 2)


def _from_bits(x: int) -> list[int]:
    if not x:
        return []
    return list(bin(x)[:1:-1].encode().translate(_FROM_ASCII))


# -- GF(2) on ints ---------------------------------------------------------

def _g2_mul(a: int, b: int) -> int:
    if a.bit_count() > b.bit_count():
        a, b = b, a
    r = 0
    while a:
        low = a & -a
        r ^= b << (low.bit_length() - 1)
        a ^= low
    return r


def _g2_square(a: int) -> int:
    if not a:
        return 0
    return int("0".join(bin(a)[2:]), 2)


def _g2_divmod(a: int, b: int) -> tuple[int, int]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db = b.bit_length() - 1
    q = 0
    while True:
        s = a.bit_length() - 1 - db
        if s < 0:
            return q, a
        a ^= b << s
        q |= 1 << s


def _g2_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _g2_divmod(a, b)[1]
    return a


def _g2_xgcd(a: int, b: int) -> tuple[int, int, int]:
    r0, r1, s0, s1, t0, t1 = a, b, 1, 0, 0, 1
    while r1:
        q, r = _g2_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 ^ _g2_mul(q, s1)
        t0, t1 = t1, t0 ^ _g2_mul(q, t1)
    return r0, s0, t0


# -- dense helpers for arbitrary p ----------------------------------------

def _mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    if p == 2:
        return _from_bits(_g2_mul(_to_bits(a), _to_bits(b)))
    if len(a) * len(b) <= _SCHOOLBOOK_LIMIT:
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return _trim([v % p for v in out])
    bound = (p - 1) ** 2 * min(len(a), len(b))
    width = 2 if bound < 1 << 16 else 4 if bound < 1 << 32 else 8
    fmt = {2: "H", 4: "I", 8: "Q"}[width]
    x = int.from_bytes(np.asarray(a, dtype=f"<u{width}").tobytes(), "little")
    y = int.from_bytes(np.asarray(b, dtype=f"<u{width}").tobytes(), "little")
    n = len(a) + len(b) - 1
    raw = (x * y).to_bytes(n * width, "little")
    vals = memoryview(raw).cast(fmt).tolist()
    return _trim([v % p for v in vals])


def _divmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], list(a)
    if p == 2:
        q, r = _g2_divmod(_to_bits(a), _to_bits(b))
        return _from_bits(q), _from_bits(r)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    if len(b) > _NUMPY_LIMIT or len(a) - db > _NUMPY_LIMIT:
        ra = np.array(a, dtype=np.int64)
        rb = np.array(b, dtype=np.int64)
        q = np.zeros(len(a) - db, dtype=np.int64)
        for i in range(len(a) - 1, db - 1, -1):
            c = int(ra[i]) * inv % p
            if c:
                q[i - db] = c
                seg = ra[i - db:i + 1]
                seg -= c * rb
                seg %= p
        return _trim(q.tolist()), _trim(ra[:db].tolist())
    r = list(a)
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = r[i] * inv % p
        if c:
            q[i - db] = c
            base = i - db
            for j in range(db + 1):
                r[base + j] = (r[base + j] - c * b[j]) % p
    return _trim(q), _trim(r[:db])


def _sub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _add(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x + y) % p for x, y in zip(a, b)])


class FpPoly:
    """Immutable polynomial in GF(p)[T]."""

    __slots__ = ("p", "coeffs", "_hash")

    def __init__(self, p: int, coeffs: Iterable[int] = (), *, _canonical: bool = False):
        if _canonical:
            c = tuple(coeffs)
        else:
            if p < 2:
                raise ValueError(f"characteristic must be prime, got {p}")
            c = tuple(_trim([int(x) % p for x in coeffs]))
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("FpPoly is immutable")

    # constructors
    @classmethod
    def _raw(cls, p: int, coeffs: Sequence[int]) -> "FpPoly":
        return cls(p, coeffs, _canonical=True)

    @classmethod
    def zero(cls, p: int) -> "FpPoly":
        return cls._raw(p, ())

    @classmethod
    def const(cls, p: int, c: int) -> "FpPoly":
        return cls(p, (c,))

    @classmethod
    def T(cls, p: int) -> "FpPoly":
        return cls._raw(p, (0, 1))

    @classmethod
    def monomial(cls, p: int, e: int, c: int = 1) -> "FpPoly":
        return cls(p, [0] * e + [c])

    @classmethod
    def parse(cls, p: int, text: str | Sequence[int]) -> "FpPoly":
        return parse_poly(p, text)

    # basic properties
    @property
    def degree(self) -> int | float:
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def monic(self) -> "FpPoly":
        if not self.coeffs or self.coeffs[-1] == 1:
            return self
        return self.scale(pow(self.coeffs[-1], -1, self.p))

    def scale(self, c: int) -> "FpPoly":
        return FpPoly(self.p, [c * x for x in self.coeffs])

    def sort_key(self) -> tuple:
        """Order by degree, then lexicographically from the top coefficient."""
        return (len(self.coeffs), tuple(reversed(self.coeffs)))

    def _check(self, other: "FpPoly") -> None:
        if other.p != self.p:
            raise ValueError(f"characteristic mismatch: {self.p} vs {other.p}")

    def _coerce(self, other) -> "FpPoly":
        if isinstance(other, FpPoly):
            self._check(other)
            return other
        if isinstance(other, int):
            return FpPoly.const(self.p, other)
        return NotImplemented

    # arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FpPoly._raw(self.p, _add(self.coeffs, other.coeffs, self.p))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FpPoly._raw(self.p, _sub(self.coeffs, other.coeffs, self.p))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return FpPoly._raw(self.p, tuple((-x) % self.p for x in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FpPoly._raw(self.p, _mul(self.coeffs, other.coeffs, self.p))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        if self.p == 2:
            base, acc = _to_bits(self.coeffs), 1
            for bit in bin(e)[2:]:
                acc = _g2_square(acc)
                if bit == "1":
                    acc = _g2_mul(acc, base)
            return FpPoly._raw(2, _from_bits(acc))
        result = FpPoly.const(self.p, 1)
        for bit in bin(e)[2:]:
            result = result * result
            if bit == "1":
                result = result * self
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        q, r = _divmod(self.coeffs, other.coeffs, self.p)
        return FpPoly._raw(self.p, q), FpPoly._raw(self.p, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other: "FpPoly") -> bool:
        self._check(other)
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    def __eq__(self, other):
        if isinstance(other, FpPoly):
            return self.p == other.p and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == FpPoly.const(self.p, other).coeffs
        return NotImplemented

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.p, self.coeffs))
            object.__setattr__(self, "_hash", h)
        return h

    def __bool__(self):
        return bool(self.coeffs)

    def __call__(self, x):
        """Evaluate by Horner's rule at an int, an FpPoly or anything ring-like."""
        if isinstance(x, FpPoly):
            return compose(self, x)
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc % self.p if isinstance(acc, int) else acc

    def __repr__(self):
        return f"FpPoly({self.p}, {list(self.coeffs)})"

    def __str__(self):
        return self.to_str()

    def to_str(self, var: str = "T") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[e]
            if not c:
                continue
            if e == 0:
                mono = str(c)
            else:
                power = var if e == 1 else f"{var}^{e}"
                mono = power if c == 1 else f"{c}*{power}"
            parts.append(mono)
        return "+".join(parts)

    def to_list(self) -> list[int]:
        return list(self.coeffs)


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*(?:([A-Za-z])\s*(?:\^\s*(\d+))?)?")


def parse_poly(p: int, text: str | Sequence[int]) -> FpPoly:
    """Parse ``"[c0,c1,...]"``, a coefficient list, or human syntax like
    ``"T^3+2T+1"`` / ``"T^3 + 2*T + 1"``. Any single-letter variable is accepted."""
    if not isinstance(text, str):
        return FpPoly(p, text)
    s = text.strip()
    if s.startswith("["):
        body = s.strip("[] ")
        return FpPoly(p, [int(x) for x in body.split(",") if x.strip()])
    s = s.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    coeffs: dict[int, int] = {}
    pos = 0
    var = None
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial {text!r} at {s[pos:]!r}")
        sign, num, v, exp = m.groups()
        if not num and not v:
            raise ValueError(f"cannot parse polynomial {text!r} at {s[pos:]!r}")
        if pos > 0 and not sign:
            raise ValueError(f"missing operator in {text!r}")
        if v is not None:
            if var is None:
                var = v
            elif v != var:
                raise ValueError(f"mixed variables {var!r} and {v!r} in {text!r}")
        c = int(num) if num else 1
        if sign == "-":
            c = -c
        e = (int(exp) if exp else 1) if v else 0
        coeffs[e] = coeffs.get(e, 0) + c
        pos = m.end()
    top = max(coeffs)
    return FpPoly(p, [coeffs.get(i, 0) for i in range(top + 1)])


# -- gcd machinery ---------------------------------------------------------

def _xgcd_np(a: Sequence[int], b: Sequence[int], p: int):
    """Extended Euclid on coefficient lists for odd p."""
    r0, r1 = list(a), list(b)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = _divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _sub(s0, _mul(q, s1, p), p)
        t0, t1 = t1, _sub(t0, _mul(q, t1, p), p)
    return r0, s0, t0


def poly_xgcd(a: FpPoly, b: FpPoly) -> tuple[FpPoly, FpPoly, FpPoly]:
    """Return ``(g, u, v)`` with ``u*a + v*b == g`` and g monic (or zero)."""
    a._check(b)
    p = a.p
    if p == 2:
        g, u, v = _g2_xgcd(_to_bits(a.coeffs), _to_bits(b.coeffs))
        return (FpPoly._raw(2, _from_bits(g)), FpPoly._raw(2, _from_bits(u)),
                FpPoly._raw(2, _from_bits(v)))
    g, u, v = _xgcd_np(a.coeffs, b.coeffs, p)
    G, U, V = FpPoly._raw(p, g), FpPoly._raw(p, u), FpPoly._raw(p, v)
    if G and G.lc != 1:
        inv = pow(G.lc, -1, p)
        G, U, V = G.scale(inv), U.scale(inv), V.scale(inv)
    return G, U, V


def poly_gcd(a: FpPoly, b: FpPoly) -> FpPoly:
    a._check(b)
    if a.p == 2:
        return FpPoly._raw(2, _from_bits(_g2_gcd(_to_bits(a.coeffs), _to_bits(b.coeffs))))
    r0, r1 = list(a.coeffs), list(b.coeffs)
    while r1:
        r0, r1 = r1, _divmod(r0, r1, a.p)[1]
    return FpPoly._raw(a.p, r0).monic()


def poly_xgcd_multi(polys: Sequence[FpPoly]) -> tuple[FpPoly, list[FpPoly]]:
    """Extended gcd of several polynomials, folding first/rest recursively.

    Returns the monic gcd and coefficients ``u_i`` with ``sum(u_i*f_i) == gcd``.
    """
    polys = list(polys)
    if not polys:
        raise ValueError("poly_xgcd_multi needs at least one polynomial")
    p = polys[0].p
    for f in polys:
        polys[0]._check(f)
    if all(f.is_zero() for f in polys):
        raise ValueError("gcd of zero polynomials is undefined")
    return _xgcd_multi(polys, p)


def _xgcd_multi(polys: list[FpPoly], p: int) -> tuple[FpPoly, list[FpPoly]]:
    if len(polys) == 1:
        f = polys[0]
        if f.is_zero():
            return f, [FpPoly.const(p, 1)]
        return f.monic(), [FpPoly.const(p, pow(f.lc, -1, p))]
    if len(polys) == 2:
        g, u, v = poly_xgcd(polys[0], polys[1])
        return g, [u, v]
    first, rest = polys[0], polys[1:]
    rest_gcd, vs = _xgcd_multi(rest, p)
    g, u, v = poly_xgcd(first, rest_gcd)
    return g, [u] + [v * x for x in vs]


def powmod(f: FpPoly, e: int, m: FpPoly) -> FpPoly:
    """``f**e mod m`` by square-and-multiply."""
    f._check(m)
    if m.is_zero():
        raise ZeroDivisionError("modulus is zero")
    if m.p == 2:
        mb = _to_bits(m.coeffs)
        base = _g2_divmod(_to_bits(f.coeffs), mb)[1]
        acc = _g2_divmod(1, mb)[1]
        for bit in bin(e)[2:]:
            acc = _g2_divmod(_g2_square(acc), mb)[1]
            if bit == "1":
                acc = _g2_divmod(_g2_mul(acc, base), mb)[1]
        return FpPoly._raw(2, _from_bits(acc))
    base = f % m
    acc = FpPoly.const(m.p, 1) % m
    for bit in bin(e)[2:]:
        acc = (acc * acc) % m
        if bit == "1":
            acc = (acc * base) % m
    return acc


def mod_t_n_minus_t(f: FpPoly, N: int) -> FpPoly:
    """``f mod (T^N - T)`` for N >= 2 by folding T^(N+j) onto T^(1+j)."""
    if N < 2:
        raise ValueError("N must be at least 2")
    c = f.coeffs
    if len(c) <= N:
        return f
    if f.p == 2:
        x = _to_bits(c)
        mask = (1 << N) - 1
        while x >> N:
            x = (x & mask) ^ ((x >> N) << 1)
        return FpPoly._raw(2, _from_bits(x))
    out = list(c)
    for e in range(len(out) - 1, N - 1, -1):
        v = out[e]
        if v:
            out[e] = 0
            t = e - N + 1
            out[t] = (out[t] + v) % f.p
    return FpPoly._raw(f.p, _trim(out[:N]))


def compose(outer: FpPoly, inner: FpPoly) -> FpPoly:
    """``outer(inner(T))`` expanded."""
    outer._check(inner)
    acc = FpPoly.zero(outer.p)
    for c in reversed(outer.coeffs):
        acc = acc * inner + c
    return acc


poly_compose = compose


def poly_arith(lhs: FpPoly, rhs: FpPoly, kind: str):
    if kind == "add":
        return lhs + rhs
    if kind == "sub":
        return lhs - rhs
    if kind == "mul":
        return lhs * rhs
    if kind == "divrem":
        return divmod(lhs, rhs)
    raise ValueError(f"unknown operation {kind!r}")


# -- enumeration and irreducibility ---------------------------------------

def monic_polys(p: int, degree: int) -> Iterator[FpPoly]:
    """All monic polynomials of a given degree in (lexicographic from the
    top coefficient) order, e.g. T^2, T^2+1, T^2+T, T^2+T+1 over GF(2)."""
    for low in itertools.product(range(p), repeat=degree):
        yield FpPoly._raw(p, tuple(reversed(low)) + (1,))


def monic_polys_upto(p: int, max_degree: int, min_degree: int = 1) -> Iterator[FpPoly]:
    for d in range(min_degree, max_degree + 1):
        yield from monic_polys(p, d)


IRREDUCIBLE_SEARCH_BUDGET = 10 ** 6


def is_irreducible(f: FpPoly) -> bool:
    """Exhaustive search for a monic factor of degree <= deg(f)/2."""
    if f.is_constant():
        raise ValueError("irreducibility of a constant is undefined")
    d = len(f.coeffs) - 1
    if d == 1:
        return True
    if f.coeffs[0] == 0:
        return False
    if sum(f.p ** e for e in range(1, d // 2 + 1)) > IRREDUCIBLE_SEARCH_BUDGET:
        raise ValueError(f"degree {d} over GF({f.p}) exceeds the search budget")
    for h in monic_polys_upto(f.p, d // 2):
        if (f % h).is_zero():
            return False
    return True


def monic_irreducibles(p: int, degree: int) -> list[FpPoly]:
    return [f for f in monic_polys(p, degree) if is_irreducible(f)]


def monic_irreducibles_dividing(p: int, k: int) -> list[FpPoly]:
    """All monic irreducibles whose degree divides k, sorted by
    (degree, top-down coefficients)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if k < 1:
        raise ValueError("k must be positive")
    out: list[FpPoly] = []
    for d in range(1, k + 1):
        if k % d == 0:
            out.extend(monic_irreducibles(p, d))
    return out


def affine_substitute(g: FpPoly, u: int, v: int) -> FpPoly:
    """``g(u*T + v)`` made monic."""
    return compose(g, FpPoly(g.p, (v, u))).monic()


def reciprocal_poly(g: FpPoly) -> FpPoly:
    """``T^deg(g) * g(1/T)`` made monic; requires g(0) != 0."""
    return FpPoly(g.p, reversed(g.coeffs)).monic()


def reduce_by_symmetry(polys: Sequence[FpPoly], reciprocal: bool = True) -> list[FpPoly]:
    """Keep one representative per class of the equivalence generated by
    affine substitutions ``w*g(u*T+v)`` and, unless ``reciprocal`` is False,
    reciprocals. Linear polynomials are dropped.

    The representative is the smallest member of its class that was given.
    Over GF(3) the cubics form two affine classes but a single class once
    reciprocals are allowed.
    """
    given = sorted({f.monic() for f in polys if f.degree >= 2}, key=FpPoly.sort_key)
    seen: set[FpPoly] = set()
    reps = []
    for f in given:
        if f in seen:
            continue
        reps.append(f)
        orbit = {f}
        frontier = [f]
        while frontier:
            g = frontier.pop()
            images = [affine_substitute(g, u, v) for u in range(1, g.p) for v in range(g.p)]
            if reciprocal and g.coeffs[0]:
                images.append(reciprocal_poly(g))
            for h in images:
                if h not in orbit:
                    orbit.add(h)
                    frontier.append(h)
        seen |= orbit
    return reps


# -- extension fields -------------------------------------------------------

@dataclass(frozen=True)
class FqElement:
    """Element of GF(p)[Z]/(modulus) for a monic irreducible modulus."""

    modulus: FpPoly
    value: FpPoly

    @property
    def p(self) -> int:
        return self.modulus.p

    @classmethod
    def of(cls, modulus: FpPoly, value) -> "FqElement":
        if isinstance(value, int):
            value = FpPoly.const(modulus.p, value)
        return cls(modulus, value % modulus)

    def _other(self, other) -> FpPoly:
        if isinstance(other, FqElement):
            if other.modulus != self.modulus:
                raise ValueError("elements of different fields")
            return other.value
        if isinstance(other, int):
            return FpPoly.const(self.p, other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else FqElement(self.modulus, (self.value + o) % self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else FqElement(self.modulus, (self.value - o) % self.modulus)

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else FqElement(self.modulus, (o - self.value) % self.modulus)

    def __neg__(self):
        return FqElement(self.modulus, -self.value)

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else FqElement(self.modulus, (self.value * o) % self.modulus)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return FqElement(self.modulus, powmod(self.value, e, self.modulus))

    def inverse(self) -> "FqElement":
        if self.value.is_zero():
            raise ZeroDivisionError("zero has no inverse")
        g, u, _ = poly_xgcd(self.value, self.modulus)
        return FqElement(self.modulus, u % self.modulus)

    def is_zero(self) -> bool:
        return self.value.is_zero()

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == FpPoly.const(self.p, other) % self.modulus
        if isinstance(other, FqElement):
            return self.modulus == other.modulus and self.value == other.value
        return NotImplemented

    def __hash__(self):
        return hash((self.modulus, self.value))

    def __str__(self):
        return self.value.to_str("Z")


def fq_elements(p: int, modulus: FpPoly) -> list[FqElement]:
    e = len(modulus.coeffs) - 1
    return [FqElement(modulus, FpPoly(p, reversed(c))) for c in itertools.product(range(p), repeat=e)]


def fq_enumerate_units(p: int, modulus: FpPoly) -> list[FqElement]:
    """All nonzero elements of GF(p)[Z]/(modulus), in top-down coefficient order."""
    if modulus.p != p:
        raise ValueError("modulus characteristic mismatch")
    if not modulus.is_monic() or not is_irreducible(modulus):
        raise ValueError(f"modulus {modulus} is not monic irreducible")
    return [x for x in fq_elements(p, modulus) if not x.is_zero()]


# -- bivariate ---------------------------------------------------------------

class BivariatePoly:
    """Commutative polynomial in GF(p)[X, Y]; terms map (i, j) -> c for c X^i Y^j."""

    __slots__ = ("p", "terms")

    def __init__(self, p: int, terms: dict[tuple[int, int], int] | None = None):
        self.p = p
        self.terms = {k: v % p for k, v in (terms or {}).items() if v % p}

    @classmethod
    def one(cls, p: int) -> "BivariatePoly":
        return cls(p, {(0, 0): 1})

    @classmethod
    def in_x(cls, f: FpPoly) -> "BivariatePoly":
        return cls(f.p, {(i, 0): c for i, c in enumerate(f.coeffs) if c})

    @classmethod
    def in_y(cls, f: FpPoly) -> "BivariatePoly":
        return cls(f.p, {(0, j): c for j, c in enumerate(f.coeffs) if c})

    def __add__(self, other: "BivariatePoly") -> "BivariatePoly":
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, 0) + v
        return BivariatePoly(self.p, t)

    def __neg__(self):
        return BivariatePoly(self.p, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "BivariatePoly") -> "BivariatePoly":
        t: dict[tuple[int, int], int] = {}
        for (i, j), c in self.terms.items():
            for (a, b), d in other.terms.items():
                k = (i + a, j + b)
                t[k] = t.get(k, 0) + c * d
        return BivariatePoly(self.p, t)

    def __eq__(self, other):
        return isinstance(other, BivariatePoly) and self.p == other.p and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list[tuple[int, int, int]]:
        return sorted((i, j, c) for (i, j), c in self.terms.items())

    def __repr__(self):
        return f"BivariatePoly({self.p}, {self.sorted_terms()})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for i, j, c in sorted(self.sorted_terms(), key=lambda t: (-(t[0] + t[1]), -t[1], -t[0])):
            mono = "*".join(
                s for s in ((f"X^{i}" if i > 1 else "X" if i else ""),
                            (f"Y^{j}" if j > 1 else "Y" if j else "")) if s)
            if not mono:
                parts.append(str(c))
            else:
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(parts)


def _reduce_axis(terms: dict[tuple[int, int], int], g: FpPoly, axis: int) -> dict[tuple[int, int], int]:
    p = g.p
    groups: dict[int, list[int]] = {}
    for k, c in terms.items():
        e, other = (k[0], k[1]) if axis == 0 else (k[1], k[0])
        col = groups.setdefault(other, [])
        if len(col) <= e:
            col.extend([0] * (e + 1 - len(col)))
        col[e] += c
    out: dict[tuple[int, int], int] = {}
    for other, col in groups.items():
        r = FpPoly(p, col) % g
        for e, c in enumerate(r.coeffs):
            if c:
                out[(e, other) if axis == 0 else (other, e)] = c
    return out


def bivariate_reduce(B: BivariatePoly, gX: FpPoly, gY: FpPoly) -> BivariatePoly:
    """Reduce X-exponents modulo gX(X), then Y-exponents modulo gY(Y)."""
    if gX.is_zero() or gY.is_zero():
        raise ValueError("zero modulus")
    t = _reduce_axis(B.terms, gX, 0)
    t = _reduce_axis(t, gY, 1)
    return BivariatePoly(B.p, t)
