"""Noncommutative polynomials with coefficients in Z/m (m = 0 means Z).

A polynomial is a mapping from words (tuples of variable names) to nonzero
coefficients; the empty word is the unit. Multiplication concatenates words.
"""

from __future__ import annotations

import itertools
import re
from typing import Iterable, Mapping

Word = tuple[str, ...]


def _norm(c: int, m: int) -> int:
    return c % m if m else c


class FreePoly:
    __slots__ = ("modulus", "terms", "_hash")

    def __init__(self, terms: Mapping[Word, int] | None = None, modulus: int = 0):
        if modulus < 0 or modulus == 1:
            raise ValueError(f"modulus must be 0 or >= 2, got {modulus}")
        clean: dict[Word, int] = {}
        for w, c in (terms or {}).items():
            c = _norm(int(c), modulus)
            if c:
                clean[tuple(w)] = c
        self.modulus = modulus
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Word, int], modulus: int) -> "FreePoly":
        obj = cls.__new__(cls)
        obj.modulus = modulus
        obj.terms = terms
        obj._hash = None
        return obj

    # constructors
    @classmethod
    def const(cls, c: int, modulus: int = 0) -> "FreePoly":
        return cls({(): c}, modulus)

    @classmethod
    def one(cls, modulus: int = 0) -> "FreePoly":
        return cls.const(1, modulus)

    @classmethod
    def zero(cls, modulus: int = 0) -> "FreePoly":
        return cls({}, modulus)

    @classmethod
    def var(cls, name: str, modulus: int = 0) -> "FreePoly":
        return cls({(name,): 1}, modulus)

    @classmethod
    def word(cls, word: Iterable[str], coeff: int = 1, modulus: int = 0) -> "FreePoly":
        return cls({tuple(word): coeff}, modulus)

    @classmethod
    def parse(cls, text: str, modulus: int = 0) -> "FreePoly":
        return parse_free(text, modulus)

    # helpers
    def _coerce(self, other) -> "FreePoly":
        if isinstance(other, FreePoly):
            if other.modulus != self.modulus:
                raise ValueError(f"modulus mismatch: {self.modulus} vs {other.modulus}")
            return other
        if isinstance(other, int):
            return FreePoly.const(other, self.modulus)
        return NotImplemented

    def variables(self) -> list[str]:
        return sorted({v for w in self.terms for v in w})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, word: Iterable[str]) -> int:
        return self.terms.get(tuple(word), 0)

    def sorted_terms(self) -> list[tuple[Word, int]]:
        """Terms in length-lexicographic word order."""
        return sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0]))

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    # arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = dict(self.terms)
        m = self.modulus
        for w, c in other.terms.items():
            v = _norm(t.get(w, 0) + c, m)
            if v:
                t[w] = v
            else:
                t.pop(w, None)
        return FreePoly._raw(t, m)

    __radd__ = __add__

    def __neg__(self):
        m = self.modulus
        return FreePoly._raw({w: _norm(-c, m) for w, c in self.terms.items()}, m)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        m = self.modulus
        t: dict[Word, int] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                t[w] = t.get(w, 0) + c1 * c2
        return FreePoly._raw({w: c for w, c in ((w, _norm(c, m)) for w, c in t.items()) if c}, m)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = FreePoly.one(self.modulus)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = FreePoly.const(other, self.modulus)
        if not isinstance(other, FreePoly):
            return NotImplemented
        return self.modulus == other.modulus and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.modulus, frozenset(self.terms.items())))
        return self._hash

    def map_coefficients(self, modulus: int) -> "FreePoly":
        """Reduce the coefficients into Z/modulus."""
        return FreePoly(self.terms, modulus)

    def __repr__(self):
        return f"FreePoly({self}, modulus={self.modulus})"

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for i, (w, c) in enumerate(self.sorted_terms()):
            mono = format_word(w)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if i == 0:
                out.append(body if sign == "+" else "-" + body)
            else:
                out.append(f" {sign} {body}")
        return "".join(out)


def format_word(w: Word) -> str:
    parts = []
    for v, run in itertools.groupby(w):
        k = len(list(run))
        parts.append(v if k == 1 else f"{v}^{k}")
    return "*".join(parts)


def nc_arith(lhs: FreePoly, rhs: FreePoly, kind: str) -> FreePoly:
    if kind == "add":
        return lhs + rhs
    if kind == "sub":
        return lhs - rhs
    if kind == "mul":
        return lhs * rhs
    raise ValueError(f"unknown operation {kind!r}")


def nc_substitute(template: FreePoly, bindings: Mapping[str, FreePoly]) -> FreePoly:
    """Simultaneously replace each variable by its binding."""
    m = template.modulus
    missing = set(template.variables()) - set(bindings)
    if missing:
        raise KeyError(f"unbound variables: {sorted(missing)}")
    for v, b in bindings.items():
        if b.modulus != m:
            raise ValueError(f"binding for {v} has modulus {b.modulus}, expected {m}")
    power_cache: dict[tuple[str, int], FreePoly] = {}

    def power(v: str, k: int) -> FreePoly:
        key = (v, k)
        if key not in power_cache:
            power_cache[key] = bindings[v] ** k
        return power_cache[key]

    acc = FreePoly.zero(m)
    for w, c in template.terms.items():
        prod = FreePoly.const(c, m)
        for v, run in itertools.groupby(w):
            prod = prod * power(v, len(list(run)))
        acc = acc + prod
    return acc


def _reduce_run(k: int, n: int) -> int:
    return (k - 1) % (n - 1) + 1 if k >= n else k


def reduce_exponents_mod(f: FreePoly, n: int) -> FreePoly:
    """Shorten every maximal run x^k with k >= n to x^k', 1 <= k' <= n-1,
    k' == k mod (n-1); sound wherever x^n = x holds for every element."""
    if n <= 1:
        raise ValueError(f"n must exceed 1, got {n}")
    m = f.modulus
    t: dict[Word, int] = {}
    for w, c in f.terms.items():
        new: list[str] = []
        for v, run in itertools.groupby(w):
            new.extend([v] * _reduce_run(len(list(run)), n))
        key = tuple(new)
        t[key] = t.get(key, 0) + c
    return FreePoly(t, m)


def bracket(i: int, j: int, vars: tuple[str, str] = ("x", "y"), modulus: int = 0) -> FreePoly:
    """Sum of all words with i copies of the first variable and j of the second."""
    if i < 0 or j < 0:
        raise ValueError("negative exponent in bracket")
    x, y = vars
    n = i + j
    terms: dict[Word, int] = {}
    for pos in itertools.combinations(range(n), i):
        w = [y] * n
        for k in pos:
            w[k] = x
        terms[tuple(w)] = 1
    return FreePoly(terms, modulus)


# -- parser -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][0-9_]*)|(\S))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", num))
        elif name is not None:
            out.append(("name", name))
        else:
            if op not in "+-*^()":
                raise ValueError(f"unexpected character {op!r} in {text!r}")
            out.append(("op", op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str, modulus: int):
        self.toks = _tokenize(text)
        self.i = 0
        self.m = modulus
        self.text = text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[1] != value):
            raise ValueError(f"parse error in {self.text!r} near token {self.i}")
        self.i += 1
        return tok

    def expr(self) -> FreePoly:
        sign = 1
        if self.peek() in (("op", "-"), ("op", "+")):
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> FreePoly:
        acc = self.factor()
        while True:
            tok = self.peek()
            if tok == ("op", "*"):
                self.take()
                acc = acc * self.factor()
            elif tok[0] in ("num", "name") or tok == ("op", "("):
                acc = acc * self.factor()
            else:
                return acc

    def factor(self) -> FreePoly:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise ValueError(f"exponent must be a number in {self.text!r}")
            base = base ** int(val)
        return base

    def atom(self) -> FreePoly:
        kind, val = self.take()
        if kind == "num":
            return FreePoly.const(int(val), self.m)
        if kind == "name":
            return FreePoly.var(val, self.m)
        if val == "(":
            inner = self.expr()
            self.take(")")
            return inner
        if val == "-":
            return -self.factor()
        raise ValueError(f"unexpected {val!r} in {self.text!r}")


def parse_free(text: str, modulus: int = 0) -> FreePoly:
    """Parse ``"X*Y - Y*X"``, ``"(X+Y)^2"``, ``"2*X^3*Y"``. Names are a
    letter optionally followed by digits, so ``XY`` reads as ``X*Y``."""
    p = _Parser(text, modulus)
    if not p.toks:
        raise ValueError("empty expression")
    out = p.expr()
    if p.i != len(p.toks):
        raise ValueError(f"trailing input in {text!r}")
    return out
