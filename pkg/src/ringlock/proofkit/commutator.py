"""Commutator certificates: XY - YX = sum c_i g_i (f_i^n - f_i) h_i in Z/m<X, Y>.

Evaluated in any ring with x^n = x the right side vanishes, so such an
identity is a complete commutativity proof checkable by expansion alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

from ..freering import FreePoly, parse_free
from .model import (
    CertificateFormatError,
    Checks,
    Record,
    dec_free,
    dec_int,
    dec_small,
    enc_int,
    register,
    require_keys,
)

VARIABLES = ("X", "Y")


@dataclass(frozen=True)
class Term:
    coeff: int
    g: FreePoly
    f: FreePoly
    h: FreePoly


def _enc_terms(f: FreePoly) -> list[dict]:
    return [{"coeff": enc_int(c), "word": list(w)} for w, c in f.sorted_terms()]


def _dec_terms(arr: Any, modulus: int) -> FreePoly:
    return dec_free({"modulus": enc_int(modulus), "terms": arr})


def target(modulus: int = 0) -> FreePoly:
    X, Y = (FreePoly.var(v, modulus) for v in VARIABLES)
    return X * Y - Y * X


def expand(terms: Sequence[Term], n: int, modulus: int = 0) -> FreePoly:
    acc = FreePoly.zero(modulus)
    for t in terms:
        acc = acc + t.coeff * (t.g * (t.f ** n - t.f) * t.h)
    return acc


@register
@dataclass(frozen=True)
class CommutatorCertificate(Record):
    kind = "Commutator"

    n: int
    modulus: int
    terms: tuple[Term, ...]

    def to_payload(self) -> dict:
        return {
            "n": self.n,
            "modulus": enc_int(self.modulus),
            "terms": [
                {"coeff": enc_int(t.coeff), "g": _enc_terms(t.g), "f": _enc_terms(t.f), "h": _enc_terms(t.h)}
                for t in self.terms
            ],
        }

    @classmethod
    def from_payload(cls, d: dict) -> "CommutatorCertificate":
        require_keys(d, ("n", "modulus", "terms"))
        n = dec_small(d["n"], 2)
        m = dec_int(d["modulus"])
        if m < 0 or m == 1:
            raise CertificateFormatError(f"bad modulus {m}")
        if not isinstance(d["terms"], list) or not d["terms"]:
            raise CertificateFormatError("terms must be a nonempty list")
        terms = []
        for t in d["terms"]:
            require_keys(t, ("coeff", "g", "f", "h"))
            c = dec_int(t["coeff"])
            if c == 0 or (m and not 0 < c < m):
                raise CertificateFormatError(f"non-canonical term coefficient {c}")
            terms.append(Term(c, _dec_terms(t["g"], m), _dec_terms(t["f"], m), _dec_terms(t["h"], m)))
        return cls(n, m, tuple(terms))

    def residual(self) -> FreePoly:
        """Expansion minus XY - YX; zero exactly when the identity holds."""
        return expand(self.terms, self.n, self.modulus) - target(self.modulus)

    def run_checks(self, c: Checks) -> None:
        c.add("only the variables X and Y occur",
              all(set(p.variables()) <= set(VARIABLES) for t in self.terms for p in (t.g, t.f, t.h)))
        c.add("sum c g (f^n - f) h expands to XY - YX", lambda: self.residual().is_zero())


def commutator_certificate(n: int, terms: Sequence[tuple], modulus: int = 0) -> CommutatorCertificate:
    """Build from (c, g, f, h) tuples; g, f, h may be FreePoly or strings."""

    def coerce(x) -> FreePoly:
        if isinstance(x, FreePoly):
            return x.map_coefficients(modulus) if x.modulus != modulus else x
        return parse_free(str(x), modulus)

    out = []
    for c, g, f, h in terms:
        c = c % modulus if modulus else c
        if c:
            out.append(Term(c, coerce(g), coerce(f), coerce(h)))
    return CommutatorCertificate(n, modulus, tuple(out))


def intro_identity() -> CommutatorCertificate:
    """The five-term identity for x^2 = x."""
    return commutator_certificate(2, [
        (1, "1", "X+Y", "1"),
        (-1, "1", "X", "1"),
        (-1, "1", "Y", "1"),
        (1, "1", "Y*X", "1"),
        (-1, "1", "-Y*X", "1"),
    ])


def three_ring_identity() -> CommutatorCertificate:
    """An expanded commutativity proof for x^3 = x."""
    s = "(X+X^2)"
    s2 = f"{s}^2"
    Q = "(4+4*X+3*X^2+X^3)"
    Q1 = "(X^2*Y*X^2-Y*X^2)"
    Q2 = "(X^2*Y*X^2-X^2*Y)"
    R1 = f"({s2}*Y*{s2}-Y*{s2})"
    R2 = f"({s2}*Y*{s2}-{s2}*Y)"
    return commutator_certificate(3, [
        (1, "1", s, "Y"),
        (-1, "1", "X", f"{Q}*Y"),
        (-1, "Y", s, "1"),
        (1, "Y", "X", Q),
        (3, "1", Q1, "1"),
        (-3, "1", Q2, "1"),
        (3, f"{Q2}*X^2*Y*X", "X", "Y*(X^2-1)"),
        (-3, f"{Q1}*(X^2-1)*Y*X", "X", "Y*X^2"),
        (1, "1", R1, "1"),
        (-1, "1", R2, "1"),
        (1, f"{R2}*{s2}*Y*{s}", s, f"Y*({s2}-1)"),
        (-1, f"{R1}*({s2}-1)*Y*{s}", s, f"Y*{s2}"),
        (2, "1", Q2, "1"),
        (-2, "1", Q1, "1"),
        (2, f"{Q1}*(X^2-1)*Y*X", "X", "Y*X^2"),
        (-2, f"{Q2}*X^2*Y*X", "X", "Y*(X^2-1)"),
        (1, "2+X", "X", "Y"),
        (-1, "Y*(2+X)", "X", "1"),
    ])
