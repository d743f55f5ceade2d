"""Certificate envelope, JSON codec and verification report.

Every certificate is ``{"schema": "ringlock/1", "kind": ..., "payload": ...}``.
Polynomials over GF(p) are ascending coefficient arrays, noncommutative terms
are ``{"coeff": "<decimal>", "word": [...]}`` and integers that can grow
without bound travel as decimal strings.

Decoding is strict: a coefficient outside ``range(p)`` or a trailing zero is
rejected rather than silently normalised, so tampering cannot hide behind
canonicalisation.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Any, Callable, ClassVar, Iterable

from ..fppoly import FpPoly
from ..freering import FreePoly

SCHEMA = "ringlock/1"

KINDS = (
    "Characteristic",
    "Reduction",
    "CrtGlue",
    "IdempotentDecomposition",
    "EgSystem",
    "Bn",
    "Commutator",
    "P2Trace",
)


class CertificateFormatError(ValueError):
    """Payload does not decode to canonical data."""


class UnsupportedCertificate(ValueError):
    """Unknown schema version or certificate kind."""


@dataclass(frozen=True)
class Certificate:
    kind: str
    payload: dict
    schema: str = SCHEMA

    def to_dict(self) -> dict:
        return {"schema": self.schema, "kind": self.kind, "payload": self.payload}

    def to_json(self, indent: int | None = 1) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    @classmethod
    def from_dict(cls, d: Any) -> "Certificate":
        if not isinstance(d, dict) or set(d) != {"schema", "kind", "payload"}:
            raise CertificateFormatError("certificate must have exactly schema, kind, payload")
        if d["schema"] != SCHEMA:
            raise UnsupportedCertificate(f"unsupported schema {d['schema']!r}")
        if d["kind"] not in KINDS:
            raise UnsupportedCertificate(f"unknown certificate kind {d['kind']!r}")
        if not isinstance(d["payload"], dict):
            raise CertificateFormatError("payload must be an object")
        return cls(d["kind"], d["payload"], d["schema"])

    @classmethod
    def from_json(cls, text: str) -> "Certificate":
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CertificateFormatError(f"invalid JSON: {exc}") from exc
        return cls.from_dict(d)


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    kind: str
    checks: tuple[tuple[str, bool], ...]
    failure: str | None = None

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "kind": self.kind,
            "checks": [{"name": n, "ok": v} for n, v in self.checks],
            "failure": self.failure,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


class Checks:
    """Accumulates named invariant checks, stopping at the first failure."""

    def __init__(self):
        self.items: list[tuple[str, bool]] = []
        self.failure: str | None = None

    def add(self, name: str, fn: Callable[[], bool] | bool) -> bool:
        if self.failure is not None:
            return False
        try:
            ok = bool(fn() if callable(fn) else fn)
        except (ValueError, ZeroDivisionError, ArithmeticError, KeyError) as exc:
            ok = False
            name = f"{name} ({exc})"
        self.items.append((name, ok))
        if not ok:
            self.failure = name
        return ok

    @property
    def ok(self) -> bool:
        return self.failure is None


class Record:
    """Base for typed certificate payloads."""

    kind: ClassVar[str]

    def to_payload(self) -> dict:
        raise NotImplementedError

    @classmethod
    def from_payload(cls, d: dict) -> "Record":
        raise NotImplementedError

    def run_checks(self, checks: Checks) -> None:
        raise NotImplementedError

    def to_certificate(self) -> Certificate:
        return Certificate(self.kind, self.to_payload())

    def verify(self) -> VerificationReport:
        from .verify import verify_certificate
        return verify_certificate(self.to_certificate())


RECORDS: dict[str, type[Record]] = {}


def register(cls):
    RECORDS[cls.kind] = cls
    return cls


# -- codec ---------------------------------------------------------------------

_INT = re.compile(r"-?(0|[1-9]\d*)\Z")


def enc_int(x: int) -> str:
    return str(int(x))


def dec_int(s: Any) -> int:
    if isinstance(s, bool) or not isinstance(s, str) or not _INT.match(s) or s == "-0":
        raise CertificateFormatError(f"expected a canonical decimal string, got {s!r}")
    return int(s)


def dec_small(x: Any, lo: int | None = None) -> int:
    """A plain JSON integer (for sizes and small parameters)."""
    if isinstance(x, bool) or not isinstance(x, int):
        raise CertificateFormatError(f"expected an integer, got {x!r}")
    if lo is not None and x < lo:
        raise CertificateFormatError(f"integer {x} below {lo}")
    return x


def enc_poly(f: FpPoly) -> list[int]:
    return list(f.coeffs)


def dec_poly(p: int, arr: Any) -> FpPoly:
    if not isinstance(arr, list):
        raise CertificateFormatError(f"polynomial must be a coefficient array, got {arr!r}")
    for c in arr:
        if isinstance(c, bool) or not isinstance(c, int) or not 0 <= c < p:
            raise CertificateFormatError(f"coefficient {c!r} not in range(0, {p})")
    if arr and arr[-1] == 0:
        raise CertificateFormatError("polynomial has a trailing zero coefficient")
    return FpPoly._raw(p, tuple(arr))


def dec_poly_list(p: int, arr: Any) -> list[FpPoly]:
    if not isinstance(arr, list):
        raise CertificateFormatError("expected a list of polynomials")
    return [dec_poly(p, a) for a in arr]


def enc_free(f: FreePoly) -> dict:
    return {
        "modulus": enc_int(f.modulus),
        "terms": [{"coeff": enc_int(c), "word": list(w)} for w, c in f.sorted_terms()],
    }


def dec_free(d: Any) -> FreePoly:
    if not isinstance(d, dict) or set(d) != {"modulus", "terms"}:
        raise CertificateFormatError("free polynomial must have modulus and terms")
    m = dec_int(d["modulus"])
    if m < 0 or m == 1:
        raise CertificateFormatError(f"bad modulus {m}")
    if not isinstance(d["terms"], list):
        raise CertificateFormatError("terms must be a list")
    terms = {}
    for t in d["terms"]:
        if not isinstance(t, dict) or set(t) != {"coeff", "word"}:
            raise CertificateFormatError(f"bad term {t!r}")
        c = dec_int(t["coeff"])
        w = t["word"]
        if not isinstance(w, list) or not all(isinstance(v, str) and v for v in w):
            raise CertificateFormatError(f"bad word {w!r}")
        w = tuple(w)
        if w in terms:
            raise CertificateFormatError(f"repeated word {w!r}")
        if c == 0 or (m and not 0 < c < m):
            raise CertificateFormatError(f"non-canonical coefficient {c} for word {w!r}")
        terms[w] = c
    return FreePoly(terms, m)


def dec_prime(x: Any) -> int:
    from ..arith import is_prime
    p = dec_small(x, 2)
    if not is_prime(p):
        raise CertificateFormatError(f"{p} is not prime")
    return p


def require_keys(d: Any, keys: Iterable[str]) -> None:
    keys = set(keys)
    if not isinstance(d, dict) or set(d) != keys:
        got = sorted(d) if isinstance(d, dict) else type(d).__name__
        raise CertificateFormatError(f"payload keys {got} != {sorted(keys)}")
