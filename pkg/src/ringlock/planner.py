"""Per-n proof plans.

A plan splits n into its characteristic primes, reduces each prime p to a
p^k-ring with p = 0, picks a route for p^k and glues the primes together.
Routes, simplest first:

* ``PCase``: k = 1, an idempotent decomposition over GF(p);
* ``P2Case``: k = 2, the bracket/Vandermonde trace;
* ``GcdMain``: every monomial Wedderburn obligation is proven, which always
  happens when gcd(k, p^k - 1) = 1;
* ``OpenCase``: some obligation is still open.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

from .arith import prime_power
from .fppoly import FpPoly, monic_irreducibles_dividing, reduce_by_symmetry
from .numberlab import get_exponent, is_good, least_coinciding, n_primes
from .proofkit.bn import BnRecord, bn_certificate
from .proofkit.crt import CrtGlue, crt_glue_certificate
from .proofkit.idempotent import EgSystem, eg_system, idempotent_certificate
from .proofkit.model import SCHEMA, Record
from .proofkit.p2 import MAX_P, p2_trace
from .reduction import CharacteristicCertificate, ReductionCertificate, characteristic_certificate, reduction_certificate
from .wedderlab import WedderburnStatus, wedderburn_status

ROUTES = ("PCase", "P2Case", "GcdMain", "OpenCase")
TAGS = {"PCase": "pcase", "P2Case": "p2case", "GcdMain": "gcdmain", "OpenCase": "Open"}
# classes with a standalone commutator identity
IDENTITY_CLASSES = frozenset({2, 3})


@dataclass
class RouteRecord:
    p: int
    k: int
    route: str
    reduction: ReductionCertificate | None
    certificates: list[Record] = field(default_factory=list)
    obligations: list[WedderburnStatus] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def target(self) -> int:
        return self.p ** self.k

    @property
    def complete(self) -> bool:
        return self.route != "OpenCase" and all(o.proven for o in self.obligations)

    @property
    def bn_records(self) -> list[BnRecord]:
        return [c for c in self.certificates if isinstance(c, BnRecord)]

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "k": self.k,
            "target": self.target,
            "route": self.route,
            "complete": self.complete,
            "certificates": [c.kind for c in self.certificates],
            "obligations": [o.to_dict() for o in self.obligations],
            "notes": list(self.notes),
        }


@dataclass
class ProofPlan:
    n: int
    characteristic: CharacteristicCertificate
    routes: list[RouteRecord]
    crt: CrtGlue
    coincidence: int | None

    @property
    def status(self) -> str:
        return "Complete" if all(r.complete for r in self.routes) else "Open"

    @property
    def label(self) -> str:
        return label_for(self.n, self.coincidence, {r.p: r for r in self.routes})

    def route(self, p: int) -> RouteRecord:
        for r in self.routes:
            if r.p == p:
                return r
        raise KeyError(p)

    def certificates(self) -> list[tuple[str, Record]]:
        """(file name, record) pairs in bundle order."""
        out: list[tuple[str, Record]] = [("characteristic.json", self.characteristic)]
        for r in self.routes:
            if r.reduction is not None:
                out.append((f"p{r.p}-reduction.json", r.reduction))
            counts: dict[str, int] = {}
            for c in r.certificates:
                i = counts[c.kind] = counts.get(c.kind, 0) + 1
                stem = c.kind.lower() if c.kind != "Bn" else f"bn-{i}"
                out.append((f"p{r.p}-{stem}.json", c))
        out.append(("crt.json", self.crt))
        return out

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "status": self.status,
            "label": self.label,
            "coincidence": self.coincidence,
            "primes": [r.p for r in self.routes],
            "product": self.characteristic.product,
            "routes": [r.to_dict() for r in self.routes],
        }

    def to_text(self) -> str:
        lines = [f"n = {self.n}: {self.status} ({self.label})"]
        lines.append(f"  characteristic: {'·'.join(map(str, self.characteristic.primes))} = 0")
        for r in self.routes:
            line = f"  p = {r.p}: k = {r.k}, target {r.target}, route {r.route}"
            if r.obligations:
                proven = sum(o.proven for o in r.obligations)
                line += f", {proven}/{len(r.obligations)} obligations proven"
            lines.append(line)
            for o in r.obligations:
                if not o.proven:
                    ev = o.evidence
                    lines.append(f"    open: W_{{{r.p},{r.k},{o.f.to_str()}}} period {ev.get('period')}, "
                                 f"gcd {ev.get('gcd')}")
            lines.extend(f"    note: {note}" for note in r.notes)
        lines.append(f"  glue: {', '.join(map(str, self.crt.primes))}")
        if self.coincidence is not None:
            lines.append(f"  same class as n = {self.coincidence}")
        return "\n".join(lines) + "\n"

    def write_bundle(self, directory: str | Path) -> Path:
        """Write every certificate plus ``manifest.json``; returns the manifest path."""
        d = Path(directory)
        d.mkdir(parents=True, exist_ok=True)
        files = []
        for name, rec in self.certificates():
            (d / name).write_text(rec.to_certificate().to_json() + "\n")
            files.append({"file": name, "kind": rec.kind})
        manifest = {"schema": SCHEMA, "plan": self.to_dict(), "files": files}
        path = d / "manifest.json"
        path.write_text(json.dumps(manifest, indent=1, sort_keys=True) + "\n")
        return path


# -- routes --------------------------------------------------------------------------


def route_kind(p: int, k: int) -> str:
    """Route chosen for a p^k-ring without building certificates."""
    if k == 1:
        return "PCase"
    if k == 2:
        return "P2Case"
    if is_good(p, k):
        return "GcdMain"
    # with k bad, W for T^p has period k and gcd(k, p^k - 1) > 1
    return "OpenCase"


@lru_cache(maxsize=None)
def _idempotent(p: int):
    return idempotent_certificate(p)


@lru_cache(maxsize=None)
def _gcd_route(p: int, k: int, symmetry: bool, saturate: bool):
    certs: list[Record] = [eg_system(p, k)]
    gs = [g for g in monic_irreducibles_dividing(p, k) if g.degree >= 2]
    if symmetry:
        gs = reduce_by_symmetry(gs)
    wanted: dict[FpPoly, None] = {}
    for g in gs:
        rec = bn_certificate(p, k, g)
        certs.append(rec)
        wanted.update(dict.fromkeys(rec.obligations))
    statuses = [wedderburn_status(p, k, f, saturate=saturate)
                for f in sorted(wanted, key=lambda f: (f.degree, f.coeffs))]
    return tuple(certs), tuple(statuses), len(gs)


def build_route(p: int, k: int, reduction: ReductionCertificate | None = None, *,
                symmetry: bool = True, saturate: bool = False) -> RouteRecord:
    kind = route_kind(p, k)
    if kind == "PCase":
        return RouteRecord(p, k, kind, reduction, [_idempotent(p)])
    if kind == "P2Case":
        if p <= MAX_P:
            return RouteRecord(p, k, kind, reduction, [p2_trace(p)])
        return RouteRecord(p, k, kind, reduction, notes=[f"trace omitted: p exceeds the expansion budget {MAX_P}"])
    certs, statuses, count = _gcd_route(p, k, symmetry, saturate)
    rec = RouteRecord(p, k, kind, reduction, list(certs), list(statuses))
    if symmetry:
        rec.notes.append(f"{count} irreducible(s) up to affine and reciprocal symmetry")
    if kind == "OpenCase" and rec.obligations and all(o.proven for o in rec.obligations):
        rec.route = "GcdMain"
    return rec


def proof_plan(n: int, *, symmetry: bool = True, saturate: bool = False) -> ProofPlan:
    if n < 2:
        raise ValueError(f"n must exceed 1, got {n}")
    char = characteristic_certificate(n)
    routes = []
    for p in n_primes(n):
        k = get_exponent(p, n)
        routes.append(build_route(p, k, reduction_certificate(n, p), symmetry=symmetry, saturate=saturate))
    return ProofPlan(n, char, routes, crt_glue_certificate(char.primes), least_coinciding(n))


# -- table labels ------------------------------------------------------------------


def cites(m: int | None) -> bool:
    """Whether "=m" is worth printing: m has a proof of its own rather than a
    reduction that n could run just as well."""
    if m is None:
        return False
    pp = prime_power(m)
    return m in IDENTITY_CLASSES or (pp is not None and pp[1] >= 2)


def label_for(n: int, coincidence: int | None, routes: dict[int, object]) -> str:
    """Table label from the least coinciding class and the per-prime routes.

    ``routes`` maps p to something with ``k``, ``target``, ``route`` and
    ``complete`` attributes.
    """
    pp = prime_power(n)
    if pp is not None and pp[1] >= 2:
        r = routes[pp[0]]
        return TAGS[r.route] if r.complete else "Open"
    if cites(coincidence):
        return f"={coincidence}"
    targets = sorted(r.target for r in routes.values() if r.k >= 2)
    if targets:
        return "red " + ",".join(map(str, targets))
    return "speceq"


@dataclass(frozen=True)
class _Sketch:
    p: int
    k: int
    route: str

    @property
    def target(self) -> int:
        return self.p ** self.k

    @property
    def complete(self) -> bool:
        return self.route != "OpenCase"


def table_row(n: int) -> str:
    """The label for n, computed from route selection alone (no certificates)."""
    if n < 2:
        raise ValueError(f"n must exceed 1, got {n}")
    routes = {}
    for p in n_primes(n):
        k = get_exponent(p, n)
        routes[p] = _Sketch(p, k, route_kind(p, k))
    return label_for(n, least_coinciding(n), routes)


def table(start: int, end: int) -> list[tuple[int, str]]:
    return [(n, table_row(n)) for n in range(start, end + 1)]


def targets(n: int) -> dict[int, int]:
    """p -> p^k for the characteristic primes of n."""
    return {p: p ** get_exponent(p, n) for p in n_primes(n)}


def open_targets(n: int) -> list[int]:
    """Targets p^k of n that currently lack a complete route."""
    return sorted(p ** k for p in n_primes(n) for k in [get_exponent(p, n)] if route_kind(p, k) == "OpenCase")


__all__ = [
    "ProofPlan",
    "ROUTES",
    "RouteRecord",
    "build_route",
    "cites",
    "label_for",
    "open_targets",
    "proof_plan",
    "route_kind",
    "table",
    "table_row",
    "targets",
]

