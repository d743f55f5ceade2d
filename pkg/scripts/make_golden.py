"""Regenerate golden/ from the generators; the test suite checks it is stable."""

from __future__ import annotations

import shutil
import sys
from pathlib import Path

from ringlock.fppoly import FpPoly
from ringlock.planner import proof_plan
from ringlock.proofkit.bn import bn_certificate
from ringlock.proofkit.commutator import intro_identity, three_ring_identity
from ringlock.proofkit.idempotent import eg_system, idempotent_certificate
from ringlock.proofkit.p2 import p2_trace
from ringlock.reduction import characteristic_certificate, reduction_certificate

PLANS = (2, 3, 6, 7, 8, 10, 16, 22, 27, 32, 46, 63, 64, 73, 97)


def singles():
    P = FpPoly.parse
    yield "char-3", characteristic_certificate(3)
    yield "char-7", characteristic_certificate(7)
    yield "char-2023", characteristic_certificate(2023)
    for n, p in [(3, 2), (5, 2), (5, 3), (6, 2), (9, 5), (10, 2), (17, 3), (13, 2), (31, 2)]:
        yield f"reduce-{n}-{p}", reduction_certificate(n, p)
    yield "reduce-22-2-full", reduction_certificate(22, 2, full=True)
    yield "idem-5", idempotent_certificate(5)
    yield "idem-4", idempotent_certificate(2, P(2, "T^2+T+1"))
    yield "eg-2-2", eg_system(2, 2)
    yield "eg-3-3", eg_system(3, 3)
    yield "bn-2-3", bn_certificate(2, 3, P(2, "T^3+T+1"))
    yield "bn-3-3-affine", bn_certificate(3, 3, P(3, "T^3+2T+1"), "affine")
    yield "bn-3-3-monomial", bn_certificate(3, 3, P(3, "T^3+T^2+2"))
    yield "bn-2-4", bn_certificate(2, 4, P(2, "T^4+T+1"))
    yield "bn-2-3-general", bn_certificate(2, 3, P(2, "T^3+T+1"), "generalcase")
    yield "p2-3", p2_trace(3)
    yield "commutator-2", intro_identity()
    yield "commutator-3", three_ring_identity()


def write(root: Path) -> None:
    if root.exists():
        shutil.rmtree(root)
    certs = root / "certificates"
    certs.mkdir(parents=True)
    for name, rec in singles():
        (certs / f"{name}.json").write_text(rec.to_certificate().to_json() + "\n")
    for n in PLANS:
        proof_plan(n).write_bundle(root / str(n))


if __name__ == "__main__":
    write(Path(sys.argv[1] if len(sys.argv) > 1 else "golden"))
