"""Verification kernel: decode a certificate and re-derive its invariants."""

from __future__ import annotations

import importlib

from .model import (
    RECORDS,
    Certificate,
    CertificateFormatError,
    Checks,
    UnsupportedCertificate,
    VerificationReport,
)

_RECORD_MODULES = (
    "ringlock.reduction",
    "ringlock.proofkit.idempotent",
    "ringlock.proofkit.bn",
    "ringlock.proofkit.p2",
    "ringlock.proofkit.crt",
    "ringlock.proofkit.commutator",
)


def _load_records() -> None:
    for name in _RECORD_MODULES:
        importlib.import_module(name)


def verify_certificate(cert: Certificate | dict | str) -> VerificationReport:
    """Check a certificate from its raw data alone.

    Raises UnsupportedCertificate for an unknown schema or kind; every other
    problem, including malformed payloads, becomes a failed report.
    """
    if isinstance(cert, str):
        try:
            cert = Certificate.from_json(cert)
        except CertificateFormatError as exc:
            return VerificationReport(False, "?", (("well-formed", False),), f"well-formed ({exc})")
    elif isinstance(cert, dict):
        try:
            cert = Certificate.from_dict(cert)
        except CertificateFormatError as exc:
            return VerificationReport(False, "?", (("well-formed", False),), f"well-formed ({exc})")
    if cert.schema != "ringlock/1":
        raise UnsupportedCertificate(f"unsupported schema {cert.schema!r}")
    _load_records()
    cls = RECORDS.get(cert.kind)
    if cls is None:
        raise UnsupportedCertificate(f"unknown certificate kind {cert.kind!r}")
    checks = Checks()
    try:
        record = cls.from_payload(cert.payload)
    except (CertificateFormatError, TypeError, KeyError, ValueError) as exc:
        checks.add(f"well-formed ({exc})", False)
        return VerificationReport(False, cert.kind, tuple(checks.items), checks.failure)
    checks.add("well-formed", True)
    record.run_checks(checks)
    return VerificationReport(checks.ok, cert.kind, tuple(checks.items), checks.failure)


def verify_many(certs) -> list[VerificationReport]:
    return [verify_certificate(c) for c in certs]
