"""Certificate model, generators and the verification kernel."""

from .model import (
    SCHEMA,
    Certificate,
    CertificateFormatError,
    UnsupportedCertificate,
    VerificationReport,
)
from .verify import verify_certificate

__all__ = [
    "SCHEMA",
    "Certificate",
    "CertificateFormatError",
    "UnsupportedCertificate",
    "VerificationReport",
    "verify_certificate",
]
