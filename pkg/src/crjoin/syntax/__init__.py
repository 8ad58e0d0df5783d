"""
Surface syntax for crjoin: terms, chain documents and certificates.
"""

from .documents import (
    FORMATS,
    JSON,
    TEXT,
    CertificateDocument,
    JoinReport,
    certificate_document,
    format_step,
    emit_certificate,
    load_certificates,
    parse_certificate,
    parse_chain,
    parse_path,
    print_chain,
    print_path,
)
from .parser import parse_term, tokenize
from .printer import print_term

__all__ = [
    "FORMATS",
    "JSON",
    "TEXT",
    "CertificateDocument",
    "JoinReport",
    "certificate_document",
    "format_step",
    "emit_certificate",
    "load_certificates",
    "parse_certificate",
    "parse_chain",
    "parse_path",
    "print_chain",
    "print_path",
    "parse_term",
    "tokenize",
    "print_term",
]
