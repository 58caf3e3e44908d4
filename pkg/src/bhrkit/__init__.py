"""Constructions, verification and exhaustive search for edge-length realizations on complete graphs."""

from .lengths import (
    Certificate,
    LengthMultiset,
    MalformedInput,
    PathSeq,
    RealizationKind,
    VerificationFailure,
    certify,
    classify,
    fauxset_necessity,
    is_admissible,
    ms,
    verify_realization,
)

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "LengthMultiset",
    "MalformedInput",
    "PathSeq",
    "RealizationKind",
    "VerificationFailure",
    "certify",
    "classify",
    "fauxset_necessity",
    "is_admissible",
    "ms",
    "verify_realization",
]
