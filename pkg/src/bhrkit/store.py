"""JSON persistence for certificates.  Loading always re-verifies."""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

from .lengths import (
    Certificate,
    LengthMultiset,
    MalformedInput,
    PathSeq,
    RealizationKind,
    VerificationFailure,
    classify,
    verify_realization,
)

FORMAT_VERSION = 1


def to_document(cert: Certificate) -> dict:
    return {
        "version": FORMAT_VERSION,
        "v": cert.target.v,
        "kind": cert.kind.value,
        "multiset": [[ell, count] for ell, count in cert.target.pairs],
        "path": list(cert.path.labels),
        "strategy": cert.strategy,
        "standard": cert.standard,
        "perfect": cert.perfect,
    }


def dumps(cert: Certificate) -> str:
    return json.dumps(to_document(cert), sort_keys=True) + "\n"


def from_document(doc: dict) -> Certificate:
    """Rebuild a certificate and check it; a stored path that fails raises :class:`VerificationFailure`."""
    try:
        if doc["version"] != FORMAT_VERSION:
            raise MalformedInput(f"unsupported certificate version {doc['version']!r}")
        target = LengthMultiset(int(doc["v"]), tuple((int(a), int(b)) for a, b in doc["multiset"]))
        path = PathSeq(tuple(int(ell) for ell in doc["path"]))
        kind = RealizationKind(doc["kind"])
        strategy = str(doc["strategy"])
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, MalformedInput):
            raise
        raise MalformedInput(f"malformed certificate: {exc}") from exc
    report = verify_realization(path, target, kind)
    if not report.ok:
        raise VerificationFailure(strategy, report)
    flags = classify(path)
    if (flags.standard, flags.perfect) != (doc.get("standard"), doc.get("perfect")):
        raise MalformedInput("certificate flags do not match its path")
    return Certificate(path, target, kind, strategy, flags.standard, flags.perfect)


def filename(cert: Certificate) -> str:
    body = "_".join(f"{ell}-{count}" for ell, count in cert.target.pairs) or "empty"
    return f"{cert.kind.value}_v{cert.target.v}_{body}.json"


def save(cert: Certificate, directory: str | os.PathLike) -> Path:
    """Write the certificate under ``directory``; the file appears atomically."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    final = directory / filename(cert)
    fd, tmp = tempfile.mkstemp(prefix=".tmp-", suffix=".json", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(dumps(cert))
        os.replace(tmp, final)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return final


def load(path: str | os.PathLike) -> Certificate:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise MalformedInput(f"{path}: not JSON ({exc})") from exc
    return from_document(doc)
