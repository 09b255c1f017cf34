"""
On-disk caches for built blocks and reconstructed traces.

Each file is a JSON document {"format_version", "kind", "sha256", "payload"}; the hash
covers the canonical payload and is checked on load. Files are written to a temporary
name and moved into place.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from fractions import Fraction
from pathlib import Path
from typing import Any

from petersen_flow.combinatorics.amplitudes import YoungDiagram
from petersen_flow.config.settings import RunConfig, settings
from petersen_flow.polynomials import TracePolynomial
from petersen_flow.transfer.block import TransferBlock

logger = logging.getLogger(__name__)

FORMAT_VERSION = 2


def _digest(payload: Any) -> str:
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()


def write_document(path: Path, kind: str, payload: Any) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    document = {
        "format_version": FORMAT_VERSION,
        "kind": kind,
        "sha256": _digest(payload),
        "payload": payload,
    }
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            json.dump(document, handle, sort_keys=True)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def read_document(path: Path, kind: str) -> Any | None:
    """Payload of a verified document, or None when missing, stale or corrupt."""
    if not path.exists():
        return None
    try:
        document = json.loads(path.read_text())
    except json.JSONDecodeError:
        logger.warning(f"Ignoring unreadable cache file {path}")
        return None
    if document.get("format_version") != FORMAT_VERSION or document.get("kind") != kind:
        logger.warning(f"Ignoring cache file {path} with a different format")
        return None
    if document.get("sha256") != _digest(document.get("payload")):
        logger.warning(f"Ignoring cache file {path}: checksum mismatch")
        return None
    return document["payload"]


def _lam_tag(lam: YoungDiagram) -> str:
    return "-".join(map(str, lam.parts)) or "empty"


class BlockCache:
    """Deflated and raw blocks, one file per (k, ℓ, λ, deflated)."""

    def __init__(self, config: RunConfig | None = None):
        self.config = config or settings
        self.root = Path(self.config.cache_dir) / "blocks"

    def path(self, k: int, l: int, lam: YoungDiagram, deflated: bool) -> Path:
        suffix = "deflated" if deflated else "raw"
        return self.root / f"k{k}_l{l}_{_lam_tag(lam)}_{suffix}.json"

    def load(self, k: int, l: int, lam: YoungDiagram, deflated: bool) -> TransferBlock | None:
        payload = read_document(self.path(k, l, lam, deflated), "block")
        return TransferBlock.from_json(payload) if payload is not None else None

    def store(self, block: TransferBlock) -> None:
        write_document(self.path(block.k, block.l, block.lam, block.deflated), "block", block.to_json())


class TraceCache:
    """Trace polynomials keyed by (k, ℓ, λ, n, deflated)."""

    def __init__(self, config: RunConfig | None = None):
        self.config = config or settings
        self.root = Path(self.config.cache_dir) / "traces"

    def path(self, key: tuple[int, int, tuple[int, ...], int], deflated: bool) -> Path:
        k, l, parts, n = key
        lam = _lam_tag(YoungDiagram(parts))
        suffix = "deflated" if deflated else "raw"
        return self.root / f"k{k}_l{l}_{lam}_n{n}_{suffix}.json"

    def load(
        self, key: tuple[int, int, tuple[int, ...], int], deflated: bool
    ) -> TracePolynomial | None:
        payload = read_document(self.path(key, deflated), "trace")
        if payload is None:
            return None
        return TracePolynomial(
            key=key,
            coefficients=tuple(Fraction(c) for c in payload["coefficients"]),
            checksum_points=tuple(payload.get("checksum_points", ())),
        )

    def store(self, trace: TracePolynomial, deflated: bool) -> None:
        k, l, parts, n = trace.key
        payload = {
            "key": [k, l, list(parts), n],
            "coefficients": [str(c) for c in trace.coefficients],
            "checksum_points": list(trace.checksum_points),
        }
        write_document(self.path(trace.key, deflated), "trace", payload)
