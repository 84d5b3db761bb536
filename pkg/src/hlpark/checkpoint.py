"""Checkpoint storage for long R_n runs.

A checkpoint directory holds ``manifest.json``::

    {"n": 9, "format_version": 1,
     "completed_blocks": [{"start_rank": 0, "end_rank": 4096, "digest": "..."}]}

and one ``block-<start>-<end>.json`` per completed block, containing the
block's partial polynomial in canonical JSON.  The digest is BLAKE2b with an
8-byte output (a stable 64-bit hash), hex encoded, of that canonical JSON.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
from pathlib import Path

from .core import BivariatePolynomial, InvalidInputError, dumps, from_json

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1
MANIFEST = "manifest.json"


def digest(canonical_json: str) -> str:
    """Stable 64-bit hash (BLAKE2b, 8-byte digest) of a canonical JSON string."""
    return hashlib.blake2b(canonical_json.encode("utf-8"), digest_size=8).hexdigest()


def _atomic_write(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


class Checkpoint:
    """Completed-block store for one ``n``.

    Blocks whose file is missing or whose digest does not match are dropped
    on load (with a warning) and get recomputed.
    """

    def __init__(self, path: str | os.PathLike, n: int):
        self.path = Path(path)
        self.n = n
        self.blocks: dict[tuple[int, int], tuple[str, BivariatePolynomial]] = {}
        self.path.mkdir(parents=True, exist_ok=True)
        self._load()

    def _block_file(self, start: int, end: int) -> Path:
        return self.path / f"block-{start}-{end}.json"

    def _load(self) -> None:
        manifest_path = self.path / MANIFEST
        if not manifest_path.exists():
            return
        try:
            manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
        except json.JSONDecodeError:
            logger.warning("unreadable checkpoint manifest %s; starting fresh", manifest_path)
            return
        if manifest.get("n") != self.n or manifest.get("format_version") != FORMAT_VERSION:
            raise InvalidInputError(
                f"checkpoint at {self.path} is for n={manifest.get('n')}, "
                f"format {manifest.get('format_version')}; expected n={self.n}, format {FORMAT_VERSION}"
            )
        for entry in manifest.get("completed_blocks", []):
            start, end, want = entry["start_rank"], entry["end_rank"], entry["digest"]
            block_file = self._block_file(start, end)
            try:
                text = block_file.read_text(encoding="utf-8")
                poly = from_json(BivariatePolynomial, json.loads(text))
            except (OSError, ValueError):
                logger.warning("checkpoint block %s unreadable; recomputing", block_file.name)
                continue
            if digest(text) != want or dumps(poly) != text:
                logger.warning("checkpoint block %s digest mismatch; recomputing", block_file.name)
                continue
            self.blocks[(start, end)] = (want, poly)

    def completed_ranges(self) -> list[tuple[int, int]]:
        return sorted(self.blocks)

    def add(self, start: int, end: int, poly: BivariatePolynomial) -> None:
        text = dumps(poly)
        _atomic_write(self._block_file(start, end), text)
        self.blocks[(start, end)] = (digest(text), poly)
        self._write_manifest()

    def _write_manifest(self) -> None:
        manifest = {
            "n": self.n,
            "format_version": FORMAT_VERSION,
            "completed_blocks": [
                {"start_rank": s, "end_rank": e, "digest": d}
                for (s, e), (d, _) in sorted(self.blocks.items())
            ],
        }
        _atomic_write(self.path / MANIFEST, json.dumps(manifest, indent=1))
