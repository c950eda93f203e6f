"""Content-addressed artifact store used by the HTTP service.

Artifacts live as hash-named files under <root>/objects with a small JSON
index; writes are atomic (write to a temp file, then rename).
"""

from __future__ import annotations

import hashlib
import json
import os
import threading
from pathlib import Path

STORE_VERSION = 1
DATA_DIR_ENV = "REPROLINT_DATA_DIR"
DEFAULT_DATA_DIR = "reprolint_data"


def default_root() -> Path:
    return Path(os.environ.get(DATA_DIR_ENV, DEFAULT_DATA_DIR))


class ArtifactStore:
    def __init__(self, root: str | Path | None = None):
        self.root = Path(root) if root is not None else default_root()
        self.objects = self.root / "objects"
        self.objects.mkdir(parents=True, exist_ok=True)
        self._index_path = self.root / "index.json"
        self._lock = threading.Lock()
        if not self._index_path.exists():
            self._write_index({"version": STORE_VERSION, "artifacts": {}})

    def _read_index(self) -> dict:
        return json.loads(self._index_path.read_text(encoding="utf-8"))

    def _write_index(self, index: dict) -> None:
        self._atomic_write(self._index_path, json.dumps(index, indent=1, sort_keys=True))

    @staticmethod
    def _atomic_write(path: Path, content: str | bytes) -> None:
        mode = "wb" if isinstance(content, bytes) else "w"
        tmp = path.with_name(path.name + ".tmp")
        with open(tmp, mode) as fh:
            fh.write(content)
        os.replace(tmp, path)

    def put(self, kind: str, content: bytes, meta: dict | None = None,
            artifact_id: str | None = None) -> str:
        """Store bytes; the id defaults to a content hash (idempotent)."""
        if artifact_id is None:
            artifact_id = hashlib.sha256(content).hexdigest()[:16]
        with self._lock:
            self._atomic_write(self.objects / artifact_id, content)
            index = self._read_index()
            index["artifacts"][artifact_id] = {"kind": kind, "meta": meta or {}}
            self._write_index(index)
        return artifact_id

    def get(self, artifact_id: str) -> bytes | None:
        path = self.objects / artifact_id
        if not path.is_file() or not self.exists(artifact_id):
            return None
        return path.read_bytes()

    def meta(self, artifact_id: str) -> dict | None:
        with self._lock:
            entry = self._read_index()["artifacts"].get(artifact_id)
        return entry

    def exists(self, artifact_id: str) -> bool:
        with self._lock:
            return artifact_id in self._read_index()["artifacts"]

    def list_kind(self, kind: str) -> list[tuple[str, dict]]:
        with self._lock:
            artifacts = self._read_index()["artifacts"]
        return sorted(
            (aid, entry["meta"]) for aid, entry in artifacts.items()
            if entry["kind"] == kind
        )

    def put_json(self, kind: str, doc: dict, meta: dict | None = None,
                 artifact_id: str | None = None) -> str:
        content = (json.dumps(doc, indent=1, sort_keys=True) + "\n").encode("utf-8")
        return self.put(kind, content, meta=meta, artifact_id=artifact_id)

    def get_json(self, artifact_id: str) -> dict | None:
        raw = self.get(artifact_id)
        return None if raw is None else json.loads(raw)
