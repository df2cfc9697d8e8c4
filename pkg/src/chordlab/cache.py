"""On-disk result cache keyed by computation kind, parameters and schema version.

Each entry is one JSON file holding the key, the payload and its sha256
digest.  Writes go to a temporary file in the same directory followed by an
atomic rename, so concurrent writers never expose partial entries.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Callable, Mapping

from .serialize import SCHEMA_VERSION

log = logging.getLogger(__name__)

ENV_VAR = "CHORDLAB_CACHE"


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(base) / "chordlab"


def digest(payload: bytes) -> str:
    return hashlib.sha256(payload).hexdigest()


def cache_key(kind: str, params: Mapping, fmt: str) -> dict:
    return {"kind": kind, "params": dict(params), "format": fmt, "schema_version": SCHEMA_VERSION}


class ResultCache:
    def __init__(self, root: str | os.PathLike):
        self.root = Path(root)

    def path_for(self, key: Mapping) -> Path:
        name = digest(json.dumps(key, sort_keys=True).encode())
        return self.root / f"{name}.json"

    def get(self, key: Mapping) -> bytes | None:
        path = self.path_for(key)
        try:
            entry = json.loads(path.read_text())
        except FileNotFoundError:
            return None
        except (OSError, ValueError) as exc:
            log.warning("unreadable cache entry %s: %s", path.name, exc)
            return None
        if entry.get("key") != dict(key) or entry.get("schema_version") != SCHEMA_VERSION:
            return None
        payload = entry.get("payload", "").encode()
        if entry.get("digest") != digest(payload):
            log.warning("digest mismatch in %s; recomputing", path.name)
            return None
        return payload

    def put(self, key: Mapping, payload: bytes) -> Path:
        self.root.mkdir(parents=True, exist_ok=True)
        path = self.path_for(key)
        entry = {
            "key": dict(key),
            "schema_version": SCHEMA_VERSION,
            "digest": digest(payload),
            "payload": payload.decode(),
        }
        fd, tmp = tempfile.mkstemp(dir=self.root, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(entry, fh, sort_keys=True)
                fh.flush()
                os.fsync(fh.fileno())
            os.replace(tmp, path)
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise
        return path

    def get_or_compute(self, key: Mapping, compute: Callable[[], bytes]) -> bytes:
        hit = self.get(key)
        if hit is not None:
            return hit
        payload = compute()
        self.put(key, payload)
        return payload
