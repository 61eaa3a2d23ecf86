"""Content-addressed on-disk cache for computed documents.

One JSON file per key.  An entry is only trusted if its digest matches and the
caller's replay check accepts the stored document; otherwise it is recomputed
and overwritten.
"""
from __future__ import annotations

import hashlib
import json
import logging
import os
from pathlib import Path
from typing import Callable

from .complex import SimplicialComplex

ENV_VAR = "FILLABLE_CACHE_DIR"
log = logging.getLogger(__name__)


def _canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def cache_key(K: SimplicialComplex, op: str, params: dict | None = None) -> str:
    payload = {"complex": [list(K.facets), K.ground_set], "op": op, "params": params or {}}
    return hashlib.sha256(_canonical(payload).encode()).hexdigest()


class Cache:
    def __init__(self, directory: str | os.PathLike | None = None):
        if directory is None:
            directory = os.environ.get(ENV_VAR)
        self.dir = Path(directory) if directory else None
        self.hits = 0
        self.misses = 0
        self.rejected = 0

    @property
    def enabled(self) -> bool:
        return self.dir is not None

    def path(self, key: str) -> Path:
        return self.dir / f"{key}.json"

    def load(self, key: str, verify: Callable[[dict], bool] | None = None) -> dict | None:
        if not self.enabled:
            return None
        p = self.path(key)
        if not p.exists():
            return None
        try:
            entry = json.loads(p.read_text(encoding="utf-8"))
            doc = entry["document"]
            ok = entry["key"] == key and entry["digest"] == hashlib.sha256(_canonical(doc).encode()).hexdigest()
            if ok and verify is not None:
                ok = bool(verify(doc))
        except Exception as exc:  # anything unreadable counts as corrupt
            log.warning("cache entry %s unreadable (%s); recomputing", p.name, exc)
            self.rejected += 1
            return None
        if not ok:
            log.warning("cache entry %s failed verification; recomputing", p.name)
            self.rejected += 1
            return None
        return doc

    def store(self, key: str, doc: dict) -> None:
        if not self.enabled:
            return
        self.dir.mkdir(parents=True, exist_ok=True)
        entry = {"key": key, "digest": hashlib.sha256(_canonical(doc).encode()).hexdigest(), "document": doc}
        tmp = self.path(key).with_suffix(".tmp")
        tmp.write_text(_canonical(entry), encoding="utf-8")
        os.replace(tmp, self.path(key))

    def get_or_compute(self, K: SimplicialComplex, op: str, params: dict | None, compute: Callable[[], dict],
                       verify: Callable[[dict], bool] | None = None) -> dict:
        key = cache_key(K, op, params)
        doc = self.load(key, verify)
        if doc is not None:
            self.hits += 1
            return doc
        self.misses += 1
        doc = compute()
        self.store(key, doc)
        return doc
