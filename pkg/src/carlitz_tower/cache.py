"""Small JSON cache on disk.  Disabled with ``CARLITZ_TOWER_CACHE=off``."""

import hashlib
import json
import os
from pathlib import Path

from . import config

_hits = 0


def hits() -> int:
    return _hits


def _enabled():
    return os.environ.get(config.CACHE_ENV, "") not in ("off", "0", "none")


def _path(key: str) -> Path:
    safe = key if len(key) < 120 else hashlib.sha256(key.encode()).hexdigest()
    return config.cache_dir() / f"{safe}.json"


def load(key: str):
    global _hits
    if not _enabled():
        return None
    path = _path(key)
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, ValueError):
        return None
    _hits += 1
    return data


def store(key: str, obj) -> None:
    if not _enabled():
        return
    path = _path(key)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        with open(tmp, "w") as fh:
            json.dump(obj, fh, sort_keys=True, separators=(",", ":"))
        os.replace(tmp, path)
    except OSError:
        pass  # read-only home etc.: caching is best effort


def digest(obj) -> str:
    blob = json.dumps(obj, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:24]
