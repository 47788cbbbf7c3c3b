"""Persistent cache of exact values keyed by strings like "D|modulus|class|s".

The file is JSON with a schema version.  Writes go through a file lock and
merge with whatever another process stored in the meantime; values are
never overwritten with different ones.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction
from pathlib import Path

from filelock import FileLock

CACHE_SCHEMA = 1
ENV_VAR = "HQ_CACHE"


class CacheConflict(RuntimeError):
    """Two different values were recorded for the same key."""


def default_path() -> Path | None:
    p = os.environ.get(ENV_VAR)
    return Path(p) if p else None


class ValueCache:
    def __init__(self, path: str | os.PathLike | None = None):
        self.path = Path(path) if path else None
        self._mem: dict[str, Fraction] = {}
        self._dirty: dict[str, Fraction] = {}
        self.hits = 0
        self.misses = 0
        if self.path and self.path.exists():
            self._mem.update(self._read())

    def _read(self) -> dict[str, Fraction]:
        with open(self.path) as fh:
            data = json.load(fh)
        if data.get("schema") != CACHE_SCHEMA:
            return {}
        return {k: Fraction(v) for k, v in data.get("values", {}).items()}

    def get(self, key: str) -> Fraction | None:
        v = self._mem.get(key)
        if v is None:
            self.misses += 1
        else:
            self.hits += 1
        return v

    def put(self, key: str, value) -> None:
        value = Fraction(value)
        old = self._mem.get(key)
        if old is not None and old != value:
            raise CacheConflict(f"{key}: {old} != {value}")
        self._mem[key] = value
        self._dirty[key] = value

    def __len__(self):
        return len(self._mem)

    def flush(self) -> None:
        if not self.path or not self._dirty:
            return
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with FileLock(str(self.path) + ".lock"):
            merged = self._read() if self.path.exists() else {}
            for k, v in self._dirty.items():
                if k in merged and merged[k] != v:
                    raise CacheConflict(f"{k}: {merged[k]} != {v}")
                merged[k] = v
            tmp = self.path.with_suffix(".tmp")
            with open(tmp, "w") as fh:
                json.dump(
                    {"schema": CACHE_SCHEMA, "values": {k: _fmt(v) for k, v in sorted(merged.items())}},
                    fh,
                    indent=0,
                )
            os.replace(tmp, self.path)
        self._mem.update(merged)
        self._dirty.clear()

    def clear(self) -> None:
        self._mem.clear()
        self._dirty.clear()
        if self.path and self.path.exists():
            with FileLock(str(self.path) + ".lock"):
                self.path.unlink()


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


_ACTIVE = ValueCache(default_path())


def active_cache() -> ValueCache:
    return _ACTIVE


def set_cache_path(path) -> ValueCache:
    global _ACTIVE
    _ACTIVE = ValueCache(path)
    return _ACTIVE
