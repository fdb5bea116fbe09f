"""Persistent triangle cache: versioned JSON, validated before trust.

The file holds one JSON document mapping "n_max,m" keys to triangles
whose entries are decimal strings.  A load is only accepted after a
structural check and a row-sum comparison against a freshly computed
Bell number at small n; anything corrupt or version-mismatched is
discarded so the caller recomputes.
"""

from __future__ import annotations

import json
import os
from pathlib import Path

from .triangles import Triangle, bell

__all__ = ["CACHE_ENV_VAR", "cache_store", "cache_load", "default_cache_path"]

CACHE_ENV_VAR = "HYPERBELL_CACHE"
_FORMAT = "hyperbell-cache"
_VERSION = 1


def default_cache_path() -> str | None:
    """Cache location from the environment, if configured."""
    return os.environ.get(CACHE_ENV_VAR) or None


def _read_document(path: Path) -> dict:
    try:
        with open(path, "r", encoding="ascii") as handle:
            doc = json.load(handle)
    except (OSError, ValueError):
        return {}
    if not isinstance(doc, dict) or doc.get("format") != _FORMAT or doc.get("version") != _VERSION:
        return {}
    if not isinstance(doc.get("triangles"), dict):
        return {}
    return doc


def cache_store(path: str | os.PathLike, triangle: Triangle) -> None:
    """Add or replace one triangle in the cache file at ``path``."""
    path = Path(path)
    doc = _read_document(path) or {"format": _FORMAT, "version": _VERSION, "triangles": {}}
    entries = {
        f"{n},{k}": str(triangle.entry(n, k))
        for n in range(1, triangle.n_max + 1)
        for k in range(1, n + 1)
    }
    doc["triangles"][f"{triangle.n_max},{triangle.order}"] = {
        "n_max": triangle.n_max,
        "order": triangle.order,
        "entries": entries,
    }
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    with open(tmp, "w", encoding="ascii") as handle:
        json.dump(doc, handle, indent=1, sort_keys=True)
        handle.write("\n")
    os.replace(tmp, path)


def cache_load(path: str | os.PathLike, n_max: int, m: int) -> Triangle | None:
    """Load the (n_max, m) triangle, or None when absent or untrustworthy."""
    doc = _read_document(Path(path))
    if not doc:
        return None
    record = doc["triangles"].get(f"{n_max},{m}")
    if not isinstance(record, dict):
        return None
    if record.get("n_max") != n_max or record.get("order") != m:
        return None
    entries = record.get("entries")
    if not isinstance(entries, dict):
        return None
    try:
        rows = tuple(
            tuple(int(entries[f"{n},{k}"]) for k in range(1, n + 1))
            for n in range(1, n_max + 1)
        )
    except (KeyError, ValueError, TypeError):
        return None
    triangle = Triangle(m, n_max, rows)
    if not _plausible(triangle):
        return None
    return triangle


def _plausible(triangle: Triangle) -> bool:
    # structural sanity plus row sums against freshly computed Bell
    # values, which cost far less than rebuilding the triangle
    for n in range(1, triangle.n_max + 1):
        row = triangle.row(n)
        if row[-1] != 1 or any(v < 1 for v in row):
            return False
        if sum(row) != bell(n, triangle.order):
            return False
    return True
