"""On-disk cache for grid sweeps, keyed by (s, denominator, engine version).

Entries are npz files with a sha256 sidecar; a corrupted entry is reported
and treated as a miss so the caller recomputes.  Writes go through a lock
file and an atomic rename, so concurrent invocations never observe a
half-written entry.
"""

from __future__ import annotations

import hashlib
import logging
import os
import time
from fractions import Fraction
from pathlib import Path

import numpy as np

from .gridsweep import SweepResult

log = logging.getLogger(__name__)

#: Bump when winner tabulation or swing counting changes meaning.
ENGINE_VERSION = "1"


def default_cache_dir() -> Path:
    return Path(os.environ.get("SCOREPOWER_CACHE_DIR", Path.home() / ".cache" / "scorepower"))


def _entry_path(cache_dir: Path, s: Fraction, denominator: int) -> Path:
    name = f"sweep_s{s.numerator}_{s.denominator}_D{denominator}_v{ENGINE_VERSION}.npz"
    return cache_dir / name


def _digest(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def cache_get(cache_dir: Path, s: Fraction, denominator: int) -> SweepResult | None:
    """Load a cached sweep, or None on miss or checksum failure."""
    path = _entry_path(cache_dir, s, denominator)
    sidecar = path.with_suffix(".npz.sha256")
    if not path.exists() or not sidecar.exists():
        return None
    if _digest(path) != sidecar.read_text().strip():
        log.warning("cache entry %s failed its checksum; recomputing", path)
        return None
    with np.load(path) as data:
        return SweepResult(s, denominator, data["triples"], data["swings"])


def cache_put(cache_dir: Path, result: SweepResult) -> Path:
    """Store a sweep; single writer per key via a lock file."""
    cache_dir.mkdir(parents=True, exist_ok=True)
    path = _entry_path(cache_dir, result.s, result.denominator)
    lock = path.with_suffix(".lock")
    for _ in range(600):
        try:
            fd = os.open(lock, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
            break
        except FileExistsError:
            time.sleep(0.1)
    else:
        raise TimeoutError(f"could not acquire cache lock {lock}")
    try:
        tmp = path.with_suffix(".npz.tmp")
        with open(tmp, "wb") as fh:
            np.savez_compressed(fh, triples=result.triples, swings=result.swings)
        digest = hashlib.sha256(tmp.read_bytes()).hexdigest()
        os.replace(tmp, path)
        path.with_suffix(".npz.sha256").write_text(digest + "\n")
    finally:
        os.close(fd)
        os.unlink(lock)
    return path
