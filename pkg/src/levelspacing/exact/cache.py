"""On-disk cache of tabulated gap curves.

Each curve is one ``.npz`` file named by its key, the SHA-256 of
(kernel kind, rho rounded to 1e-12, m, grid bytes). Writes go to a temporary
file in the same directory and are moved into place, so readers never see a
partial entry.
"""

import hashlib
import json
import logging
import os
import tempfile
import threading
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from levelspacing.errors import CacheCorruptionError, InvalidArgumentError
from levelspacing.exact.fredholm import DET, SQRT_DET, GapCurve, gap_probability
from levelspacing.exact.kernels import KernelSpec
from levelspacing.utils.config import cache_dir

logger = logging.getLogger(__name__)

VERIFY_FRACTION = 0.01


@dataclass(frozen=True)
class CacheEntry:
    key: str
    kind: str
    rho: float | None
    m: int
    points: int
    path: Path


@dataclass
class VerifyReport:
    """Points recomputed per key; ``corrupt`` lists keys that did not match bit for bit."""

    checked: dict[str, int] = field(default_factory=dict)
    corrupt: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.corrupt


def cache_key(kernel: KernelSpec, m: int, grid: np.ndarray) -> str:
    grid_hash = hashlib.sha256(np.ascontiguousarray(grid, dtype=float).tobytes()).hexdigest()
    payload = {
        "kind": kernel.kind.value,
        "rho": None if kernel.rho is None else round(kernel.rho, 12),
        "m": int(m),
        "grid": grid_hash,
    }
    return hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()


class GapCache:
    """Directory of cached GapCurves, safe for concurrent readers and threaded writers."""

    def __init__(self, directory: str | Path | None = None):
        self.directory = Path(directory) if directory is not None else cache_dir()
        self.touched: set[str] = set()
        self._lock = threading.Lock()

    def _path(self, key: str) -> Path:
        return self.directory / f"{key}.npz"

    def get(self, kernel: KernelSpec, m: int, grid: np.ndarray) -> GapCurve | None:
        key = cache_key(kernel, m, grid)
        path = self._path(key)
        if not path.exists():
            logger.debug("cache miss %s (%s, m=%d)", key[:12], kernel.label, m)
            return None
        grid_stored, values, ghost, _ = _load(path)
        if not np.array_equal(grid_stored, grid):
            logger.warning("cache entry %s has a different grid; ignoring it", key[:12])
            return None
        logger.debug("cache hit %s (%s, m=%d)", key[:12], kernel.label, m)
        with self._lock:
            self.touched.add(key)
        return GapCurve(
            kernel=kernel,
            m=m,
            grid=grid_stored,
            values=values,
            convention=SQRT_DET if kernel.block_size == 2 else DET,
            label=kernel.label,
            cache_keys=(key,),
            ghost=ghost,
        )

    def put(self, curve: GapCurve) -> str:
        """Persist ``curve`` and return its key."""
        if curve.kernel is None:
            raise InvalidArgumentError("only curves of a named kernel can be cached")
        key = cache_key(curve.kernel, curve.m, curve.grid)
        meta = json.dumps({"kernel": curve.kernel.to_dict(), "m": curve.m, "convention": curve.convention})
        ghost = curve.ghost if curve.ghost is not None else np.empty(0)
        with self._lock:
            self.directory.mkdir(parents=True, exist_ok=True)
            handle = tempfile.NamedTemporaryFile(dir=self.directory, suffix=".tmp", delete=False)
            try:
                with handle:
                    np.savez(handle, grid=curve.grid, values=curve.values, ghost=ghost, meta=np.array(meta))
                os.replace(handle.name, self._path(key))
            except BaseException:
                Path(handle.name).unlink(missing_ok=True)
                raise
            self.touched.add(key)
        logger.debug("cached %s as %s", curve.label, key[:12])
        return key

    def entries(self) -> list[CacheEntry]:
        if not self.directory.exists():
            return []
        out = []
        for path in sorted(self.directory.glob("*.npz")):
            try:
                grid, _, _, meta = _load(path)
            except (OSError, ValueError, KeyError) as e:
                logger.warning("unreadable cache entry %s: %s", path.name, e)
                continue
            kernel = meta["kernel"]
            out.append(CacheEntry(path.stem, kernel["kind"], kernel["rho"], int(meta["m"]), int(grid.size), path))
        return out

    def clear(self) -> int:
        """Delete every entry; returns how many were removed."""
        removed = 0
        with self._lock:
            if self.directory.exists():
                for path in self.directory.glob("*.npz"):
                    path.unlink()
                    removed += 1
        logger.info("removed %d cache entries from %s", removed, self.directory)
        return removed

    def verify(self, fraction: float = VERIFY_FRACTION, seed: int = 0) -> VerifyReport:
        """Recompute a random ``fraction`` of the points of every entry.

        Raises:
            CacheCorruptionError: If any recomputed value differs from the cached one
        """
        rng = np.random.default_rng(seed)
        report = VerifyReport()
        for path in sorted(self.directory.glob("*.npz")) if self.directory.exists() else []:
            key = path.stem
            try:
                grid, values, _, meta = _load(path)
                kernel = KernelSpec(**meta["kernel"])
                m = int(meta["m"])
            except (OSError, ValueError, KeyError, TypeError) as e:
                logger.warning("cache entry %s unreadable: %s", key[:12], e)
                report.corrupt.append(key)
                continue
            if cache_key(kernel, m, grid) != key:
                report.corrupt.append(key)
                continue
            count = max(1, int(np.ceil(fraction * grid.size)))
            picks = np.sort(rng.choice(grid.size, size=min(count, grid.size), replace=False))
            report.checked[key] = int(picks.size)
            for i in picks:
                if gap_probability(kernel, float(grid[i]), m) != values[i]:
                    logger.warning("cache entry %s differs at s=%.6g", key[:12], grid[i])
                    report.corrupt.append(key)
                    break
        if report.corrupt:
            raise CacheCorruptionError("cached gap curves failed verification", report.corrupt)
        return report


def _load(path: Path) -> tuple[np.ndarray, np.ndarray, np.ndarray | None, dict]:
    with np.load(path, allow_pickle=False) as data:
        grid = data["grid"]
        values = data["values"]
        ghost = data["ghost"] if data["ghost"].size else None
        meta = json.loads(str(data["meta"]))
    return grid, values, ghost, meta
