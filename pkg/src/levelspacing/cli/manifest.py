"""Run manifests: what is needed to regenerate an output bit for bit."""

import hashlib
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from levelspacing import __version__
from levelspacing.utils.io import write_json


def file_digest(path: Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


@dataclass
class RunManifest:
    """Command line, configuration, seed, cache keys, version and wall time of a run."""

    command: list[str] = field(default_factory=lambda: list(sys.argv))
    config: dict[str, Any] = field(default_factory=dict)
    seed: int | None = None
    cache_keys: list[str] = field(default_factory=list)
    version: str = __version__
    started: float = field(default_factory=time.perf_counter)
    outputs: dict[str, str] = field(default_factory=dict)

    def add_output(self, path: Path) -> None:
        self.outputs[Path(path).name] = file_digest(path)

    def to_dict(self, wall_time: float | None = None) -> dict[str, Any]:
        return {
            "command": self.command,
            "config": self.config,
            "seed": self.seed,
            "cache_keys": sorted(self.cache_keys),
            "version": self.version,
            "wall_time_s": round(time.perf_counter() - self.started, 3) if wall_time is None else wall_time,
            "outputs": dict(sorted(self.outputs.items())),
        }

    def write(self, path: Path) -> Path:
        return write_json(path, self.to_dict())
