"""CSV and JSON output.

Every CSV starts with a ``#``-prefixed JSON metadata line, followed by the
column header and rows of values written with 17 significant digits so they
read back bit for bit.
"""

import json
import logging
from collections.abc import Sequence
from pathlib import Path
from typing import Any

import numpy as np

from levelspacing.errors import InvalidArgumentError

logger = logging.getLogger(__name__)


def _to_jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, Path):
        return str(value)
    return value


def dumps(data: Any, indent: int | None = 2) -> str:
    return json.dumps(_to_jsonable(data), indent=indent, sort_keys=True)


def write_csv(path: str | Path, columns: Sequence[str], data: np.ndarray, metadata: dict[str, Any]) -> Path:
    """Write ``data`` (rows x columns) under a JSON metadata line and a header."""
    path = Path(path)
    array = np.asarray(data, dtype=float)
    if array.ndim == 1:
        array = array[:, None]
    if array.shape[1] != len(columns):
        raise InvalidArgumentError(f"{len(columns)} column names for {array.shape[1]} columns")
    path.parent.mkdir(parents=True, exist_ok=True)
    header = f"# {dumps(metadata, indent=None)}\n{','.join(columns)}"
    np.savetxt(path, array, fmt="%.17g", delimiter=",", header=header, comments="")
    logger.debug("wrote %d rows to %s", array.shape[0], path)
    return path


def read_csv(path: str | Path) -> tuple[dict[str, Any], list[str], np.ndarray]:
    """Read a CSV written by ``write_csv``; returns (metadata, columns, data).

    Files without the metadata line are accepted with empty metadata.
    """
    path = Path(path)
    with path.open() as handle:
        first = handle.readline().strip()
        if first.startswith("#"):
            metadata = json.loads(first[1:].strip() or "{}")
            columns = handle.readline().strip().split(",")
            skip = 2
        else:
            metadata = {}
            columns = first.split(",")
            skip = 1
    data = np.loadtxt(path, delimiter=",", skiprows=skip, ndmin=2)
    if data.size and data.shape[1] != len(columns):
        raise InvalidArgumentError(f"{path}: header names {len(columns)} columns, rows have {data.shape[1]}")
    return metadata, columns, data


def write_json(path: str | Path, data: Any) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(data) + "\n")
    return path


def sidecar_path(path: str | Path) -> Path:
    """``curve.csv`` -> ``curve.json``."""
    return Path(path).with_suffix(".json")
