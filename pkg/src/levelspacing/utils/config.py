"""Configuration: cache location, key=value config files and logging setup."""

import logging
import os
from collections.abc import Iterable
from pathlib import Path
from typing import Any

from levelspacing.errors import InvalidArgumentError

CACHE_ENV = "SPECTRAL_CACHE_DIR"
LOG_LEVEL_ENV = "LEVELSPACING_LOG_LEVEL"


def cache_dir() -> Path:
    """Cache directory from SPECTRAL_CACHE_DIR, or ~/.cache/levelspacing."""
    override = os.getenv(CACHE_ENV)
    if override:
        return Path(override).expanduser()
    return Path.home() / ".cache" / "levelspacing"


def load_config_file(path: str | Path, commands: Iterable[str] = ()) -> dict[str, Any]:
    """Parse a key=value config file into a click ``default_map``.

    Keys before any section apply to the group and to every command in
    ``commands`` (dotted paths such as ``surmise.mc``); keys under ``[name]``
    apply to that command only and win over the top-level ones. Dashes in
    keys become underscores so they match parameter names.

    Raises:
        InvalidArgumentError: On a line that is neither a comment, a section
            header nor ``key = value``
    """
    top: dict[str, Any] = {}
    sections: dict[str, dict[str, Any]] = {}
    current = top
    for number, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = sections.setdefault(line[1:-1].strip(), {})
            continue
        if "=" not in line:
            raise InvalidArgumentError(f"{path}:{number}: expected key=value, got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise InvalidArgumentError(f"{path}:{number}: empty key")
        current[key.replace("-", "_")] = value

    default_map: dict[str, Any] = dict(top)
    for name in sorted(set(commands) | set(sections)):
        node = default_map
        *parents, leaf = name.split(".")
        for parent in parents:
            node = node.setdefault(parent, dict(top))
        node.setdefault(leaf, dict(top)).update(sections.get(name, {}))
    return default_map


def configure_logging(verbose: bool = False) -> None:
    """Route library logging through rich on stderr.

    ``verbose`` selects DEBUG; otherwise LEVELSPACING_LOG_LEVEL or WARNING.
    """
    from rich.console import Console
    from rich.logging import RichHandler

    level_name = "DEBUG" if verbose else os.getenv(LOG_LEVEL_ENV, "WARNING").upper()
    level = logging.getLevelName(level_name)
    if not isinstance(level, int):
        raise InvalidArgumentError(f"unknown log level {level_name!r}")
    logger = logging.getLogger("levelspacing")
    logger.handlers.clear()
    logger.addHandler(RichHandler(console=Console(stderr=True), show_path=False, rich_tracebacks=False))
    logger.setLevel(level)
    logger.propagate = False
