"""Utility functions for levelspacing."""

from levelspacing.utils.config import cache_dir, configure_logging, load_config_file
from levelspacing.utils.io import dumps, read_csv, sidecar_path, write_csv, write_json

__all__ = [
    "cache_dir",
    "configure_logging",
    "dumps",
    "load_config_file",
    "read_csv",
    "sidecar_path",
    "write_csv",
    "write_json",
]
