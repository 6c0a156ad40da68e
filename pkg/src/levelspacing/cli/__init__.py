"""Command-line interface."""

from levelspacing.cli.main import main

__all__ = ["main"]
