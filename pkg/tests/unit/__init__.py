"""Unit tests for levelspacing."""
