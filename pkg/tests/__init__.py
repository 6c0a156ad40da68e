"""Tests for levelspacing."""
