"""Pytest configuration and fixtures."""

import numpy as np
import pytest

from levelspacing.exact import GapCache, default_grid


@pytest.fixture
def cache_dir(tmp_path, monkeypatch):
    """Empty cache directory, also exported as SPECTRAL_CACHE_DIR."""
    path = tmp_path / "cache"
    monkeypatch.setenv("SPECTRAL_CACHE_DIR", str(path))
    return path


@pytest.fixture
def gap_cache(cache_dir):
    """GapCache on the temporary cache directory."""
    return GapCache(cache_dir)


@pytest.fixture
def small_grid():
    """Short grid for gap curve tests."""
    return default_grid(smax=1.0, ds=0.01)


@pytest.fixture
def full_grid():
    """Grid long enough for normalization checks (smax >= 5)."""
    return default_grid(smax=6.0, ds=0.01)


@pytest.fixture
def constant_kernel():
    """K(x, y) = 1: rank one, Det(I - K) on [0, s] is exactly 1 - s."""
    return lambda x, y: np.ones(np.broadcast(x, y).shape)
