"""
Pytest configuration and fixtures for freiheit tests.
"""

import sys
from pathlib import Path

import pytest

# Add packages to path for testing
packages_dir = Path(__file__).parent.parent / "packages"
sys.path.insert(0, str(packages_dir / "freiheit-core"))
sys.path.insert(0, str(packages_dir / "freiheit-cli"))


@pytest.fixture
def temp_config_dir(tmp_path):
    """Create a temporary config directory."""
    config_dir = tmp_path / ".freiheit"
    config_dir.mkdir()
    return config_dir


@pytest.fixture
def config():
    """Default configuration, unaffected by ~/.freiheit or the environment."""
    from freiheit.config import FreiheitConfig

    return FreiheitConfig()


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    """Keep FREIHEIT_* variables from leaking into tests."""
    for name in ("FREIHEIT_SEED", "FREIHEIT_TOL", "FREIHEIT_WORKERS", "FREIHEIT_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)


@pytest.fixture
def non_triangular_pool():
    """Base matrices over Q(i) with non-zero lower-left entry."""
    from freiheit.algebra import Mat2

    return [
        Mat2.of([[1, 1], [1, 2]]),
        Mat2.of([[2, 1], [1, 1]]),
        Mat2.of([[0, -1], [1, 0]]),
        Mat2.of([[1, "1/2"], ["i", 3]]),
        Mat2.of([["1+1*i", 2], [-1, "1/3"]]),
        Mat2.of([[3, 0], ["-2", "1/3"]]),
    ]
