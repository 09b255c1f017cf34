"""Pytest configuration and fixtures."""
from pathlib import Path

import pytest

from petersen_flow.config.settings import RunConfig
from petersen_flow.transfer.builder import BlockBuilder


@pytest.fixture(scope="session")
def test_data_dir():
    """Return path to test data directory."""
    return Path(__file__).parent / "data"


@pytest.fixture
def cache_dir(tmp_path):
    """Isolated cache directory for one test."""
    path = tmp_path / "cache"
    path.mkdir()
    return path


@pytest.fixture
def run_config(cache_dir):
    """Run configuration writing into the isolated cache."""
    return RunConfig(cache_dir=cache_dir)


@pytest.fixture(scope="session")
def builder():
    """Memory-only block builder shared by the whole session."""
    return BlockBuilder(RunConfig(), use_disk_cache=False)


@pytest.fixture
def mock_env(monkeypatch, tmp_path):
    """Set up mock environment variables."""
    monkeypatch.setenv("FLOWPOLY_CACHE", str(tmp_path / "env-cache"))
    monkeypatch.setenv("FLOWPOLY_MAX_PRIME", "32749")
    monkeypatch.setenv("FLOWPOLY_JOBS", "2")
