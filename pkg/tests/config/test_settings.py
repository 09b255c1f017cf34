"""Test configuration settings module."""
from pathlib import Path

import pytest
from pydantic import ValidationError

from petersen_flow.config.settings import OutputFormat, RunConfig


def test_settings_default():
    """Test default settings values."""
    config = RunConfig()
    assert config.max_prime == 65521
    assert config.jobs == 1
    assert config.oracle_edge_budget == 26
    assert config.root_digits == 50
    assert config.primes is None
    assert config.points is None


def test_output_format_enum():
    """Test OutputFormat enum values."""
    assert OutputFormat.JSON == "json"
    assert OutputFormat.CSV == "csv"
    assert OutputFormat.SVG == "svg"
    assert OutputFormat.TEXT == "text"


def test_settings_from_env(mock_env, tmp_path):
    """FLOWPOLY_* variables override the defaults."""
    config = RunConfig()
    assert config.cache_dir == tmp_path / "env-cache"
    assert config.max_prime == 32749
    assert config.jobs == 2


def test_settings_explicit_cache_dir(tmp_path):
    """The cache directory can be passed by field name and is not created eagerly."""
    config = RunConfig(cache_dir=tmp_path / "c")
    assert config.cache_dir == Path(tmp_path / "c")
    assert not config.cache_dir.exists()


def test_settings_reject_bad_values():
    """Parallelism and budgets are validated."""
    with pytest.raises(ValidationError):
        RunConfig(jobs=0)
    with pytest.raises(ValidationError):
        RunConfig(oracle_edge_budget=0)
    with pytest.raises(ValidationError):
        RunConfig(primes=[])


def test_class_config_deprecation_is_filtered(pytestconfig):
    """The class-style settings config does not flood the test log."""
    filters = pytestconfig.getini("filterwarnings")
    assert "ignore::pydantic.warnings.PydanticDeprecatedSince20" in filters
    assert RunConfig.model_config["env_prefix"] == "FLOWPOLY_"
