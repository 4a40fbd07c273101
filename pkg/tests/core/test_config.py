"""Unit tests for the configuration management module."""

import os
from pathlib import Path

import pytest
import toml

from asn_maker.core.config import ConfigManager, PipelineConfig
from asn_maker.core.errors import ConfigError


@pytest.fixture
def config_manager():
    """Fixture providing a fresh ConfigManager instance."""
    ConfigManager._reset_for_testing()
    return ConfigManager()


@pytest.fixture
def temp_config_file(tmp_path):
    """Fixture providing a sectioned TOML configuration file."""
    config_data = {
        "benchmarks": {"n_values": [30], "mu_values": [0.1], "repeats": 2},
        "algorithms": {"onmi_variant": "lfk", "top_k": 3},
        "run": {"seed": 7, "output_dir": str(tmp_path / "out")},
    }
    path = tmp_path / "config.toml"
    path.write_text(toml.dumps(config_data), encoding="utf-8")
    return path


def test_singleton_pattern(config_manager):
    """Test that ConfigManager follows the singleton pattern."""
    another_manager = ConfigManager()
    assert config_manager is another_manager


def test_default_config(config_manager):
    """Test default configuration values."""
    config = config_manager.get_config()
    assert isinstance(config, PipelineConfig)
    assert config.onmi_variant == "MAX"
    assert config.top_k == 5
    assert config.delta == "auto"
    assert config.workers == 1
    assert config.modes == ["disjoint", "overlapping"]


def test_load_from_file(config_manager, temp_config_file, tmp_path):
    """Sections are flattened into the schema."""
    config = config_manager.load_config(temp_config_file)

    assert config.n_values == [30]
    assert config.mu_values == [0.1]
    assert config.repeats == 2
    assert config.onmi_variant == "LFK"
    assert config.top_k == 3
    assert config.seed == 7
    assert config.output_dir == tmp_path / "out"


def test_missing_file_uses_defaults(config_manager, tmp_path):
    config = config_manager.load_config(tmp_path / "absent.toml")
    assert config == PipelineConfig()


def test_load_from_env(config_manager, monkeypatch):
    """Test loading configuration from environment variables."""
    monkeypatch.setenv("ASN_MAKER_TOP_K", "8")
    monkeypatch.setenv("ASN_MAKER_MU_VALUES", "0.1, 0.3")

    config = config_manager.load_config(None)

    assert config.top_k == 8
    assert config.mu_values == [0.1, 0.3]


def test_env_overrides_file(config_manager, temp_config_file, monkeypatch):
    monkeypatch.setenv("ASN_MAKER_SEED", "99")
    config = config_manager.load_config(temp_config_file)
    assert config.seed == 99


def test_update_config(config_manager):
    """Unset values (None) leave configured values alone."""
    config_manager.update_config({"top_k": 9, "seed": None, "delta": 0.25})
    config = config_manager.get_config()

    assert config.top_k == 9
    assert config.seed == 42
    assert config.delta == 0.25


@pytest.mark.parametrize(
    "updates",
    [
        {"onmi_variant": "AVG"},
        {"mu_values": [0.0]},
        {"modes": ["weighted"]},
        {"threshold_tau": 1.5},
        {"top_k": 0},
    ],
)
def test_invalid_values_raise_config_error(config_manager, updates):
    with pytest.raises(ConfigError):
        config_manager.update_config(updates)


def test_unknown_key_rejected(config_manager, tmp_path):
    path = tmp_path / "bad.toml"
    path.write_text("[run]\nsed = 3\n", encoding="utf-8")
    with pytest.raises(ConfigError, match="sed"):
        config_manager.load_config(path)


def test_unparsable_file_rejected(config_manager, tmp_path):
    path = tmp_path / "broken.toml"
    path.write_text("[run\nseed = ", encoding="utf-8")
    with pytest.raises(ConfigError):
        config_manager.load_config(path)


def test_repository_config_is_valid(config_manager):
    root = Path(__file__).resolve().parents[2]
    config = config_manager.load_config(root / "config.toml")
    assert config.registry_path == Path("registry/default.tsv")
    assert os.fspath(config.cache_dir) == "cache"
