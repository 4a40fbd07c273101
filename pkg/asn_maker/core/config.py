"""Configuration management for ASN Maker.

This module handles loading and managing pipeline configuration from TOML
files and environment variables, with validation through a pydantic model.
A TOML file groups flat ``key = value`` pairs under sections; the sections
are only an organizational aid and are flattened when loaded.
"""

import os
import threading
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Type, Union

import toml
from pydantic import BaseModel, Field, ValidationError, field_validator

from asn_maker.core.errors import ConfigError
from asn_maker.core.logging import get_logger

logger = get_logger("core.config")

ENV_PREFIX = "ASN_MAKER_"

ONMI_VARIANTS = ("MAX", "LFK", "SUM")
BENCHMARK_MODES = ("disjoint", "overlapping")


class PipelineConfig(BaseModel):
    """Configuration schema for the end-to-end experiment."""

    # Benchmark grid
    n_values: List[int] = Field(
        default=[50, 100],
        description="Node counts of the LFR benchmark grid",
    )
    mu_values: List[float] = Field(
        default=[0.07, 0.21],
        description="Mixing parameters of the LFR benchmark grid",
    )
    repeats: int = Field(
        default=5,
        ge=1,
        description="Independent benchmarks per grid cell and mode",
    )
    modes: List[str] = Field(
        default=["disjoint", "overlapping"],
        description="Ground-truth modes to generate",
    )
    k_avg: float = Field(
        default=6.0,
        ge=1.0,
        description="Target mean degree of the benchmarks",
    )

    # Algorithms and similarity
    registry_path: Optional[Path] = Field(
        default=Path("registry/default.tsv"),
        description="Algorithm registry TSV; the built-in catalog is used if missing",
    )
    onmi_variant: str = Field(
        default="MAX",
        description="oNMI variant used for the main ASN (MAX, LFK or SUM)",
    )
    top_k: int = Field(
        default=5,
        ge=1,
        description="Size of the mutual most-similar lists",
    )
    threshold_tau: float = Field(
        default=0.5,
        ge=0.0,
        le=1.0,
        description="oNMI threshold of the threshold aggregation",
    )

    # Backbone
    delta: Union[Literal["auto"], float] = Field(
        default="auto",
        description="NC score threshold, or 'auto' for the min-degree-one choice",
    )
    sub_asn_delta: Optional[float] = Field(
        default=None,
        description="Threshold for the overlapping-only sub-ASN; auto when unset",
    )

    # Analysis
    null_trials: int = Field(
        default=1000,
        ge=1,
        description="Random subsets drawn by the average path length null model",
    )
    clusterer: str = Field(
        default="infomap_2l",
        description="Built-in detector used to cluster the ASN",
    )
    overlap_clusterer: Optional[str] = Field(
        default="slpa",
        description="Optional overlapping detector also run on the ASN",
    )
    gt_top: int = Field(
        default=10,
        ge=2,
        description="Top ground-truth ranked algorithms tested by the null model",
    )

    # Run
    output_dir: Path = Field(
        default=Path("artifacts"),
        description="Artifact directory",
    )
    cache_dir: Path = Field(
        default=Path("cache"),
        description="Run cache directory",
    )
    real_networks_dir: Optional[Path] = Field(
        default=None,
        description="Directory of real-world edge lists to ingest",
    )
    workers: int = Field(
        default=1,
        ge=1,
        description="Worker processes for the detector sweep",
    )
    seed: int = Field(
        default=42,
        description="Master seed",
    )
    cache_audit: int = Field(
        default=20,
        ge=0,
        description="Cached runs recomputed and compared after each sweep",
    )
    log_file: Optional[Path] = Field(
        default=None,
        description="Optional log file",
    )
    log_level: str = Field(
        default="INFO",
        description="Log level name",
    )

    @field_validator("onmi_variant")
    @classmethod
    def _check_variant(cls, value: str) -> str:
        value = value.upper()
        if value not in ONMI_VARIANTS:
            raise ValueError(f"onmi_variant must be one of {ONMI_VARIANTS}")
        return value

    @field_validator("modes")
    @classmethod
    def _check_modes(cls, value: List[str]) -> List[str]:
        unknown = sorted(set(value) - set(BENCHMARK_MODES))
        if unknown or not value:
            raise ValueError(f"modes must be a non-empty subset of {BENCHMARK_MODES}")
        return value

    @field_validator("mu_values")
    @classmethod
    def _check_mu(cls, value: List[float]) -> List[float]:
        if any(not 0.0 < mu < 1.0 for mu in value):
            raise ValueError("every mixing parameter must lie in (0, 1)")
        return value


def _validate(data: Dict[str, Any]) -> PipelineConfig:
    try:
        return PipelineConfig(**data)
    except ValidationError as e:
        raise ConfigError(str(e)) from e


class ConfigManager:
    """Manages pipeline configuration from files and environment variables."""

    # Class-level variables for singleton pattern
    _instance: Optional["ConfigManager"] = None
    _lock = threading.RLock()
    _initialized = False
    _config: Optional[PipelineConfig] = None
    _config_file: Optional[Path] = None

    @classmethod
    def _reset_for_testing(cls) -> None:
        """Reset the singleton instance for testing purposes."""
        with cls._lock:
            cls._instance = None
            cls._initialized = False
            cls._config = None
            cls._config_file = None

    def __new__(cls) -> "ConfigManager":
        """Ensure singleton pattern for configuration manager."""
        with cls._lock:
            if cls._instance is None:
                cls._instance = super().__new__(cls)
            return cls._instance

    def __init__(self) -> None:
        """Initialize the configuration manager."""
        with self._lock:
            if not self._initialized:
                self._config = PipelineConfig()
                self._config_file = None
                self._initialized = True

    def _convert_env_value(self, value: str, target_type: Type) -> Any:
        """Convert environment variable value to the correct type.

        Args:
            value: The string value from the environment
            target_type: The type of the current field value

        Returns:
            The converted value; pydantic performs the final coercion
        """
        if target_type == list:
            return [item.strip() for item in value.split(",") if item.strip()]
        return value

    def _env_overrides(self, current: Dict[str, Any]) -> Dict[str, Any]:
        """Collect overrides from ASN_MAKER_* environment variables."""
        overrides = {}
        for field_name in PipelineConfig.model_fields:
            env_name = f"{ENV_PREFIX}{field_name.upper()}"
            if env_name in os.environ:
                field_type = type(current.get(field_name))
                overrides[field_name] = self._convert_env_value(
                    os.environ[env_name], field_type
                )
        return overrides

    def load_config(
        self, config_file: Optional[Union[str, Path]] = "config.toml"
    ) -> PipelineConfig:
        """Load configuration from file and environment variables.

        Args:
            config_file: Optional path to TOML configuration file; a missing
                file is skipped silently

        Returns:
            The loaded configuration

        Raises:
            ConfigError: If the file cannot be parsed or a value is invalid
        """
        with self._lock:
            data = PipelineConfig().model_dump()

            if config_file:
                config_path = Path(config_file).expanduser().resolve()
                if config_path.exists():
                    self._config_file = config_path
                    try:
                        config_data = toml.load(config_path)
                    except (toml.TomlDecodeError, OSError) as e:
                        raise ConfigError(
                            f"cannot read configuration {config_path}: {e}"
                        ) from e

                    # Extract flat configuration from nested TOML structure
                    flat_config = {}
                    for section, values in config_data.items():
                        if isinstance(values, dict):
                            flat_config.update(values)
                        else:
                            flat_config[section] = values

                    unknown = sorted(set(flat_config) - set(data))
                    if unknown:
                        raise ConfigError(f"unknown configuration keys: {unknown}")
                    data.update(flat_config)
                    logger.debug(f"Loaded configuration from {config_path}")

            data.update(self._env_overrides(data))
            self._config = _validate(data)
            return self._config

    def get_config(self) -> PipelineConfig:
        """Get the current configuration.

        Returns:
            The current PipelineConfig instance
        """
        with self._lock:
            if not self._config:
                self._config = PipelineConfig()
            return self._config

    def update_config(self, updates: Dict[str, Any]) -> PipelineConfig:
        """Update configuration with new values.

        Values of None are ignored so unset command-line flags do not
        clear configured values.

        Args:
            updates: Dictionary of configuration updates

        Returns:
            The updated configuration
        """
        with self._lock:
            current_dict = self.get_config().model_dump()
            current_dict.update({k: v for k, v in updates.items() if v is not None})
            self._config = _validate(current_dict)
            return self._config


# Global configuration instance
config_manager = ConfigManager()
