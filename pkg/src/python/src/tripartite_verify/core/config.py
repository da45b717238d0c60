"""Configuration for verification runs.

Defaults ship as package data in ``defaults.yaml``. A user file given with
``--config`` (or named by the ``TRIPARTITE_VERIFY_CONFIG`` environment variable)
overrides individual keys.

Path: src/python/src/tripartite_verify/core/config.py
"""

from dataclasses import dataclass, fields, replace
from functools import lru_cache
from importlib.resources import files
import os
from pathlib import Path
from typing import Any

import yaml

from .error import ConfigError

CONFIG_ENV_VAR = "TRIPARTITE_VERIFY_CONFIG"


@dataclass(frozen=True)
class VerifyConfig:
    """Tunable constants shared by every module."""

    full_max_cutoff: int = 60
    log2_bits: int = 40
    small_n_threshold: int = 70
    early_exit_monotone: bool = True
    audit_every: int = 0
    analytic_limit: int = 700
    brute_force_cutoff: int = 6
    coloring_retry_cap: int = 1000
    highk_safety: float = 1e-6
    highk_mp_dps: int = 50
    gamma_tolerance: float = 1e-12

    def with_overrides(self, overrides: dict[str, Any]) -> "VerifyConfig":
        """Return a copy with the given keys replaced after type checking."""
        known = {f.name: f.type for f in fields(self)}
        checked: dict[str, Any] = {}
        for key, value in overrides.items():
            if key not in known:
                raise ConfigError(f"unknown key {key!r}")
            checked[key] = _coerce(key, known[key], value)
        return replace(self, **checked)


def _coerce(key: str, expected: Any, value: Any) -> Any:
    if expected in (bool, "bool"):
        if not isinstance(value, bool):
            raise ConfigError(f"{key} must be a boolean, got {value!r}")
        return value
    if expected in (int, "int"):
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"{key} must be an integer, got {value!r}")
        if value < 0:
            raise ConfigError(f"{key} must be nonnegative, got {value}")
        return value
    if isinstance(value, bool) or not isinstance(value, int | float):
        raise ConfigError(f"{key} must be a number, got {value!r}")
    if value <= 0:
        raise ConfigError(f"{key} must be positive, got {value}")
    return float(value)


def _read_yaml_mapping(text: str, source: str) -> dict[str, Any]:
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"{source}: {exc}") from exc
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError(f"{source}: expected a mapping at the top level")
    return data


@lru_cache(maxsize=1)
def default_config() -> VerifyConfig:
    """Return the packaged defaults."""
    text = files("tripartite_verify.core").joinpath("defaults.yaml").read_text(encoding="utf-8")
    return VerifyConfig().with_overrides(_read_yaml_mapping(text, "defaults.yaml"))


def load_config(path: Path | None = None) -> VerifyConfig:
    """Load the configuration, applying a user override file when given.

    Args:
        path: Optional YAML file. When None, the ``TRIPARTITE_VERIFY_CONFIG``
            environment variable is consulted.

    Returns:
        The merged configuration.

    Raises:
        ConfigError: If the file is missing, unparsable, or holds bad keys.
    """
    if path is None:
        env_value = os.environ.get(CONFIG_ENV_VAR)
        if not env_value:
            return default_config()
        path = Path(env_value)

    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    return default_config().with_overrides(_read_yaml_mapping(text, str(path)))
