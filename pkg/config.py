"""
Configuration module for qqpft
"""

import json
import os
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

from dotenv import dotenv_values
from pydantic import BaseModel, ConfigDict, field_validator

ENV_PREFIX = "QQPFT_"
TOLERANCE_PREFIX = ENV_PREFIX + "TOL_"


def default_config_file() -> Path:
    return Path.home() / ".qqpft" / "config.json"


class Tolerances(BaseModel):
    """Pass thresholds of the verification suites"""

    model_config = ConfigDict(extra="forbid")

    fast_vs_direct: float = 1e-10
    round_trip: float = 1e-12
    parseval: float = 1e-10
    parseval_inner: float = 1e-9
    covariance: float = 1e-8
    hausdorff_young: float = 1e-9
    gaussian_oracle: float = 1e-6
    quadrature_inverse: float = 1e-6
    split_lemma: float = 1e-10
    special_cases: float = 1e-10
    uncertainty: float = 1e-6
    log_uncertainty: float = 1e-4


class Settings(BaseModel):
    """Defaults for grids, seeds, logging and tolerances"""

    n: int = 16
    extent: float = 20.0
    seed: int = 0
    log_level: str = "WARNING"
    hardy_r2_floor: float = 1.0 - 1e-8
    tolerances: Tolerances = Tolerances()

    @field_validator("log_level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        level = value.upper()
        if level not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"unknown log level {value!r}")
        return level


def _from_environment(values: Mapping[str, Optional[str]]) -> Dict[str, Any]:
    """Pick QQPFT_* keys out of an environment-like mapping"""
    overrides: Dict[str, Any] = {}
    tolerances: Dict[str, Any] = {}
    for key, value in values.items():
        if value is None or not key.startswith(ENV_PREFIX):
            continue
        if key.startswith(TOLERANCE_PREFIX):
            tolerances[key[len(TOLERANCE_PREFIX):].lower()] = value
        else:
            overrides[key[len(ENV_PREFIX):].lower()] = value
    if tolerances:
        overrides["tolerances"] = tolerances
    return overrides


def _merge(base: Dict[str, Any], extra: Dict[str, Any]) -> Dict[str, Any]:
    merged = dict(base)
    for key, value in extra.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = {**merged[key], **value}
        else:
            merged[key] = value
    return merged


def get_settings(config_file: Optional[Path] = None, env_file: Optional[Path] = None) -> Settings:
    """Resolve settings: defaults < config file < .env < QQPFT_* variables"""
    data: Dict[str, Any] = {}

    # Check config file
    config_file = config_file or default_config_file()
    if config_file.exists():
        with open(config_file) as f:
            data = _merge(data, json.load(f))

    # Check .env, then the real environment
    env_path = env_file or Path.cwd() / ".env"
    if env_path.exists():
        data = _merge(data, _from_environment(dotenv_values(env_path)))
    data = _merge(data, _from_environment(os.environ))

    return Settings.model_validate(data)


def save_settings(settings: Settings, config_file: Optional[Path] = None) -> Path:
    """Write settings as JSON"""
    config_file = config_file or default_config_file()
    config_file.parent.mkdir(parents=True, exist_ok=True)
    with open(config_file, "w") as f:
        json.dump(settings.model_dump(), f, indent=2)
    return config_file
