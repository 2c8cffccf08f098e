"""
Settings Module

Runtime configuration for the command line, read from HANKEL_* environment
variables (and a .env file) with an optional TOML file layered on top.
Precedence is command-line flags > config file > environment > defaults.
"""

import logging
from fractions import Fraction
from pathlib import Path
from typing import List, Optional

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict, TomlConfigSettingsSource

from services.exact.rational import format_rational, parse_positive_rational

logger = logging.getLogger(__name__)


class HankelSettings(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="HANKEL_", env_file=".env", extra="ignore")

    log_level: str = "INFO"
    verify_m_max: int = Field(default=12, ge=1)
    verify_sigma2: List[str] = ["1", "4", "1/4", "9/49"]
    verify_workers: int = Field(default=4, ge=1)
    strict_psd: bool = False
    seed: int = 0
    monte_carlo_samples: int = Field(default=1_000_000, ge=2)
    monte_carlo_proposal_scale: float = Field(default=3.0, gt=0.5)
    condition_limit: float = 1e12
    eigen_tolerance: float = 1e-12
    eigen_max_sweeps: int = Field(default=64, ge=1)
    exact_whitening_max_m: int = Field(default=8, ge=1)
    normalization_floor: float = 1e-12
    gain_tolerance: float = Field(default=1e-6, gt=0)

    @field_validator("log_level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        level = value.upper()
        if level not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ValueError(f"unknown log level {value!r}")
        return level

    @field_validator("verify_sigma2", mode="before")
    @classmethod
    def _canonical_sigma2(cls, value):
        """Every grid variance must be a positive rational; stored as "p/q"."""
        if isinstance(value, (str, int, float)):
            value = [value]
        return [format_rational(parse_positive_rational(item)) for item in value]

    @property
    def sigma2_grid(self) -> List[Fraction]:
        return [Fraction(text) for text in self.verify_sigma2]


def load_settings(config_path: Optional[str] = None) -> HankelSettings:
    """
    Build settings from the environment, overlaid with the TOML file when given.
    A missing config file raises FileNotFoundError.
    """
    if config_path is None:
        return HankelSettings()
    path = Path(config_path)
    if not path.is_file():
        raise FileNotFoundError(f"Config file not found: {config_path}")
    values = TomlConfigSettingsSource(HankelSettings, toml_file=path)()
    logger.info(f"Loaded {len(values)} settings from {config_path}")
    return HankelSettings(**values)


# Global settings instance
_settings: Optional[HankelSettings] = None


def get_settings(config_path: Optional[str] = None, force_reload: bool = False) -> HankelSettings:
    """
    Get or create the process-wide settings.
    A config path always forces a reload.
    """
    global _settings
    if _settings is not None and not force_reload and config_path is None:
        return _settings
    _settings = load_settings(config_path)
    return _settings
