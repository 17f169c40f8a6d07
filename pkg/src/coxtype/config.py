"""Configuration management for coxtype."""

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from coxtype.exceptions import ConfigError


class Config(BaseModel):
    """Budgets and switches shared by every computation."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    # Enumeration limits
    adm_budget: int = Field(default=40, ge=1, description="Largest <mu, 2rho> accepted by adm().")
    max_rank: int = Field(default=8, ge=1, le=8)
    coset_budget: int = Field(default=50_000, ge=1)

    # Reduction limits
    search_cap: int = Field(default=200_000, ge=1)
    recursion_budget: int = Field(default=200_000, ge=1)
    newton_cap: int = Field(default=1_000_000, ge=1)

    # Execution
    workers: int = Field(default=1, ge=1)
    verify_closures: bool = True


DEFAULT_CONFIG = Config()


def load_config(config_path: Optional[Path] = None) -> Config:
    """Load configuration from a TOML file.

    Args:
        config_path: Path to a TOML file, or None for the built-in defaults.

    Returns:
        The loaded configuration.

    Raises:
        ConfigError: If the file is missing, is not valid TOML, or holds invalid values.
    """
    if config_path is None:
        return DEFAULT_CONFIG

    if not config_path.is_file():
        raise ConfigError(f"Config file not found: {config_path}")

    try:
        with open(config_path, "rb") as f:
            data = tomllib.load(f)
        return Config(**data.get("coxtype", data))
    except tomllib.TOMLDecodeError as e:
        raise ConfigError(f"Invalid TOML in {config_path}: {e}") from e
    except ValidationError as e:
        raise ConfigError(f"Invalid configuration in {config_path}: {e}") from e
