"""Process settings read from the environment."""

import logging
import os

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


def _default_threads() -> int:
    return os.cpu_count() or 1


class ApplicationConfig(BaseSettings):
    """Settings taken from ``KETO_*`` environment variables or a local ``.env``.

    Experiment parameters live in the experiment file instead; these only
    shape how the process runs.
    """

    model_config = SettingsConfigDict(
        env_prefix="KETO_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    log_level: str = Field(
        default="INFO", description="Logging level (DEBUG, INFO, WARNING, ERROR)"
    )
    debug_mode: bool = Field(
        default=False, description="Human-readable console logs instead of JSON lines"
    )
    threads: int = Field(
        default_factory=_default_threads,
        description="Upper bound on concurrently executed episodes (KETO_THREADS)",
    )

    @field_validator("log_level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        if not isinstance(logging.getLevelName(value.upper()), int):
            raise ValueError(f"unknown log level: {value}")
        return value.upper()

    @field_validator("threads")
    @classmethod
    def _positive_threads(cls, value: int) -> int:
        if value < 1:
            raise ValueError("threads must be >= 1")
        return value


def get_config() -> ApplicationConfig:
    """Load and return application configuration.

    Raises:
        ValidationError: If an environment value is malformed
    """
    return ApplicationConfig()
