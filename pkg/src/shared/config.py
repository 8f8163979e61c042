"""
Configuration module - loads process settings from environment variables.
"""
import logging
import os
from dataclasses import dataclass

from dotenv import load_dotenv

# Load .env file
load_dotenv()

_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass
class Settings:
    """Process-wide settings loaded from environment variables."""

    # Logging
    log_level: str = "WARNING"

    # Default worker processes for sweeps
    workers: int = 1

    @classmethod
    def from_env(cls) -> "Settings":
        """Load settings from environment variables."""
        log_level = os.getenv("HYPERMUX_LOG_LEVEL", "WARNING").upper()
        if log_level not in _LOG_LEVELS:
            raise ValueError(f"HYPERMUX_LOG_LEVEL must be one of {', '.join(_LOG_LEVELS)}")

        raw_workers = os.getenv("HYPERMUX_WORKERS", "1")
        try:
            workers = int(raw_workers)
        except ValueError:
            raise ValueError(f"HYPERMUX_WORKERS must be an integer, got {raw_workers!r}") from None
        if workers < 1:
            raise ValueError("HYPERMUX_WORKERS must be at least 1")

        return cls(log_level=log_level, workers=workers)

    @property
    def log_level_value(self) -> int:
        return getattr(logging, self.log_level)


# Global settings instance - loaded lazily
_settings: Settings | None = None


def get_settings() -> Settings:
    """Get the global settings instance."""
    global _settings
    if _settings is None:
        _settings = Settings.from_env()
    return _settings


def reset_settings() -> None:
    """Forget the cached settings so the next call re-reads the environment."""
    global _settings
    _settings = None
