"""
Runtime configuration read from the environment (and an optional .env file)
"""

import os
import logging
from dataclasses import dataclass

from dotenv import load_dotenv

from derivations.errors import ConfigError

logger = logging.getLogger(__name__)

DEFAULT_MAX_WORKERS = 4
DEFAULT_LOG_LEVEL = 'WARNING'


def _int_env(name: str, default: int, minimum: int = 1) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == '':
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {raw!r}")
    if value < minimum:
        raise ConfigError(f"{name} must be >= {minimum}, got {value}")
    return value


@dataclass(frozen=True)
class Config:
    max_workers: int = DEFAULT_MAX_WORKERS
    log_level: str = DEFAULT_LOG_LEVEL

    @classmethod
    def from_env(cls) -> 'Config':
        """
        Build the configuration from the process environment.

        DERIVATIONS_MAX_WORKERS caps the worker threads used for independent
        sub-computations (1 runs everything inline). DERIVATIONS_LOG_LEVEL is
        the level the command line configures logging with.
        """
        load_dotenv()
        level = os.getenv('DERIVATIONS_LOG_LEVEL', DEFAULT_LOG_LEVEL).upper()
        if not isinstance(logging.getLevelName(level), int):
            raise ConfigError(f"DERIVATIONS_LOG_LEVEL is not a logging level: {level!r}")
        return cls(
            max_workers=_int_env('DERIVATIONS_MAX_WORKERS', DEFAULT_MAX_WORKERS),
            log_level=level,
        )
