#!/usr/bin/env python3
"""
Configuration management for the fieldnorm toolkit.
Handles environment variables and their defaults.
"""

import logging
import math
import os
from pathlib import Path
from typing import Dict, Optional

from dotenv import load_dotenv

from core.errors import ConfigError

# Load environment variables with smart fallback strategy
# Priority order:
# 1. Project root (where user is working) - HIGHEST PRIORITY
# 2. Toolkit directory (for standalone toolkit usage)
# 3. User home directory (global fallback)


def _load_env_with_priority() -> Optional[Path]:
    """Load .env with priority-based search"""
    locations = [
        Path.cwd() / ".env",
        Path(__file__).parent.parent / ".env",
        Path.home() / ".fieldnorm.env",
    ]

    loaded_from = None
    for env_path in locations:
        if env_path.exists():
            load_dotenv(env_path, override=False)  # Don't override already-set vars
            if not loaded_from:
                loaded_from = env_path

    return loaded_from


_env_loaded_from = _load_env_with_priority()


class Config:
    """Centralized configuration management"""

    VERSION = "1.0.0"
    TOOL_NAME = "fieldnorm"

    # Variable name -> default (as it would appear in the environment)
    SETTINGS = {
        "FIELDNORM_THREADS": "1",
        "FIELDNORM_LOG_LEVEL": "WARNING",
        "FIELDNORM_FORMAT": "tsv",
        "FIELDNORM_COVERAGE_THRESHOLD": "0.90",
        "FIELDNORM_TIE_TOLERANCE": "1e-9",
    }

    FORMATS = ("tsv", "json")

    @classmethod
    def _raw(cls, name: str) -> str:
        value = os.getenv(name)
        if value is None or value.strip() == "":
            return cls.SETTINGS[name]
        return value.strip()

    @classmethod
    def get_threads(cls) -> int:
        """Cap on internal parallelism (FIELDNORM_THREADS)"""
        raw = cls._raw("FIELDNORM_THREADS")
        try:
            threads = int(raw)
        except ValueError:
            raise ConfigError(f"FIELDNORM_THREADS must be an integer, got {raw!r}", "INVALID_CONFIG")
        if threads < 1:
            raise ConfigError(f"FIELDNORM_THREADS must be >= 1, got {threads}", "INVALID_CONFIG")
        return threads

    @classmethod
    def get_log_level(cls) -> int:
        raw = cls._raw("FIELDNORM_LOG_LEVEL").upper()
        level = logging.getLevelName(raw)
        if not isinstance(level, int):
            raise ConfigError(f"FIELDNORM_LOG_LEVEL is not a logging level: {raw!r}", "INVALID_CONFIG")
        return level

    @classmethod
    def get_format(cls) -> str:
        raw = cls._raw("FIELDNORM_FORMAT").lower()
        if raw not in cls.FORMATS:
            raise ConfigError(
                f"FIELDNORM_FORMAT must be one of {', '.join(cls.FORMATS)}, got {raw!r}",
                "INVALID_CONFIG",
            )
        return raw

    @classmethod
    def _get_float(cls, name: str) -> float:
        raw = cls._raw(name)
        try:
            value = float(raw)
        except ValueError:
            raise ConfigError(f"{name} must be a number, got {raw!r}", "INVALID_CONFIG")
        if not math.isfinite(value) or value < 0:
            raise ConfigError(f"{name} must be a finite non-negative number, got {raw!r}", "INVALID_CONFIG")
        return value

    @classmethod
    def get_coverage_threshold(cls) -> float:
        """Default coverage threshold below which an area is excluded"""
        value = cls._get_float("FIELDNORM_COVERAGE_THRESHOLD")
        if value > 1:
            raise ConfigError(f"FIELDNORM_COVERAGE_THRESHOLD must be <= 1, got {value}", "INVALID_CONFIG")
        return value

    @classmethod
    def get_tie_tolerance(cls) -> float:
        """Absolute tolerance used to tie indicator values when ranking"""
        return cls._get_float("FIELDNORM_TIE_TOLERANCE")

    @classmethod
    def get_env_source(cls) -> Optional[str]:
        """Get the path where environment variables were loaded from"""
        return str(_env_loaded_from) if _env_loaded_from else None

    @classmethod
    def check_environment(cls) -> Dict[str, bool]:
        """Check which settings are explicitly set"""
        return {name: os.getenv(name) is not None for name in cls.SETTINGS}
