#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Application settings module for the planar algebra toolkit.

This module handles loading and validating configuration settings from
environment variables and configuration files.
"""

import logging
from pathlib import Path
from typing import Optional

from pydantic import AliasChoices, Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

logger = logging.getLogger(__name__)


class ArithmeticSettings(BaseSettings):
    """Settings for exact and certified numeric arithmetic."""
    precision_bits: int = Field(128, ge=53)
    max_precision_bits: int = Field(1024, ge=53)
    separation_tolerance: float = Field(1e-30, gt=0)
    # exact stand-in for generic q: a Gaussian rational of modulus one
    probe_point: str = "3/5+4/5*I"

    model_config = SettingsConfigDict(env_prefix="ARITH_", env_file=".env", extra="ignore")


class SkeinSettings(BaseSettings):
    """Settings for closed-diagram evaluation."""
    zeta_mode: str = "single"
    simplify_words: bool = True
    cache_size: int = Field(200000, ge=0)
    max_crossings: int = Field(12, ge=1)

    model_config = SettingsConfigDict(env_prefix="SKEIN_", env_file=".env", extra="ignore")

    @field_validator("zeta_mode")
    @classmethod
    def validate_zeta_mode(cls, v: str) -> str:
        if v not in ("single", "averaged"):
            raise ValueError("zeta_mode must be 'single' or 'averaged'")
        return v


class TowerSettings(BaseSettings):
    """Settings for tower reconstruction."""
    max_boxes: int = Field(3, ge=1)
    enable_four_boxes: bool = False
    far_commutation_probes: int = Field(40, ge=1)

    model_config = SettingsConfigDict(env_prefix="TOWER_", env_file=".env", extra="ignore")


class RuntimeSettings(BaseSettings):
    """Settings for randomness, workers and caching."""
    seed: int = 2024
    jobs: int = Field(1, ge=1)
    cache_dir: Optional[Path] = Field(
        None, validation_alias=AliasChoices("PLANAR_CACHE_DIR", "RUNTIME_CACHE_DIR", "cache_dir")
    )
    progress: bool = False

    model_config = SettingsConfigDict(
        env_prefix="RUNTIME_", env_file=".env", extra="ignore", populate_by_name=True
    )


class ReportSettings(BaseSettings):
    """Settings for emitted reports."""
    float_digits: int = Field(0, ge=0)
    output_dir: Optional[Path] = None

    model_config = SettingsConfigDict(env_prefix="REPORT_", env_file=".env", extra="ignore")


class AppSettings(BaseSettings):
    """Main application settings."""
    # Application metadata
    app_name: str = "planar-algebra"
    version: str = "0.1.0"
    environment: str = "development"
    log_level: str = "INFO"

    # Component settings
    arithmetic: ArithmeticSettings = Field(default_factory=ArithmeticSettings)
    skein: SkeinSettings = Field(default_factory=SkeinSettings)
    tower: TowerSettings = Field(default_factory=TowerSettings)
    runtime: RuntimeSettings = Field(default_factory=RuntimeSettings)
    report: ReportSettings = Field(default_factory=ReportSettings)

    model_config = SettingsConfigDict(env_file=".env", env_file_encoding="utf-8", extra="ignore")

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        valid_levels = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
        if v not in valid_levels:
            raise ValueError(f"Log level must be one of {valid_levels}")
        return v

    def get_log_level(self) -> int:
        """Convert string log level to logging module constant."""
        return getattr(logging, self.log_level)
