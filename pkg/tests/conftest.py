#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Pytest configuration file for the planar algebra tests.

This module sets up settings, specializations, skein engines and a command
line runner shared by the test modules.
"""

import pytest
from dotenv import load_dotenv

from config.settings import AppSettings
from planar_algebra.exactnum import Specialization
from planar_algebra.skein import SkeinEngine

# Load test environment variables
load_dotenv(".env.test")


@pytest.fixture
def app_settings(tmp_path):
    """Fixture for application settings with a throwaway trace cache."""
    settings = AppSettings(
        app_name="planar-algebra-test",
        version="0.1.0-test",
        environment="test"
    )
    settings.runtime.cache_dir = tmp_path / "cache"
    settings.runtime.jobs = 1
    return settings


@pytest.fixture
def generic():
    """Fixture for scalars in Q(i)(q)."""
    return Specialization.generic()


@pytest.fixture
def at_n2():
    """Fixture for scalars at q = exp(iπ/6)."""
    return Specialization.root_of_unity(2)


@pytest.fixture
def skein_engine(app_settings, generic):
    """Fixture for a generic skein engine."""
    engine = SkeinEngine(app_settings, generic)
    yield engine
    engine.flush()


@pytest.fixture
def runner(capsys, monkeypatch, tmp_path):
    """Fixture running the command line and returning (exit code, stdout)."""
    from main import main

    monkeypatch.setenv("PLANAR_CACHE_DIR", str(tmp_path / "cache"))
    monkeypatch.delenv("REPORT_OUTPUT_DIR", raising=False)

    def run(*argv):
        code = main(list(argv) + ["--config", str(tmp_path / "none.env")])
        return code, capsys.readouterr().out

    return run
