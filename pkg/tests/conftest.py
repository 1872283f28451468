"""Shared fixtures: built-in delta/gamma tables and a throwaway report store."""

import os
import sys

import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from colour import Variant, builtin_delta_gamma  # noqa: E402
from database import ReportStore  # noqa: E402
from verifier import Settings  # noqa: E402


@pytest.fixture
def mp2():
    return builtin_delta_gamma(Variant.MEURMAN_PRIMC, 2)


@pytest.fixture
def mp3():
    return builtin_delta_gamma(Variant.MEURMAN_PRIMC, 3)


@pytest.fixture
def alt3():
    return builtin_delta_gamma(Variant.ALT, 3)


@pytest.fixture
def store(tmp_path):
    return ReportStore(str(tmp_path / "reports.db"))


@pytest.fixture
def settings(tmp_path):
    return Settings(default_order=10, budget=10 ** 9, db_path=str(tmp_path / "reports.db"))


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long enumeration runs; deselect with -m 'not slow'")
