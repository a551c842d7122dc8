"""Shared fixtures for the qftv test suite"""
from pathlib import Path

import pytest

from config import Config
from tools.circuit_tools import generate_qft
from tools.smt_tools import solver_available

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture(scope="module")
def qft3():
    return generate_qft(3)


@pytest.fixture(scope="module")
def qft8():
    return generate_qft(8)


@pytest.fixture
def solver_command():
    if not solver_available(Config.SOLVER_COMMAND):
        pytest.skip(f"no SMT solver for {Config.SOLVER_COMMAND!r}")
    return Config.SOLVER_COMMAND
