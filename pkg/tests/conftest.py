from __future__ import annotations

from pathlib import Path

import pytest

from spiralblock.datum import principal_datum
from spiralblock.rootsys import build_root_system

FIXTURES = Path(__file__).parent / "fixtures"


def make_d1(eta: int = 2):
    return principal_datum(build_root_system("A1"), [0], 1, eta)


def make_d2():
    return principal_datum(build_root_system("A1"), [1], 2, 1)


def make_d3():
    return principal_datum(build_root_system("A2"), [0, 0], 1, 2)


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def d1():
    return make_d1()


@pytest.fixture(scope="session")
def d2():
    return make_d2()


@pytest.fixture(scope="session")
def d3():
    return make_d3()
