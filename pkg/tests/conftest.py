from __future__ import annotations

from functools import lru_cache
from pathlib import Path

import pytest

from qgroupoid.duality import dual_wmha, resolve_integral
from qgroupoid.fixtures import get_fixture

DATA = Path(__file__).parent / "data"


@lru_cache(maxsize=None)
def structure(name: str):
    return get_fixture(name).structure()


@lru_cache(maxsize=None)
def module(name: str):
    return get_fixture(name).module()


@lru_cache(maxsize=None)
def dual(name: str):
    w = structure(name)
    return dual_wmha(w, resolve_integral(w))


@pytest.fixture
def data_dir() -> Path:
    return DATA


@lru_cache(maxsize=None)
def module_and_dual(name: str):
    """A module algebra together with the dual of the very structure acting on it."""
    m = module(name)
    return m, dual_wmha(m.A, resolve_integral(m.A))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
