import pytest

from hopftwist.frontend.defs import load_defs


def _load(name, order):
    return load_defs(name, order=order)


_CACHE = {}


def defs(name, order):
    """Definition files are immutable once built, so tests share them."""
    key = (name, order)
    if key not in _CACHE:
        _CACHE[key] = _load(name, order)
    return _CACHE[key]


@pytest.fixture
def moyal():
    return defs("moyal2d", 4)


@pytest.fixture
def moyal3():
    return defs("moyal2d", 3)


@pytest.fixture
def moyal2():
    return defs("moyal2d", 2)


@pytest.fixture
def trivial():
    return defs("trivial", 4)


@pytest.fixture
def jordanian():
    return defs("jordanian", 4)


@pytest.fixture
def moyal4d():
    return defs("moyal4d", 2)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
