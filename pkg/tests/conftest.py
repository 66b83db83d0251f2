import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from laxorth.fincat import cat, default_corpus, point, to_terminal  # noqa: E402


@pytest.fixture(scope="session")
def one():
    return cat("1")


@pytest.fixture(scope="session")
def two():
    return cat("2")


@pytest.fixture(scope="session")
def pick0(two):
    return point(two, 0)


@pytest.fixture(scope="session")
def pick1(two):
    return point(two, 1)


@pytest.fixture(scope="session")
def bang2(two):
    return to_terminal(two)


@pytest.fixture(scope="session")
def corpus():
    return default_corpus()


def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance
    except ImportError:
        return
    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
