import random
import sys

import pytest

from isocycle.field import make_field


@pytest.fixture(scope="session")
def f3461():
    return make_field(3461, (1, 1))


@pytest.fixture(scope="session")
def f12601():
    return make_field(12601, (11, 0))


@pytest.fixture
def rng():
    return random.Random(20261016)


def pytest_terminal_summary(terminalreporter):
    """Echo the acceptance criterion lines, which pytest would otherwise capture."""
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
