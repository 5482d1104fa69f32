import sys
import numpy as np
import pytest


@pytest.fixture
def small_line():
    return np.array([0.0, 1.0, 2.0, 10.0])


@pytest.fixture
def counter_example():
    x = np.array([1.0, 2.0, 3.0, 100.0, 101.0])
    w = np.array([10.0, 1000.0, 1.0, 100.0, 1.0])
    return x, w


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module and module.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in module.RESULTS:
            terminalreporter.write_line(line)
