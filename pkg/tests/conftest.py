"""Shared fixtures. Sampled problems are session-scoped because building the
full-size 1-D demo (5000 train + 5000 test points) is the slowest setup step.

Acceptance tests append one verdict line per criterion to ACCEPTANCE_LINES;
the terminal-summary hook reprints them after the run so they stay visible
even though pytest captures stdout of passing tests.
"""

import pytest

from randnet.benchfn import demo_problem_1d

ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def demo_small():
    """1-D demo function shrunk to 400/200 samples for fast tests."""
    return demo_problem_1d(7, train_size=400, test_size=200)


@pytest.fixture(scope="session")
def demo_full():
    """1-D demo at the reference size (5000 train, 5000 test)."""
    return demo_problem_1d(7)
