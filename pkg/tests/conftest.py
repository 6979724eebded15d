"""Terminal reporting for the acceptance suite.

test_acceptance.py appends one line per criterion; printing them from
the terminal-summary hook keeps them visible even though pytest
captures stdout of passing tests.
"""

import pytest

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_report():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
