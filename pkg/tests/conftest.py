import pytest

from streamcode import SystemParams


def small_params(max_d=10, max_n=20, z=0):
    """Every (c, d, n) with c < d <= max_d and n <= max_n."""
    for d in range(2, max_d + 1):
        for c in range(1, d):
            for n in range(1, max_n + 1):
                yield SystemParams(c, d, z, n)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
