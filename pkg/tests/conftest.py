import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        passed, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if passed else 'FAIL'}  {detail}")


class Criterion:
    """Records the outcome of one acceptance criterion for the summary."""

    def __init__(self, number):
        self.number = number
        ACCEPTANCE[number] = (False, "did not finish")

    def report(self, passed, detail):
        ACCEPTANCE[self.number] = (bool(passed), detail)
        print(f"criterion {self.number}: {'PASS' if passed else 'FAIL'}  {detail}")
        assert passed, detail


@pytest.fixture
def criterion():
    return Criterion
