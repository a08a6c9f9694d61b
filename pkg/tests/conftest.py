import pytest
from mpmath import mp

ACCEPTANCE_LINES = []


@pytest.fixture(autouse=True)
def _default_precision():
    # tests assume a sane baseline; individual tests raise it locally
    old = mp.dps
    mp.dps = 30
    yield
    mp.dps = old


def record_acceptance(number: int, description: str, passed: bool, detail: str = ""):
    status = "PASS" if passed else "FAIL"
    line = f"ACCEPTANCE {number:2d} [{status}] {description}" + (f"  ({detail})" if detail else "")
    ACCEPTANCE_LINES.append((number, line))
    print(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for _, line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
