import pytest

# Acceptance tests append one line per criterion; printed after the normal
# pytest summary so the pass/fail ledger survives output capture.
_ACCEPTANCE_LINES: list = []


@pytest.fixture(scope="session")
def acceptance_log():
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in _ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
