import pytest

_ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_log():
    """Collects one PASS/FAIL line per acceptance criterion for the summary."""

    def log(criterion, passed, detail):
        line = f"[{'PASS' if passed else 'FAIL'}] {criterion}: {detail}"
        _ACCEPTANCE_LINES.append(line)
        print(line)
        return passed

    return log


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
