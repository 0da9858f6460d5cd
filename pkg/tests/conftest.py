import pytest

ACCEPTANCE_LINES = {}


def record(criterion, ok, detail=""):
    ACCEPTANCE_LINES[criterion] = f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}"


@pytest.fixture
def acceptance_record():
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
