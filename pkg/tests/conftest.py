import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

# nodeid -> [title, status]
ACCEPTANCE = {}


@pytest.fixture
def criterion(request):
    """Register the test as an acceptance criterion titled by its docstring's first line."""
    title = (request.function.__doc__ or request.node.name).strip().splitlines()[0]
    ACCEPTANCE[request.node.nodeid] = [title, "FAIL"]
    return title


def pytest_runtest_logreport(report):
    entry = ACCEPTANCE.get(report.nodeid)
    if entry is None:
        return
    if report.when == "call":
        entry[1] = "PASS" if report.passed else "FAIL"
    elif report.failed:
        entry[1] = "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for title, status in ACCEPTANCE.values():
        terminalreporter.write_line(f"[{status}] {title}")
