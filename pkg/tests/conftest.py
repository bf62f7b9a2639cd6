import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from losing_contracts import fixtures  # noqa: E402


@pytest.fixture
def load():
    return fixtures.load


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[number])
