from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

GOLDEN = Path(__file__).parent / "golden"

# filled by test_acceptance.py, printed after the run
ACCEPTANCE: dict[int, tuple[str, str]] = {}


@pytest.fixture
def golden() -> Path:
    return GOLDEN


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        status, line = ACCEPTANCE[num]
        terminalreporter.write_line(f"[{status}] {num}. {line}")
