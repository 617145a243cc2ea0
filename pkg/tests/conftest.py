import pathlib
import sys

import pytest

GOLDEN = pathlib.Path(__file__).parent / "golden"


@pytest.fixture
def golden_dir() -> pathlib.Path:
    return GOLDEN


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Echo the acceptance verdict lines, which capture would otherwise eat."""
    for name in ("test_acceptance", "tests.test_acceptance"):
        mod = sys.modules.get(name)
        if mod is not None and getattr(mod, "REPORT_LINES", None):
            terminalreporter.section("acceptance criteria")
            for line in mod.REPORT_LINES:
                terminalreporter.write_line(line)
            break
