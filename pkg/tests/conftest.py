import sys

import pytest

from semiharmonic.model import delta_config, unit_area_symmetric


@pytest.fixture
def wide_well():
    """The a = b = 5/2, v0 = 1/5 unit-area well."""
    return unit_area_symmetric(2.5)


@pytest.fixture
def narrow_well():
    return unit_area_symmetric(0.5)


@pytest.fixture
def unit_delta():
    return delta_config(1.0)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for r in results:
        terminalreporter.write_line(r.line())
