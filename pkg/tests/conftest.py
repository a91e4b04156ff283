import sys

import pytest

from helpers import house


@pytest.fixture
def four_agent():
    """Weights 4>3>2>1; i1, i3, i4 rank x over y, i2 ranks y over x."""
    return house({"i1": ["x", "y"], "i2": ["y", "x"], "i3": ["x", "y"], "i4": ["x", "y"]},
                 items=["x", "y"], weights={"i1": 4, "i2": 3, "i3": 2, "i4": 1})


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for line in results:
            terminalreporter.write_line(line)
