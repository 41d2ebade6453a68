import os

import pytest

from paperlab.scenario import build_example_main, run_verification

ACCEPTANCE_LINES = []


def pytest_collection_modifyitems(config, items):
    if os.environ.get("PAPERLAB_STRETCH") == "1":
        return
    skip = pytest.mark.skip(reason="stretch scenario; set PAPERLAB_STRETCH=1")
    for item in items:
        if "stretch" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def report_23():
    """Full pipeline for p = 2, d = 3 (shared; about 15 seconds)."""
    return run_verification(build_example_main(2))


@pytest.fixture(scope="session")
def scenario_23():
    return build_example_main(2)


@pytest.fixture(scope="session")
def scenario_33():
    return build_example_main(3)
