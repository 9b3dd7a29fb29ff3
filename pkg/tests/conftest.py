import os

import pytest

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(autouse=True, scope="session")
def _private_cache(tmp_path_factory):
    """Keep the on-disk cache inside the test session."""
    old = os.environ.get("CARLITZ_TOWER_CACHE")
    os.environ["CARLITZ_TOWER_CACHE"] = str(tmp_path_factory.mktemp("cache"))
    yield
    if old is None:
        os.environ.pop("CARLITZ_TOWER_CACHE", None)
    else:
        os.environ["CARLITZ_TOWER_CACHE"] = old


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
