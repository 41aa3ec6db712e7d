import pytest

from motper.relations import datamine


@pytest.fixture(scope="session")
def table():
    return datamine(9)


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    # keep CLI runs from writing tables into the checkout
    monkeypatch.setenv("PERIODS_TABLE_DIR", str(tmp_path / "tables"))


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = mod.summary_lines() if mod else []
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
