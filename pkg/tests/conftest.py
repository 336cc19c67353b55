import pytest

from support import floor_case, unique_output, single_output


@pytest.fixture
def floor_ds():
    return floor_case()


@pytest.fixture
def unique_ds():
    return unique_output()


@pytest.fixture
def single_ds():
    return single_output()


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(mod.RESULTS):
        ok, detail = mod.RESULTS[number]
        terminalreporter.write_line(mod.format_line(number, ok, detail))
