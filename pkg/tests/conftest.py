import pytest

from scatpoles.counting import CountingFunction
from scatpoles.sphere import sphere_table
from scatpoles.transparent import transparent_table

ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture(scope="session")
def sphere67():
    return sphere_table(3, 1.0, 67.0)


@pytest.fixture(scope="session")
def sphere_cf(sphere67):
    return CountingFunction.from_records(sphere67, 3)


@pytest.fixture(scope="session")
def transparent60():
    # a few minutes single-threaded; SCATPOLES_WORKERS spreads it over processes
    return transparent_table(3, 0.5, 1.0, 60.0)


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
