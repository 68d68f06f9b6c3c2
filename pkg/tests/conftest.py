import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from controlled_teleport.output import read_records_csv  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures"


class FixedStream:
    """Stand-in rng returning a fixed sequence of uniforms (last one repeats)."""

    def __init__(self, *values):
        self.values = list(values)
        self.calls = 0

    def random(self):
        v = self.values[min(self.calls, len(self.values) - 1)]
        self.calls += 1
        return v


@pytest.fixture
def table1_path():
    return FIXTURES / "table1.csv"


@pytest.fixture
def table1(table1_path):
    return read_records_csv(table1_path)


# acceptance criteria report: one line per @pytest.mark.criterion test
_CRITERIA: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = report.user_properties and dict(report.user_properties).get("criterion")
    if marker:
        number, title = marker
        prev = _CRITERIA.get(number, (title, True))
        _CRITERIA[number] = (title, prev[1] and report.passed)


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m:
            item.user_properties.append(("criterion", m.args))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, ok = _CRITERIA[number]
        terminalreporter.write_line(f"AC{number:<3d} {'PASS' if ok else 'FAIL'}  {title}")
