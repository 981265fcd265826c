import pytest

from centralpoly import make_field
from centralpoly.verify import Witness

_criteria = {}

# every Witness built during the session, replayed by the last acceptance test
WITNESS_LOG = []
_witness_init = Witness.__init__


def _logged_init(self, *args, **kwargs):
    _witness_init(self, *args, **kwargs)
    WITNESS_LOG.append(self)


Witness.__init__ = _logged_init


@pytest.fixture(scope="session")
def witness_log():
    return WITNESS_LOG


def pytest_collection_modifyitems(items):
    last = [it for it in items if it.get_closest_marker("runs_last")]
    items[:] = [it for it in items if it not in last] + last


@pytest.fixture(scope="session")
def F2():
    return make_field(2)


@pytest.fixture(scope="session")
def F3():
    return make_field(3)


@pytest.fixture(scope="session")
def F4():
    return make_field(2, 2, (1, 1, 1))


@pytest.fixture(scope="session")
def F9():
    return make_field(3, 2, (1, 0, 1))


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    for key, value in report.user_properties:
        if key == "criterion":
            prev = _criteria.get(value, True)
            _criteria[value] = prev and report.passed


def pytest_runtest_setup(item):
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        item.user_properties.append(("criterion", mark.args[0]))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        terminalreporter.write_line(f"criterion {num}: {'PASS' if _criteria[num] else 'FAIL'}")
