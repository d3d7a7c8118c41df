import numpy as np
import pytest

from einstab.catalog import catalog


@pytest.fixture(scope="session")
def models():
    return catalog()


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


_acceptance: dict[int, tuple[str, list[str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): acceptance criterion")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("acceptance")
        if mark is not None:
            number, title = mark.args
            _acceptance.setdefault(number, (title, []))
            item.user_properties.append(("acceptance", number))


def pytest_runtest_logreport(report):
    number = dict(report.user_properties).get("acceptance")
    if number is None:
        return
    if report.when == "call" or report.outcome != "passed":
        _acceptance[number][1].append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance):
        title, outcomes = _acceptance[number]
        if not outcomes:
            status = "NOT RUN"
        else:
            status = "PASS" if all(o == "passed" for o in outcomes) else "FAIL"
        terminalreporter.write_line(f"ACCEPTANCE [{status}] {number:2d} {title}")
