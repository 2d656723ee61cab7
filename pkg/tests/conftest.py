import pytest

from probzeta.moebius import moebius_table
from probzeta.permgroup import enumerate_subgroups, group_from_name

_cache = {}


def lattice_of(name):
    if name not in _cache:
        G = group_from_name(name)
        L = enumerate_subgroups(G)
        _cache[name] = (G, L, moebius_table(L))
    return _cache[name]


@pytest.fixture(scope="session")
def lattice():
    return lattice_of


ACCEPTANCE = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker and (report.when == "call" or report.failed):
        number, title = marker.args
        status = "PASS" if report.passed else "FAIL"
        ACCEPTANCE.setdefault(number, (title, status))
        if status == "FAIL":
            ACCEPTANCE[number] = (title, status)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, status = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:>2}: {status}  {title}")
