import pytest

from ocijac import instances
from ocijac.instances import FP

_RESULTS = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by a test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or (rep.when != "call" and not rep.failed):
        return
    number, title = marker.args
    ok, _ = _RESULTS.get(number, (True, title))
    _RESULTS[number] = (ok and not rep.failed, title)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        ok, title = _RESULTS[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {title}")


@pytest.fixture(scope="session")
def k3():
    return instances.k3()


@pytest.fixture(scope="session")
def k3_fp():
    return instances.k3(FP)


@pytest.fixture(scope="session")
def elliptic():
    return instances.elliptic()


@pytest.fixture(scope="session")
def cubic_line():
    return instances.cubic_line()


@pytest.fixture(scope="session")
def ell_line():
    return instances.elliptic(lines=1)


@pytest.fixture(scope="session")
def quartic_line():
    return instances.quartic_curve(lines=1)
