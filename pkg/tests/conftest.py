import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from flexilab import specio

settings.register_profile(
    "flexilab", deadline=None, derandomize=True, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("flexilab")


@pytest.fixture(scope="session")
def rational_specs():
    return {n: specio.load_spec(f"@rational{n}") for n in (3, 4, 5, 6)}


@pytest.fixture(scope="session")
def elliptic_specs():
    return {n: specio.load_spec(f"@elliptic{n}") for n in (3, 4)}


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None or call.when == "teardown":
        return
    num, title = mark.args
    failed = call.excinfo is not None
    prev = _CRITERIA.get(num, (title, True))
    _CRITERIA[num] = (title, prev[1] and not failed)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        title, ok = _CRITERIA[num]
        terminalreporter.write_line(f"criterion {num:2d} {'PASS' if ok else 'FAIL'}  {title}")
