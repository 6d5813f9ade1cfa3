import random

import pytest

from topomodels import kernels
from topomodels.topology import FiniteSpace, from_subbase


@pytest.fixture(params=kernels.available(), ids=lambda k: k.name)
def backend(request):
    return request.param


def random_space(rng: random.Random, max_points: int = 6) -> FiniteSpace:
    n = rng.randint(1, max_points)
    points = list(range(1, n + 1))
    subbase = [[p for p in points if rng.random() < 0.4] for _ in range(rng.randint(0, 5))]
    return from_subbase(subbase, points)


_acceptance: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    number, title = marker.args
    outcome = "PASS" if call.excinfo is None else "FAIL"
    # parametrized criteria pass only if every case passes
    if _acceptance.get(number, ("PASS",))[0] == "FAIL":
        outcome = "FAIL"
    _acceptance[number] = (outcome, title)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance):
        outcome, title = _acceptance[number]
        terminalreporter.write_line(f"{outcome}  {number:2d}. {title}")
