from functools import reduce
from math import gcd

import pytest
from hypothesis import HealthCheck, assume, settings
from hypothesis import strategies as st

from hfold.core import GeneratorSet

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def generator_sets(draw, min_k=2, max_k=4, max_element=12):
    k = draw(st.integers(min_k, max_k))
    rest = draw(st.sets(st.integers(1, max_element), min_size=k, max_size=k))
    assume(reduce(gcd, rest) == 1)
    return GeneratorSet((0,) + tuple(sorted(rest)))


_acceptance_results: list[tuple[str, str, str]] = []


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        label = getattr(report, "criterion", report.nodeid.split("::")[-1])
        _acceptance_results.append((label, report.outcome.upper(), report.nodeid))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker:
        report.criterion = marker.args[0]


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion label")


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for label, outcome, _ in _acceptance_results:
        terminalreporter.write_line(f"{outcome:<6} {label}")
