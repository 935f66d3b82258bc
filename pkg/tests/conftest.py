import time

import pytest

from hadamard_dims.exactmath import random_prime

SUITE_BUDGET_S = 120.0

_results: list[tuple[int, str, str]] = []
_start = time.perf_counter()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion")


@pytest.fixture(scope="session")
def prime() -> int:
    return random_prime(62, seed=12345)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        number, text = marker.args
        _results.append((number, text, "PASS" if rep.passed else "FAIL"))


def pytest_sessionfinish(session, exitstatus):
    elapsed = time.perf_counter() - _start
    session.config._suite_elapsed = elapsed
    if _results and elapsed >= SUITE_BUDGET_S:
        session.exitstatus = 1


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _results:
        return
    elapsed = getattr(config, "_suite_elapsed", time.perf_counter() - _start)
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number, text, status in sorted(_results):
        tr.write_line(f"criterion {number}: {status}  {text}")
    status = "PASS" if elapsed < SUITE_BUDGET_S else "FAIL"
    tr.write_line(f"criterion 9: {status}  full suite wall time {elapsed:.1f} s < {SUITE_BUDGET_S:.0f} s")
