import os
import time
from contextlib import contextmanager

import pytest
from hypothesis import HealthCheck, settings

from gtassoc.associators.drinfeld import solve_drinfeld

settings.register_profile(
    "default", max_examples=25, deadline=None,
    suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=200, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def drinfeld4():
    """The degree-4 1-associator from the solver (free parameter zeroed)."""
    cand, free = solve_drinfeld(1, 4)
    return cand


@pytest.fixture(scope="session")
def drinfeld3():
    cand, _ = solve_drinfeld(1, 3)
    return cand


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Time a criterion body and record one PASS/FAIL line for it."""
    @contextmanager
    def run(number: int, title: str, limit_s: float):
        start = time.perf_counter()
        ok = False
        try:
            yield
            ok = True
        finally:
            elapsed = time.perf_counter() - start
            within = elapsed < limit_s
            status = "PASS" if ok and within else "FAIL"
            line = f"criterion {number:2d} {status}  {title}  ({elapsed:.1f}s, limit {limit_s:.0f}s)"
            ACCEPTANCE_LINES.append(line)
            print(line)
        assert within, f"criterion {number} took {elapsed:.1f}s, limit {limit_s}s"

    return run


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
