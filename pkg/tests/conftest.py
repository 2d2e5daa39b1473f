import time

import pytest

from delsarte.cli import load_golden
from delsarte.enumeration import EnumerationStats, run_enumeration

MAXIMAL_QUINTIC = "yzw^3+xyz^3+wxy^3+zwx^3"

# criterion id -> (passed, description, detail); filled by test_acceptance
ACCEPTANCE_RESULTS: dict[str, tuple[bool, str, str]] = {}


@pytest.fixture(scope="session")
def golden_rows():
    return load_golden()


@pytest.fixture(scope="session")
def quintic_run():
    """The full degree-5 enumeration on one worker, with its wall time."""
    stats = EnumerationStats()
    t0 = time.perf_counter()
    records = run_enumeration(5, workers=1, stats=stats)
    return records, stats, time.perf_counter() - t0


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS, key=lambda k: int(k)):
        ok, desc, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {key}: {desc} -- {detail}")
