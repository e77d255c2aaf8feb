import random

import pytest
from hypothesis import HealthCheck, settings

from conormal import make_ring

settings.register_profile(
    "repo", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("repo")


@pytest.fixture
def rng():
    return random.Random(1729)


@pytest.fixture
def xyz():
    return make_ring(["x", "y", "z"])


# one summary line per acceptance criterion, filled in by tests/test_acceptance.py
CRITERIA = {}


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(CRITERIA):
        title, ok, elapsed, cap, note = CRITERIA[num]
        status = "PASS" if ok else "FAIL"
        line = f"criterion {num}: {status}  {title}  ({elapsed:.1f} s of {cap} s)"
        if note:
            line += f"  -- {note}"
        terminalreporter.write_line(line)
