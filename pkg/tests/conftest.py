import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ratbez import RationalBezierCurve  # noqa: E402
from ratbez.curvedoc import load_fixture  # noqa: E402


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


@pytest.fixture(scope="session")
def closed8():
    return load_fixture("closed8").segments[0]


@pytest.fixture(scope="session")
def open9():
    return load_fixture("open9").segments[0]


@pytest.fixture(scope="session")
def sketch88():
    return load_fixture("sketch88")


def random_rational(rng, n, d=2, scale=10.0, wlo=0.5, whi=3.0):
    pts = rng.uniform(-scale, scale, (n + 1, d))
    w = rng.uniform(wlo, whi, n + 1)
    return RationalBezierCurve(pts, w)


# acceptance bookkeeping: one line per criterion, printed after the run
ACCEPTANCE = []
SUITE_BUDGET_S = 60.0
_clock = {}


def record(label, ok, detail):
    ACCEPTANCE.append((label, bool(ok), detail))
    return ok


def pytest_sessionstart(session):
    _clock["start"] = time.perf_counter()


def pytest_sessionfinish(session, exitstatus):
    _clock["elapsed"] = time.perf_counter() - _clock["start"]
    if ACCEPTANCE and _clock["elapsed"] >= SUITE_BUDGET_S:
        session.exitstatus = pytest.ExitCode.TESTS_FAILED


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for label, ok, detail in ACCEPTANCE:
        tr.write_line(f"criterion {label}: {'PASS' if ok else 'FAIL'}  {detail}")
    elapsed = _clock.get("elapsed", time.perf_counter() - _clock["start"])
    ok = elapsed < SUITE_BUDGET_S
    tr.write_line(f"criterion 9: {'PASS' if ok else 'FAIL'}  session wall time {elapsed:.1f} s "
                  f"(budget {SUITE_BUDGET_S:.0f} s)")
