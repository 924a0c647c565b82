import time

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    'default', deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile('default')


def opnorm(m):
    """Operator norm through the eigenvalues of m^* m (independent of SVD)."""
    m = np.asarray(m, dtype=complex)
    if m.size == 0:
        return 0.0
    w = np.linalg.eigvalsh(m.conj().T @ m)
    return float(np.sqrt(max(w[-1], 0.0)))


@pytest.fixture
def p2():
    return np.diag([1.0, 0.0]).astype(complex)


@pytest.fixture
def q_diag():
    """Projection onto (1, 1)/sqrt(2)."""
    return np.full((2, 2), 0.5, dtype=complex)


# acceptance lines, filled in by test_acceptance and printed after the run
ACCEPTANCE = {}
SUITE_BUDGET = 60.0
_START = time.perf_counter()


def record_criterion(number, title, ok, detail):
    ACCEPTANCE[number] = f"[{'PASS' if ok else 'FAIL'}] {number}. {title}: {detail}"
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    elapsed = time.perf_counter() - _START
    terminalreporter.section('acceptance criteria')
    for number in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[number])
    ok = elapsed < SUITE_BUDGET
    terminalreporter.write_line(
        f"[{'PASS' if ok else 'FAIL'}] wall clock: {elapsed:.1f} s "
        f"(budget {SUITE_BUDGET:.0f} s)")


def pytest_sessionfinish(session, exitstatus):
    # the full-suite budget only applies when the acceptance gate ran
    if ACCEPTANCE and exitstatus == 0 \
            and time.perf_counter() - _START >= SUITE_BUDGET:
        session.exitstatus = 1
