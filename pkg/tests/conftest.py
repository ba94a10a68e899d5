import math

import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None)
settings.load_profile("default")

# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


def log_close(a, b, tol):
    return abs(a - b) <= tol * max(1.0, abs(b))


@pytest.fixture
def close():
    return log_close


finite_logs = dict(allow_nan=False, allow_infinity=False)
__all__ = ["ACCEPTANCE", "log_close", "finite_logs", "math"]
