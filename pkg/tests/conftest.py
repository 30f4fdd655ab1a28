import numpy as np
import pytest

_CRITERIA = []


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def criterion():
    """Record one acceptance line; printed in the terminal summary."""

    def record(label, ok, detail=""):
        _CRITERIA.append((label, bool(ok), detail))
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in sorted(_CRITERIA, key=lambda c: int(c[0].split()[1].rstrip(":"))):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}  {detail}")
