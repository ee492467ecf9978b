from __future__ import annotations

import time
from contextlib import contextmanager

import pytest

# criterion number -> (title, passed, seconds, limit)
_ACCEPTANCE: dict = {}


@contextmanager
def _criterion(number: int, title: str, limit: float):
    start = time.perf_counter()
    passed = False
    try:
        yield
        passed = True
    finally:
        elapsed = time.perf_counter() - start
        if passed and elapsed > limit:
            passed = False
            _ACCEPTANCE[number] = (title, False, elapsed, limit)
            raise AssertionError(f"criterion {number} took {elapsed:.1f}s, limit {limit}s")
        _ACCEPTANCE[number] = (title, passed, elapsed, limit)


@pytest.fixture
def criterion():
    """Context manager that times an acceptance criterion and records pass/fail."""
    return _criterion


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, passed, elapsed, limit = _ACCEPTANCE[number]
        verdict = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"{verdict}  {number:2d}. {title}  ({elapsed:.2f}s, limit {limit:g}s)")
