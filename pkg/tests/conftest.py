import time
from contextlib import contextmanager

import pytest

_LINES = {}


@pytest.fixture
def criterion():
    """Context manager timing one acceptance criterion and recording a
    pass/fail line for the terminal summary."""

    @contextmanager
    def run(number, title, limit_s=None):
        detail = {}
        start = time.perf_counter()
        ok = False
        try:
            yield detail
            ok = True
        finally:
            elapsed = time.perf_counter() - start
            if ok and limit_s is not None and elapsed >= limit_s:
                ok = False
                detail["runtime"] = f"exceeded {limit_s}s"
            extra = ", ".join(f"{k}={v}" for k, v in detail.items())
            line = (f"criterion {number} [{'PASS' if ok else 'FAIL'}] {title} "
                    f"({elapsed:.1f}s{'; ' + extra if extra else ''})")
            _LINES[number] = line
            print(line)
        if limit_s is not None:
            assert elapsed < limit_s, f"criterion {number} took {elapsed:.1f}s, limit {limit_s}s"

    return run


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for number in sorted(_LINES):
            terminalreporter.write_line(_LINES[number])
