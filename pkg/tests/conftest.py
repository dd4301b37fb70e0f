import time

import pytest

_LINES = []


class _Criterion:
    def __init__(self, number, title, limit):
        self.number, self.title, self.limit = number, title, limit

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        ok = exc_type is None and (self.limit is None or elapsed < self.limit)
        limit = f" (limit {self.limit:.0f} s)" if self.limit else ""
        detail = "" if exc_type is None else f": {exc_type.__name__}: {exc}".splitlines()[0][:160]
        _LINES.append(f"{'PASS' if ok else 'FAIL'} criterion {self.number:>2} {self.title} [{elapsed:.2f} s{limit}]{detail}")
        print(_LINES[-1])
        if exc_type is None and not ok:
            raise AssertionError(f"criterion {self.number} took {elapsed:.1f} s, limit {self.limit} s")
        return False


@pytest.fixture
def criterion():
    return _Criterion


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_LINES, key=lambda s: int(s.split()[2])):
            terminalreporter.write_line(line)
