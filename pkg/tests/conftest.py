import time

import pytest

_RESULTS = {}


class Criterion:
    """Times a block and records whether it passed within its time limit."""

    def __init__(self, number, title, limit=None):
        self.number, self.title, self.limit = number, title, limit
        self.notes = []

    def note(self, text):
        self.notes.append(text)

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        ok = exc_type is None
        detail = "; ".join(self.notes)
        if ok and self.limit is not None and elapsed >= self.limit:
            ok = False
            detail = f"took {elapsed:.2f} s, limit {self.limit} s"
            _RESULTS[self.number] = (ok, self.title, elapsed, detail)
            raise AssertionError(detail)
        if not ok:
            detail = str(exc).splitlines()[0] if str(exc) else exc_type.__name__
        _RESULTS[self.number] = (ok, self.title, elapsed, detail)
        return False


@pytest.fixture
def criterion():
    return Criterion


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        ok, title, elapsed, detail = _RESULTS[number]
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title} ({elapsed:.2f} s)"
        if detail:
            line += f" [{detail}]"
        terminalreporter.write_line(line)
