import sys
import time
from contextlib import contextmanager
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_CRITERIA: dict[int, str] = {}


class Criterion:
    """Times one acceptance criterion and records a pass/fail line."""

    def __init__(self, number: int, title: str, limit: float):
        self.number = number
        self.title = title
        self.limit = limit
        self.notes: list[str] = []

    def note(self, text: str):
        self.notes.append(text)

    @contextmanager
    def run(self):
        t0 = time.perf_counter()
        ok = False
        try:
            yield self
            ok = True
        finally:
            dt = time.perf_counter() - t0
            within = dt < self.limit
            status = "PASS" if ok and within else "FAIL"
            extra = "; ".join(self.notes)
            line = f"criterion {self.number:>2} {status}  {self.title}  ({dt:.1f}s / limit {self.limit:.0f}s)"
            if extra:
                line += f"  [{extra}]"
            _CRITERIA[self.number] = line
            print(line)
        assert within, f"criterion {self.number} took {dt:.1f}s, limit {self.limit}s"


@pytest.fixture
def criterion():
    return Criterion


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_CRITERIA):
        terminalreporter.write_line(_CRITERIA[k])
