from __future__ import annotations

import contextlib
from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"

_ACCEPTANCE: list[str] = []


@pytest.fixture
def data_dir() -> Path:
    return DATA


@pytest.fixture
def criterion():
    """Context manager that records one PASS/FAIL line per acceptance criterion."""

    @contextlib.contextmanager
    def _record(number: str, title: str):
        try:
            yield
        except BaseException:
            line = f"criterion {number:>3}  FAIL  {title}"
            _ACCEPTANCE.append(line)
            print(line)
            raise
        line = f"criterion {number:>3}  PASS  {title}"
        _ACCEPTANCE.append(line)
        print(line)

    return _record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")

        def order(line):
            number = line.split()[1]
            digits = "".join(ch for ch in number if ch.isdigit())
            return int(digits), number

        for line in sorted(_ACCEPTANCE, key=order):
            terminalreporter.write_line(line)
