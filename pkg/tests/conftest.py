"""Shared test plumbing: acceptance-line reporting."""

import pytest

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance():
    """Record one PASS/FAIL line per acceptance criterion.

    Lines are echoed immediately (visible with -s or on failure) and again
    in the terminal summary, where capture is off.
    """

    def record(criterion: int, ok: bool, detail: str) -> bool:
        line = f"[ACCEPTANCE] criterion {criterion}: {'PASS' if ok else 'FAIL'} {detail}"
        _ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.ensure_newline()
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
