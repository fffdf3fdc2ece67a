"""Shared test plumbing.

The acceptance tests record one line per criterion; the terminal-summary
hook replays those lines at the end of the run so the verdicts are visible
even though pytest captures per-test output.
"""

from __future__ import annotations

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
