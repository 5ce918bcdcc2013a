"""Shared pytest hooks.

The acceptance tests register one status line per numbered criterion;
echo them in a summary section so the verdicts survive output capture.
"""

acceptance_lines = []


def pytest_terminal_summary(terminalreporter):
    if acceptance_lines:
        terminalreporter.section("acceptance checklist")
        for line in acceptance_lines:
            terminalreporter.write_line(line)
