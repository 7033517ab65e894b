"""Prints the acceptance scoreboard after the run: one line per criterion."""

import re

_NODE_RE = re.compile(r"test_acceptance\.py::test_(\d+)_(\w+)")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    rows = {}
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            match = _NODE_RE.search(getattr(report, "nodeid", ""))
            if match:
                rows[int(match.group(1))] = (outcome, match.group(2).replace("_", " "))
    if not rows:
        return
    terminalreporter.write_sep("-", "acceptance criteria (exact, tolerance zero)")
    for number in sorted(rows):
        outcome, description = rows[number]
        word = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line("%s %2d  %s" % (word, number, description))
