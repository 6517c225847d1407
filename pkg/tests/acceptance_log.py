"""Collects one status line per acceptance criterion for the terminal summary."""

LINES = []


def criterion(number, description, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {description}"
    if detail:
        line += f" ({detail})"
    LINES.append(line)
    print(line)
    assert ok, line
