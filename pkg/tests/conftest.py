import itertools
import random

import pytest

ACCEPTANCE_LINES = []


def battery():
    """All sequences with r <= 2 and entries in -2..2, plus 50 seeded r = 3 sequences."""
    seqs = [()]
    for r in (1, 2):
        seqs.extend(itertools.product(range(-2, 3), repeat=r))
    rng = random.Random(1109)
    seqs.extend(tuple(rng.choice((-1, 0, 1)) for _ in range(3)) for _ in range(50))
    return [list(s) for s in seqs]


@pytest.fixture(scope="session")
def seq_battery():
    return battery()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(line[1])
