import random

import pytest

from cyclelab import Digraph


@pytest.fixture
def rng():
    return random.Random(20240601)


@pytest.fixture
def k22():
    return Digraph.complete_bipartite(2, 2)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
