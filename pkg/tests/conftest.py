import random
from itertools import combinations

import pytest

from zxconnect.graph import Graph

# nine nodes, two components {0,1,2} and {3,...,8}; edge list deliberately unsorted
TWO_COMPONENT_EDGES = [(4, 5), (0, 1), (6, 7), (3, 4), (1, 2), (7, 8), (5, 6), (3, 8), (2, 0)]


@pytest.fixture
def two_component_graph():
    return Graph(9, tuple(TWO_COMPONENT_EDGES))


def random_multigraph(rng: random.Random, n: int, max_edges: int = 10) -> Graph:
    """Uniform endpoints, so loops and duplicates show up regularly."""
    m = rng.randint(0, max_edges)
    return Graph(n, tuple((rng.randrange(n), rng.randrange(n)) for _ in range(m)))


def all_simple_graphs(n: int, max_edges: int):
    pairs = list(combinations(range(n), 2))
    for m in range(max_edges + 1):
        for edges in combinations(pairs, m):
            yield Graph(n, edges)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            if getattr(rep, "when", "call") != "call" or "test_acceptance" not in rep.nodeid:
                continue
            name = rep.nodeid.split("::")[-1]
            lines.append((name, "PASS" if outcome == "passed" else "FAIL"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for name, status in sorted(lines):
            terminalreporter.write_line(f"{status}  {name}")
