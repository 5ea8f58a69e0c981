import itertools
import random

import pytest

from clustnet.graph import Graph

# criterion id -> (passed, detail); printed after the run
ACCEPTANCE_RESULTS: dict[str, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS, key=lambda k: (int(k.split()[0]), k)):
        ok, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {key}: {detail}")


def path_graph(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n):
    return Graph(n, itertools.combinations(range(n), 2))


def star_graph(leaves):
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def two_k5():
    edges = list(itertools.combinations(range(5), 2)) + list(itertools.combinations(range(5, 10), 2))
    return Graph(10, edges)


def circulant_4_regular(n=10):
    """Connected 4-regular graph: each node joined to the next two around a ring."""
    return Graph(n, [(i, (i + k) % n) for i in range(n) for k in (1, 2)])


def triangle_with_pendant():
    return Graph(4, [(0, 1), (1, 2), (0, 2), (2, 3)])


def random_simple_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph(n, [(i, j) for i, j in itertools.combinations(range(n), 2) if rng.random() < p])


def brute_triangles(g: Graph):
    """Per-node triangle counts by checking every node triple."""
    n = g.node_count
    per = [0] * n
    for a, b, c in itertools.combinations(range(n), 3):
        if g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(a, c):
            per[a] += 1
            per[b] += 1
            per[c] += 1
    return per


def union_find_connected(g: Graph) -> bool:
    parent = list(range(g.node_count))

    def find(u):
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    for i, j in g.edges():
        parent[find(i)] = find(j)
    return len({find(u) for u in range(g.node_count)}) <= 1


@pytest.fixture
def rng():
    return random.Random(12345)
