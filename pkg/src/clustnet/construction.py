"""Simple connected random graphs with an exact degree sequence.

The pipeline is Havel-Hakimi realization, then merging components by
edge swaps, then connectivity-preserving double-edge-swap randomization.
"""

from __future__ import annotations

import random
from bisect import bisect_right
from itertools import accumulate

from .degrees import is_realizable
from .graph import Graph, connected_components, is_connected, reachable


class ConstructionError(ValueError):
    pass


def havel_hakimi(seq) -> Graph:
    """Deterministic realization of a graphical sequence.

    Repeatedly takes the node with the largest residual degree (lowest id
    on ties) and joins it to the nodes with the next largest residuals.
    """
    seq = [int(d) for d in seq]
    if not is_realizable(seq):
        raise ConstructionError(f"degree sequence is not graphical: {seq}")
    g = Graph(len(seq))
    res = list(seq)
    order = sorted((i for i in range(len(seq)) if res[i] > 0), key=lambda i: (-res[i], i))
    while order:
        x = order[0]
        k = res[x]
        targets = order[1 : k + 1]
        if len(targets) < k:
            raise ConstructionError("ran out of partners; sequence not graphical")
        res[x] = 0
        for t in targets:
            g.add_edge(x, t)
            res[t] -= 1
        # nearly sorted after the decrement, so timsort stays cheap
        order = sorted((i for i in order[1:] if res[i] > 0), key=lambda i: (-res[i], i))
    return g


def _swap_merges(g: Graph, i: int, j: int, k: int, l: int, target_size: int) -> bool:
    """Try (i,j),(k,l) -> (i,k),(j,l); keep it only if i's component reaches ``target_size``."""
    if g.has_edge(i, k) or g.has_edge(j, l):
        return False
    g.remove_edge(i, j)
    g.remove_edge(k, l)
    g.add_edge(i, k)
    g.add_edge(j, l)
    if _component_size(g, i) == target_size:
        return True
    g.remove_edge(i, k)
    g.remove_edge(j, l)
    g.add_edge(i, j)
    g.add_edge(k, l)
    return False


def _component_size(g: Graph, s: int) -> int:
    seen = {s}
    stack = [s]
    while stack:
        u = stack.pop()
        for v in g.adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen)


def taylor_connect(g: Graph, rng: random.Random, max_tries: int = 10_000) -> Graph:
    """Merge components with degree-preserving swaps until the graph is connected.

    Each swap takes a random edge from a component that has a cycle and a
    random edge from another component; it is kept only if the two
    components become one. Works on a copy.
    """
    g = g.copy()
    n = g.node_count
    if n <= 1:
        return g
    degs = g.degrees
    if min(degs) == 0 or sum(degs) < 2 * (n - 1):
        raise ConstructionError("degree sequence admits no connected simple realization")
    comps = connected_components(g)
    tries = 0
    while len(comps) > 1:
        cyclic = [c for c in comps if _edge_count(g, c) >= len(c)]
        if not cyclic:
            raise ConstructionError("no component has a cycle; cannot merge")
        a = rng.choice(cyclic)
        b = rng.choice([c for c in comps if c is not a])
        i = rng.choice(a)
        j = rng.choice(sorted(g.adj[i]))
        k = rng.choice(b)
        l = rng.choice(sorted(g.adj[k]))
        if _swap_merges(g, i, j, k, l, len(a) + len(b)):
            comps = [c for c in comps if c is not a and c is not b] + [sorted(a + b)]
            comps.sort()
        tries += 1
        if tries > max_tries:
            raise ConstructionError(f"could not connect graph within {max_tries} swaps")
    return g


def _edge_count(g: Graph, nodes: list[int]) -> int:
    return sum(len(g.adj[u]) for u in nodes) // 2


def randomize(g: Graph, steps: int | None, rng: random.Random) -> Graph:
    """Connectivity-preserving double-edge swaps on a copy of ``g``.

    Each step picks two edges uniformly, rejects pairs sharing a node,
    picks one of the two reconnections, and keeps it only if the result
    is simple and still connected. ``steps=None`` means ``10 * M``.
    """
    g = g.copy()
    m = g.edge_count
    if steps is None:
        steps = 10 * m
    if m < 2 or steps <= 0:
        return g
    adj = g.adj
    nodes = list(range(g.node_count))
    # degree-weighted node then uniform neighbor = uniform oriented edge
    cum = list(accumulate(len(a) for a in adj))
    total = cum[-1]
    rand = rng.random
    for _ in range(steps):
        i = nodes[bisect_right(cum, rand() * total)]
        j = rng.choice(tuple(adj[i]))
        k = nodes[bisect_right(cum, rand() * total)]
        l = rng.choice(tuple(adj[k]))
        if k in (i, j) or l in (i, j):
            continue
        # (i,j),(k,l) -> (i,k),(j,l); the orientation draw above covers the
        # alternative (i,l),(j,k)
        if k in adj[i] or l in adj[j]:
            continue
        g.remove_edge(i, j)
        g.remove_edge(k, l)
        g.add_edge(i, k)
        g.add_edge(j, l)
        if not reachable(g, i, j):
            g.remove_edge(i, k)
            g.remove_edge(j, l)
            g.add_edge(i, j)
            g.add_edge(k, l)
    return g


def random_connected_graph(seq, rng: random.Random, steps: int | None = None) -> Graph:
    """Full pipeline: realize, connect, randomize."""
    g = havel_hakimi(seq)
    if not is_connected(g):
        g = taylor_connect(g, rng)
    return randomize(g, steps, rng)
