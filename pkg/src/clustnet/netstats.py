"""Structure statistics for comparing generated graphs against each other or empirical ones."""

from __future__ import annotations

import heapq
import math
from collections import deque
from dataclasses import asdict, dataclass

from .clustering import UndefinedMeasure, sv_transitivity, transitivity
from .graph import Graph, GraphError, is_connected


@dataclass(frozen=True)
class NetStats:
    n: int
    mean_degree: float
    mean_sq_degree: float
    transitivity: float | None
    sv_transitivity: float | None
    diameter: int
    assortativity: float | None
    modularity: float
    mean_path_length: float

    def as_dict(self) -> dict:
        return asdict(self)


def assortativity(g: Graph) -> float | None:
    """Degree-degree Pearson correlation over edges taken in both directions.

    ``None`` when every edge end has the same degree.
    """
    degs = g.degrees
    xs = []
    ys = []
    for i, j in g.edges():
        xs += (degs[i], degs[j])
        ys += (degs[j], degs[i])
    if not xs:
        return None
    n = len(xs)
    mean = math.fsum(xs) / n
    # both orientations make the two marginals identical
    var = math.fsum((a - mean) ** 2 for a in xs) / n
    if var == 0:
        return None
    cov = math.fsum((a - mean) * (b - mean) for a, b in zip(xs, ys)) / n
    return cov / var


def partition_modularity(g: Graph, communities) -> float:
    """Modularity of a partition given as an iterable of node collections."""
    m = g.edge_count
    if m == 0:
        raise ValueError("modularity undefined on a graph with no edges")
    label = {}
    for c, nodes in enumerate(communities):
        for u in nodes:
            label[u] = c
    internal = {}
    degree = {}
    for i, j in g.edges():
        if label[i] == label[j]:
            internal[label[i]] = internal.get(label[i], 0) + 1
    for u in range(g.node_count):
        degree[label[u]] = degree.get(label[u], 0) + len(g.adj[u])
    return math.fsum(internal.get(c, 0) / m - (dc / (2 * m)) ** 2 for c, dc in degree.items())


def modularity_partition(g: Graph) -> tuple[list[list[int]], float]:
    """Greedy agglomerative modularity maximization.

    Starts from singletons and repeatedly merges the pair of adjacent
    communities with the largest gain while the gain is positive. Gains
    are compared as exact integers, ``2M * L_ab - D_a * D_b``, and ties go
    to the smallest ``(a, b)`` id pair. A merged community keeps the
    smaller id. If the result scores below the one-community partition,
    that partition is returned instead.
    """
    n = g.node_count
    m = g.edge_count
    if m == 0:
        raise ValueError("modularity undefined on a graph with no edges")
    two_m = 2 * m
    deg = [len(a) for a in g.adj]
    links: list[dict[int, int]] = [dict() for _ in range(n)]
    for i, j in g.edges():
        links[i][j] = 1
        links[j][i] = 1
    members = [[i] for i in range(n)]
    alive = [True] * n
    version = [0] * n

    heap = []

    def push(a, b):
        if a > b:
            a, b = b, a
        gain = two_m * links[a][b] - deg[a] * deg[b]
        heapq.heappush(heap, (-gain, a, b, version[a], version[b]))

    for i in range(n):
        for j in links[i]:
            if i < j:
                push(i, j)

    while heap:
        neg_gain, a, b, va, vb = heapq.heappop(heap)
        if not (alive[a] and alive[b]) or version[a] != va or version[b] != vb:
            continue
        if neg_gain >= 0:
            break
        # merge b into a (a < b)
        for c, w in links[b].items():
            if c == a:
                continue
            links[a][c] = links[a].get(c, 0) + w
            del links[c][b]
            links[c][a] = links[a][c]
        del links[a][b]
        links[b] = {}
        deg[a] += deg[b]
        members[a].extend(members[b])
        alive[b] = False
        version[a] += 1
        for c in links[a]:
            push(a, c)

    parts = sorted(sorted(members[i]) for i in range(n) if alive[i])
    q = partition_modularity(g, parts)
    if q < 0:
        parts = [list(range(n))]
        q = 0.0
    return parts, q


def bfs_distances(g: Graph, s: int) -> list[int]:
    dist = [-1] * g.node_count
    dist[s] = 0
    queue = deque([s])
    adj = g.adj
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for v in adj[u]:
            if dist[v] < 0:
                dist[v] = du
                queue.append(v)
    return dist


def _require_connected(g: Graph) -> None:
    if g.node_count == 0 or not is_connected(g):
        raise GraphError("path statistics need a connected graph")


def eccentricities_and_means(g: Graph) -> tuple[list[int], list[float]]:
    _require_connected(g)
    n = g.node_count
    ecc = []
    means = []
    for s in range(n):
        dist = bfs_distances(g, s)
        ecc.append(max(dist))
        means.append(sum(dist) / (n - 1) if n > 1 else 0.0)
    return ecc, means


def diameter(g: Graph) -> int:
    ecc, _ = eccentricities_and_means(g)
    return max(ecc)


def path_length_distribution(g: Graph) -> tuple[list[float], float]:
    """Each node's mean distance to the other ``N - 1`` nodes, and their average."""
    _, means = eccentricities_and_means(g)
    return means, math.fsum(means) / len(means)


def full_stats(g: Graph) -> NetStats:
    ecc, means = eccentricities_and_means(g)
    degs = g.degrees
    n = g.node_count
    try:
        t = transitivity(g)
    except UndefinedMeasure:
        t = None
    try:
        tt = sv_transitivity(g)
    except UndefinedMeasure:
        tt = None
    if g.edge_count:
        _, q = modularity_partition(g)
    else:
        q = 0.0
    return NetStats(
        n=n,
        mean_degree=sum(degs) / n,
        mean_sq_degree=sum(d * d for d in degs) / n,
        transitivity=t,
        sv_transitivity=tt,
        diameter=max(ecc),
        assortativity=assortativity(g),
        modularity=q,
        mean_path_length=math.fsum(means) / n,
    )
