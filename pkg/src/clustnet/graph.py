"""Mutable simple undirected graph on dense integer node ids."""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Iterator


class GraphError(ValueError):
    """Raised when a mutation would break simplicity or targets a missing edge."""


class Graph:
    """Simple undirected graph stored as per-node neighbor sets.

    Nodes are the integers ``0..n-1``. Degrees are the sizes of the
    neighbor sets, so they cannot drift from the adjacency.
    """

    __slots__ = ("adj", "edge_count", "_seen", "_stamp")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise GraphError(f"node count must be non-negative, got {n}")
        self.adj: list[set[int]] = [set() for _ in range(n)]
        self.edge_count = 0
        # visit stamps reused across traversals
        self._seen = [0] * n
        self._stamp = 0
        for i, j in edges:
            self.add_edge(i, j)

    @property
    def node_count(self) -> int:
        return len(self.adj)

    def degree(self, i: int) -> int:
        return len(self.adj[i])

    @property
    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def has_edge(self, i: int, j: int) -> bool:
        return j in self.adj[i]

    def neighbors(self, i: int) -> set[int]:
        return self.adj[i]

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield every edge once as ``(i, j)`` with ``i < j``, in node order."""
        for i, nbrs in enumerate(self.adj):
            for j in sorted(nbrs):
                if i < j:
                    yield i, j

    def add_edge(self, i: int, j: int) -> None:
        if i == j:
            raise GraphError(f"self-loop at node {i}")
        self._check_node(i)
        self._check_node(j)
        if j in self.adj[i]:
            raise GraphError(f"duplicate edge ({i}, {j})")
        self.adj[i].add(j)
        self.adj[j].add(i)
        self.edge_count += 1

    def remove_edge(self, i: int, j: int) -> None:
        if i == j or not (0 <= i < len(self.adj)) or j not in self.adj[i]:
            raise GraphError(f"edge ({i}, {j}) not found")
        self.adj[i].remove(j)
        self.adj[j].remove(i)
        self.edge_count -= 1

    def copy(self) -> Graph:
        g = Graph(len(self.adj))
        g.adj = [set(a) for a in self.adj]
        g.edge_count = self.edge_count
        return g

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.adj == other.adj

    def __repr__(self) -> str:
        return f"Graph(n={self.node_count}, m={self.edge_count})"

    def _check_node(self, i: int) -> None:
        if not 0 <= i < len(self.adj):
            raise GraphError(f"node {i} out of range 0..{len(self.adj) - 1}")

    def _next_stamp(self) -> int:
        self._stamp += 1
        if len(self._seen) != len(self.adj):
            self._seen = [0] * len(self.adj)
        return self._stamp

    def check_invariants(self) -> None:
        """Assert simplicity, symmetry and the handshake identity."""
        total = 0
        for i, nbrs in enumerate(self.adj):
            assert i not in nbrs, f"self-loop at {i}"
            for j in nbrs:
                assert i in self.adj[j], f"asymmetric edge ({i}, {j})"
            total += len(nbrs)
        assert total == 2 * self.edge_count


def is_connected(g: Graph) -> bool:
    """BFS from node 0; True iff every node is reached."""
    n = g.node_count
    if n == 0:
        raise GraphError("connectivity of the empty graph is undefined")
    adj = g.adj
    seen = g._seen
    stamp = g._next_stamp()
    seen[0] = stamp
    queue = deque([0])
    reached = 1
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if seen[v] != stamp:
                seen[v] = stamp
                reached += 1
                queue.append(v)
    return reached == n


def connected_components(g: Graph) -> list[list[int]]:
    """Components as sorted node lists, ordered by smallest member."""
    comp = [-1] * g.node_count
    out: list[list[int]] = []
    for s in range(g.node_count):
        if comp[s] >= 0:
            continue
        c = len(out)
        comp[s] = c
        members = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in g.adj[u]:
                if comp[v] < 0:
                    comp[v] = c
                    members.append(v)
                    queue.append(v)
        out.append(sorted(members))
    return out


def reachable(g: Graph, a: int, b: int) -> bool:
    """Whether ``b`` can be reached from ``a``.

    Grows two BFS balls, always expanding the one with the smaller
    frontier. Stops when the balls touch or when one side runs out,
    so the cost is bounded by the smaller of the two components.
    """
    if a == b:
        return True
    adj = g.adj
    seen = g._seen
    sa = g._next_stamp()
    sb = g._next_stamp()
    seen[a] = sa
    seen[b] = sb
    front_a = [a]
    front_b = [b]
    while front_a and front_b:
        if len(front_a) <= len(front_b):
            own, other, front = sa, sb, front_a
        else:
            own, other, front = sb, sa, front_b
        nxt = []
        for u in front:
            for v in adj[u]:
                s = seen[v]
                if s == other:
                    return True
                if s != own:
                    seen[v] = own
                    nxt.append(v)
        if own == sa:
            front_a = nxt
        else:
            front_b = nxt
    return False


def degree_sequence(g: Graph) -> list[int]:
    return g.degrees
