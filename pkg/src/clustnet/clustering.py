"""Triangle, triple and possible-triangle counts and the four clustering measures.

All counts are exact integers. Ratios are only formed when a measure
value is requested.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .graph import Graph


class UndefinedMeasure(ValueError):
    """The requested clustering measure has a zero denominator on this graph."""


class Measure(str, Enum):
    TRIANGLES = "triangles"
    C = "C"
    T = "T"
    SV_C = "Ctilde"
    SV_T = "Ttilde"

    @classmethod
    def parse(cls, name: str) -> Measure:
        try:
            return cls(name)
        except ValueError:
            choices = ", ".join(m.value for m in cls)
            raise ValueError(f"unknown measure {name!r}; expected one of {choices}") from None


@dataclass(frozen=True)
class NodeClusteringStats:
    delta: int
    tau: int
    omega: int


def node_triangles(g: Graph, i: int) -> int:
    adj = g.adj
    ni = adj[i]
    return sum(len(ni & adj[j]) for j in ni) // 2


def triangle_count(g: Graph) -> tuple[list[int], int]:
    """Per-node triangle counts and the number of triangles in the graph."""
    per_node = [node_triangles(g, i) for i in range(g.node_count)]
    total, rem = divmod(sum(per_node), 3)
    assert rem == 0
    return per_node, total


def triple_count(g: Graph) -> tuple[list[int], int]:
    per_node = [d * (d - 1) // 2 for d in g.degrees]
    return per_node, sum(per_node)


def _pair_slots(degs: list[int], i: int, j: int) -> int:
    # edges neighbor j can spend on i's other neighbors
    return min(degs[j] - 1, degs[i] - 1)


def omega_slot_sum(g: Graph, i: int, degs: list[int] | None = None) -> int:
    if degs is None:
        degs = g.degrees
    return sum(_pair_slots(degs, i, j) for j in g.adj[i])


def omega_from_slots(d: int, slots: int) -> int:
    return min(d * (d - 1) // 2, slots // 2)


def omega(g: Graph) -> tuple[list[int], int]:
    """Possible triangles per node.

    Neighbor ``j`` of ``i`` has ``d_j - 1`` edges left besides the one to
    ``i`` and can use at most ``d_i - 1`` of them inside ``i``'s
    neighborhood; half the summed capacity bounds the edges among the
    neighbors, and ``C(d_i, 2)`` caps it from above.
    """
    degs = g.degrees
    per_node = [omega_from_slots(degs[i], omega_slot_sum(g, i, degs)) for i in range(g.node_count)]
    return per_node, sum(per_node)


def node_stats(g: Graph) -> list[NodeClusteringStats]:
    delta, _ = triangle_count(g)
    tau, _ = triple_count(g)
    om, _ = omega(g)
    return [NodeClusteringStats(a, b, c) for a, b, c in zip(delta, tau, om)]


def clustering_coefficient(g: Graph) -> float:
    delta, _ = triangle_count(g)
    terms = [delta[i] / (d * (d - 1) / 2) for i, d in enumerate(g.degrees) if d >= 2]
    if not terms:
        raise UndefinedMeasure("clustering coefficient undefined: no node has degree >= 2")
    return math.fsum(terms) / len(terms)


def transitivity(g: Graph) -> float:
    _, tri = triangle_count(g)
    _, tau = triple_count(g)
    if tau == 0:
        raise UndefinedMeasure("transitivity undefined: graph has no triples")
    return 3 * tri / tau


def sv_clustering(g: Graph) -> float:
    delta, _ = triangle_count(g)
    om, _ = omega(g)
    terms = [d / w for d, w in zip(delta, om) if w > 0]
    if not terms:
        raise UndefinedMeasure("degree-corrected clustering undefined: omega(G) = 0")
    return math.fsum(terms) / len(terms)


def sv_transitivity(g: Graph) -> float:
    delta, _ = triangle_count(g)
    _, om = omega(g)
    if om == 0:
        raise UndefinedMeasure("degree-corrected transitivity undefined: omega(G) = 0")
    return sum(delta) / om


def measure_value(g: Graph, measure: Measure) -> float:
    measure = Measure(measure)
    if measure is Measure.TRIANGLES:
        return float(triangle_count(g)[1])
    return {
        Measure.C: clustering_coefficient,
        Measure.T: transitivity,
        Measure.SV_C: sv_clustering,
        Measure.SV_T: sv_transitivity,
    }[measure](g)


@dataclass
class TriangleChange:
    """Triangles gained and lost by one rewiring, split by how they arise.

    ``a``: the triangle closed by the new ``(y1, y2)`` edge through ``x``.
    ``b``: other triangles on ``(y1, y2)``.
    ``c``: the triangle on ``(z1, z2)`` through ``x``.
    ``d``: other triangles on ``(z1, z2)``.
    ``e``: triangles through ``x`` lost with ``(y1, z1)`` or ``(y2, z2)``.
    ``f``: other triangles lost with those edges.
    """

    a: int
    b: int
    c: int
    d: int
    e: int
    f: int
    node_deltas: dict[int, int] = field(default_factory=dict)

    @property
    def gains(self) -> int:
        return self.a + self.b + self.c + self.d

    @property
    def losses(self) -> int:
        return self.e + self.f

    @property
    def total(self) -> int:
        return self.gains - self.losses


class InvalidMove(ValueError):
    pass


def check_move(g: Graph, m) -> None:
    x, y1, y2, z1, z2 = m.x, m.y1, m.y2, m.z1, m.z2
    if len({x, y1, y2, z1, z2}) != 5:
        raise InvalidMove(f"move nodes must be distinct: {m}")
    adj = g.adj
    if y1 not in adj[x] or y2 not in adj[x]:
        raise InvalidMove(f"y1, y2 must both neighbor x: {m}")
    if z1 not in adj[y1] or z2 not in adj[y2]:
        raise InvalidMove(f"edges to delete are missing: {m}")
    if y2 in adj[y1] or z2 in adj[z1]:
        raise InvalidMove(f"edges to add already exist: {m}")


def rewire_triangle_delta(g: Graph, m, validate: bool = True) -> TriangleChange:
    """Triangle change from deleting (y1,z1),(y2,z2) and adding (y1,y2),(z1,z2).

    Read from the neighborhoods of the five move nodes; ``g`` is not touched.
    No triangle can hold both deleted edges or both added edges, since
    those pairs share no endpoint, so each change is counted once.
    """
    if validate:
        check_move(g, m)
    adj = g.adj
    x, y1, y2, z1, z2 = m.x, m.y1, m.y2, m.z1, m.z2
    n_y1, n_y2, n_z1, n_z2 = adj[y1], adj[y2], adj[z1], adj[z2]

    lost1 = n_y1 & n_z1
    lost2 = n_y2 & n_z2
    gain_y = (n_y1 - {z1}) & (n_y2 - {z2})
    gain_z = (n_z1 - {y1}) & (n_z2 - {y2})

    c = 1 if x in gain_z else 0
    e = (x in lost1) + (x in lost2)
    change = TriangleChange(
        a=1,
        b=len(gain_y) - 1,
        c=c,
        d=len(gain_z) - c,
        e=e,
        f=len(lost1) + len(lost2) - e,
    )
    nd = change.node_deltas
    for w in gain_y:
        nd[w] = nd.get(w, 0) + 1
    for w in gain_z:
        nd[w] = nd.get(w, 0) + 1
    for w in lost1:
        nd[w] = nd.get(w, 0) - 1
    for w in lost2:
        nd[w] = nd.get(w, 0) - 1
    nd[y1] = nd.get(y1, 0) + len(gain_y) - len(lost1)
    nd[y2] = nd.get(y2, 0) + len(gain_y) - len(lost2)
    nd[z1] = nd.get(z1, 0) + len(gain_z) - len(lost1)
    nd[z2] = nd.get(z2, 0) + len(gain_z) - len(lost2)
    return change
