import itertools
import math
import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from clustnet.construction import random_connected_graph
from clustnet.degrees import DistSpec, sample_degree_sequence
from clustnet.graph import Graph, GraphError
from clustnet.netstats import (
    assortativity,
    diameter,
    full_stats,
    modularity_partition,
    partition_modularity,
    path_length_distribution,
)

from conftest import complete_graph, cycle_graph, path_graph, random_simple_graph, star_graph


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.node_count))
    h.add_edges_from(g.edges())
    return h


def pearson_oracle(g: Graph):
    """Two-pass covariance over oriented edges, independent of the library code."""
    pairs = []
    for i, j in g.edges():
        pairs.append((g.degree(i), g.degree(j)))
        pairs.append((g.degree(j), g.degree(i)))
    n = len(pairs)
    mx = sum(a for a, _ in pairs) / n
    my = sum(b for _, b in pairs) / n
    sxy = sum((a - mx) * (b - my) for a, b in pairs)
    sxx = sum((a - mx) ** 2 for a, _ in pairs)
    syy = sum((b - my) ** 2 for _, b in pairs)
    if sxx == 0 or syy == 0:
        return None
    return sxy / math.sqrt(sxx * syy)


def set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for k in range(len(part)):
            yield part[:k] + [[first] + part[k]] + part[k + 1 :]
        yield [[first]] + part


def test_star_assortativity():
    assert assortativity(star_graph(4)) == pytest.approx(-1.0, abs=1e-12)


def test_regular_assortativity_undefined():
    assert assortativity(cycle_graph(6)) is None


def test_assortativity_matches_oracles():
    rng = random.Random(21)
    checked = 0
    while checked < 20:
        g = random_simple_graph(rng, rng.randint(5, 60), rng.uniform(0.05, 0.3))
        expected = pearson_oracle(g) if g.edge_count else None
        if expected is None:
            continue
        assert assortativity(g) == pytest.approx(expected, abs=1e-12)
        assert assortativity(g) == pytest.approx(nx.degree_pearson_correlation_coefficient(to_nx(g)), abs=1e-9)
        checked += 1


@settings(max_examples=40, deadline=None)
@given(st.integers(5, 40), st.integers(0, 10**6))
def test_assortativity_relabel_invariant(n, seed):
    rng = random.Random(seed)
    g = random_simple_graph(rng, n, 0.2)
    perm = list(range(n))
    rng.shuffle(perm)
    h = Graph(n, [(perm[i], perm[j]) for i, j in g.edges()])
    a, b = assortativity(g), assortativity(h)
    if a is None:
        assert b is None
    else:
        assert a == pytest.approx(b, abs=1e-12)


def test_single_community_modularity_zero():
    g = random_simple_graph(random.Random(1), 30, 0.2)
    assert partition_modularity(g, [range(30)]) == pytest.approx(0.0, abs=1e-15)


def test_two_cliques_joined():
    edges = list(itertools.combinations(range(5), 2)) + list(itertools.combinations(range(5, 10), 2)) + [(4, 5)]
    g = Graph(10, edges)
    parts, q = modularity_partition(g)
    assert sorted(map(sorted, parts)) == [[0, 1, 2, 3, 4], [5, 6, 7, 8, 9]]
    assert q > 0.4
    # direct from the definition: each clique holds 10 of 21 edges and degree sum 21
    assert q == pytest.approx(2 * (10 / 21 - (21 / 42) ** 2), abs=1e-12)


def test_k6_greedy_bounded_by_exhaustive():
    g = complete_graph(6)
    best = max(partition_modularity(g, p) for p in set_partitions(list(range(6))))
    parts, q = modularity_partition(g)
    assert q <= best + 1e-12
    assert q >= -1e-12


def test_modularity_reproduces_direct_evaluation():
    rng = random.Random(5)
    for _ in range(30):
        g = random_simple_graph(rng, rng.randint(4, 60), rng.uniform(0.05, 0.3))
        if g.edge_count == 0:
            continue
        parts, q = modularity_partition(g)
        assert sorted(u for p in parts for u in p) == list(range(g.node_count))
        assert abs(q - partition_modularity(g, parts)) <= 1e-12
        assert q >= -1e-12
        assert q <= 1.0


def test_modularity_close_to_networkx_greedy():
    rng = random.Random(6)
    g = random_connected_graph(sample_degree_sequence(DistSpec("poisson", lam=5), 200, rng), rng)
    _, q = modularity_partition(g)
    ref = nx.community.modularity(to_nx(g), nx.community.greedy_modularity_communities(to_nx(g)))
    assert abs(q - ref) < 0.05


def test_diameter_examples():
    assert diameter(path_graph(5)) == 4
    assert diameter(complete_graph(7)) == 1
    assert diameter(cycle_graph(6)) == 3
    with pytest.raises(GraphError):
        diameter(Graph(4, [(0, 1), (2, 3)]))


def test_path_length_examples():
    assert path_length_distribution(complete_graph(3)) == ([1.0, 1.0, 1.0], 1.0)
    means, avg = path_length_distribution(path_graph(3))
    assert means == [1.5, 1.0, 1.5]
    assert avg == pytest.approx(4 / 3)
    # P5 by hand: end nodes 10/4, next 7/4, centre 6/4
    means, _ = path_length_distribution(path_graph(5))
    assert means == [2.5, 1.75, 1.5, 1.75, 2.5]


def test_path_lengths_match_networkx():
    rng = random.Random(8)
    g = random_connected_graph(sample_degree_sequence(DistSpec("poisson", lam=4), 150, rng), rng)
    _, avg = path_length_distribution(g)
    assert avg == pytest.approx(nx.average_shortest_path_length(to_nx(g)), abs=1e-12)
    assert diameter(g) == nx.diameter(to_nx(g))


def test_full_stats_k5():
    s = full_stats(complete_graph(5))
    assert (s.n, s.mean_degree, s.mean_sq_degree, s.transitivity, s.diameter) == (5, 4.0, 16.0, 1.0, 1)
    assert s.modularity == 0.0
    assert s.assortativity is None


def test_full_stats_star():
    s = full_stats(star_graph(4))
    assert s.mean_degree == pytest.approx(1.6)
    assert s.mean_sq_degree == pytest.approx(4.0)
    assert s.transitivity == 0
    assert s.sv_transitivity is None
    assert s.diameter == 2
    assert s.assortativity == pytest.approx(-1.0)


def test_full_stats_generated_graph_populated():
    rng = random.Random(10)
    g = random_connected_graph(sample_degree_sequence(DistSpec("poisson", lam=5), 500, rng), rng)
    s = full_stats(g)
    for name, value in s.as_dict().items():
        assert value is not None, name
        assert math.isfinite(value)
    assert -1 <= s.assortativity <= 1
    assert -0.5 <= s.modularity <= 1
    assert s.diameter >= s.mean_path_length >= 1
