import itertools
import random
from collections import Counter

import pytest
from scipy.stats import chisquare

from clustnet.construction import ConstructionError, havel_hakimi, random_connected_graph, randomize, taylor_connect
from clustnet.degrees import DistSpec, sample_degree_sequence
from clustnet.graph import Graph, is_connected

from conftest import complete_graph, cycle_graph, star_graph


def test_havel_hakimi_triangle():
    assert havel_hakimi([2, 2, 2]) == complete_graph(3)


def test_havel_hakimi_star():
    assert havel_hakimi([4, 1, 1, 1, 1]) == star_graph(4)


def test_havel_hakimi_exact_degrees():
    g = havel_hakimi([3, 3, 2, 2, 2])
    assert g.degrees == [3, 3, 2, 2, 2]
    g.check_invariants()


def test_havel_hakimi_rejects_unrealizable():
    with pytest.raises(ConstructionError):
        havel_hakimi([3, 3, 1, 1])


def test_havel_hakimi_deterministic():
    seq = sample_degree_sequence(DistSpec("poisson", lam=4.0), 60, random.Random(9))
    assert havel_hakimi(seq) == havel_hakimi(seq)


def test_taylor_connect_two_triangles():
    g = Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    out = taylor_connect(g, random.Random(0))
    assert is_connected(out)
    assert out.degrees == [2] * 6
    # input untouched
    assert not is_connected(g)


def test_taylor_connect_connected_unchanged():
    g = cycle_graph(7)
    assert taylor_connect(g, random.Random(0)) == g


def test_taylor_connect_two_edges_impossible():
    # [1,1,1,1] has sum 4 < 2(N-1) = 6: no connected realization exists
    with pytest.raises(ConstructionError):
        taylor_connect(Graph(4, [(0, 1), (2, 3)]), random.Random(0))


def test_randomize_zero_steps_unchanged():
    g = cycle_graph(8)
    assert randomize(g, 0, random.Random(0)) == g


def test_randomize_triangle_stays_triangle():
    assert randomize(complete_graph(3), 100, random.Random(0)) == complete_graph(3)


def test_randomize_preserves_degrees_and_connectivity():
    rng = random.Random(4)
    seq = sample_degree_sequence(DistSpec("poisson", lam=4.0), 80, rng)
    g = random_connected_graph(seq, rng, steps=0)
    out = randomize(g, 5000, rng)
    assert out.degrees == g.degrees
    assert out.edge_count == g.edge_count
    assert is_connected(out)
    out.check_invariants()


def test_pipeline_on_random_sequences():
    rng = random.Random(2024)
    done = 0
    while done < 200:
        n = rng.randint(3, 100)
        family = rng.choice(["poisson", "exponential", "scalefree"])
        seq = sample_degree_sequence(DistSpec(family, lam=rng.uniform(2, 6)), n, rng)
        if sum(seq) < 2 * (n - 1):
            continue
        g = random_connected_graph(seq, rng)
        assert g.degrees == seq
        assert is_connected(g)
        g.check_invariants()
        done += 1


def _labeled_hamiltonian_cycles(n):
    out = set()
    for perm in itertools.permutations(range(1, n)):
        order = (0, *perm)
        out.add(frozenset(frozenset((order[i], order[(i + 1) % n])) for i in range(n)))
    return out


def test_randomize_uniform_over_six_cycles():
    cycles = _labeled_hamiltonian_cycles(6)
    assert len(cycles) == 60
    rng = random.Random(77)
    start = cycle_graph(6)
    counts = Counter()
    trials = 10_000
    for _ in range(trials):
        g = randomize(start, 60, rng)
        key = frozenset(frozenset(e) for e in g.edges())
        assert key in cycles
        counts[key] += 1
    observed = [counts[c] for c in cycles]
    p = chisquare(observed).pvalue
    assert p > 1e-3, p
