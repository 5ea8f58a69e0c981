import itertools
import math
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from clustnet.degrees import DegreeModelError, DistSpec, is_realizable, sample_degree_sequence, spec_for_mean


def enumerated_degree_sequences(n: int) -> set[tuple[int, ...]]:
    """Sorted degree sequences of every simple graph on ``n`` labeled nodes."""
    pairs = list(itertools.combinations(range(n), 2))
    if not pairs:
        return {(0,) * n}
    masks = np.arange(1 << len(pairs), dtype=np.int64)
    degs = np.zeros((len(masks), n), dtype=np.int64)
    for bit, (i, j) in enumerate(pairs):
        on = (masks >> bit) & 1
        degs[:, i] += on
        degs[:, j] += on
    degs.sort(axis=1)
    return {tuple(int(v) for v in row[::-1]) for row in np.unique(degs, axis=0)}


@pytest.fixture(scope="module")
def realizable_table():
    return {n: enumerated_degree_sequences(n) for n in range(1, 8)}


@pytest.mark.parametrize("seq, expected", [([1, 1, 1], False), ([2, 2, 2], True), ([3, 3, 1, 1], False)])
def test_realizable_examples(seq, expected):
    assert is_realizable(seq) is expected


def test_realizable_matches_enumeration(realizable_table):
    checked = 0
    for n in range(1, 8):
        known = realizable_table[n]
        for seq in itertools.combinations_with_replacement(range(6, -1, -1), n):
            assert is_realizable(seq) == (seq in known), seq
            checked += 1
    assert checked > 3000


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 6), min_size=1, max_size=7))
def test_realizable_is_order_independent(seq):
    shuffled = list(seq)
    random.Random(len(seq)).shuffle(shuffled)
    assert is_realizable(seq) == is_realizable(shuffled)


@pytest.mark.parametrize("family", ["poisson", "exponential", "scalefree"])
@pytest.mark.parametrize("d_max", [1, 9, 499])
def test_pmf_normalized(family, d_max):
    p = DistSpec(family).pmf(d_max)
    assert len(p) == d_max
    assert abs(math.fsum(p) - 1.0) <= 1e-12
    assert all(v >= 0 for v in p)


def test_exponential_pmf_closed_form():
    kappa = math.log(1.25)
    p = DistSpec("exponential", kappa=kappa).pmf(400)
    # geometric tail is negligible at d_max=400, so the untruncated form applies
    for d in (1, 2, 5, 20):
        assert p[d - 1] == pytest.approx((1 - math.exp(-kappa)) * math.exp(-kappa * (d - 1)), rel=1e-12)
    mean = math.fsum(d * v for d, v in enumerate(p, start=1))
    assert mean == pytest.approx(1 + 1 / (math.exp(kappa) - 1), rel=1e-9)
    assert mean == pytest.approx(5.0, rel=1e-9)


def test_poisson_sample_mean():
    seq = sample_degree_sequence(DistSpec("poisson", lam=5.0), 500, random.Random(1))
    assert len(seq) == 500
    assert sum(seq) % 2 == 0
    assert 4.5 <= sum(seq) / 500 <= 5.5
    assert is_realizable(seq)


def test_scalefree_truncation_bounds():
    seq = sample_degree_sequence(DistSpec("scalefree", gamma=2.0, d_max=9), 10, random.Random(2))
    assert all(1 <= d <= 9 for d in seq)


def test_exponential_sample_realizable():
    spec = DistSpec("exponential", kappa=math.log(1.25))
    seq = sample_degree_sequence(spec, 500, random.Random(3))
    assert is_realizable(seq)
    assert 4.3 <= sum(seq) / 500 <= 5.7


@pytest.mark.parametrize("family", ["poisson", "exponential", "scalefree"])
def test_spec_for_mean_hits_mean(family):
    spec = spec_for_mean(family, 5.0, 499)
    assert spec.mean(499) == pytest.approx(5.0, abs=1e-9)


def test_invalid_parameters():
    with pytest.raises(DegreeModelError):
        DistSpec("poisson", lam=0)
    with pytest.raises(DegreeModelError):
        DistSpec("scalefree", gamma=1.0)
    with pytest.raises(DegreeModelError):
        DistSpec("gaussian")
    with pytest.raises(DegreeModelError):
        sample_degree_sequence(DistSpec("poisson"), 1, random.Random(0))
    with pytest.raises(DegreeModelError):
        sample_degree_sequence(DistSpec("poisson", d_max=10), 5, random.Random(0))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["poisson", "exponential", "scalefree"]), st.integers(2, 80), st.integers(0, 10**6))
def test_samples_always_realizable(family, n, seed):
    seq = sample_degree_sequence(DistSpec(family, lam=3.0), n, random.Random(seed))
    assert len(seq) == n
    assert min(seq) >= 1
    assert max(seq) <= n - 1
    assert is_realizable(seq)
