import random

import pytest

from clustnet.clustering import Measure, UndefinedMeasure, sv_transitivity
from clustnet.construction import random_connected_graph
from clustnet.degrees import DistSpec, sample_degree_sequence
from clustnet.ensemble import (
    DEVIATION_FIELDS,
    EnsembleReport,
    ReplicaResult,
    aggregate,
    compare_report,
    replica_seed,
    run_ensemble,
)
from clustnet.graph import Graph, GraphError
from clustnet.netstats import NetStats
from clustnet.rewiring import EvolveConfig, EvolveStatus, evolve

from conftest import star_graph


@pytest.fixture(scope="module")
def clustered_graph():
    rng = random.Random(31)
    seq = sample_degree_sequence(DistSpec("poisson", lam=5), 150, rng)
    g = random_connected_graph(seq, rng)
    res = evolve(g, EvolveConfig(target=0.4), rng)
    assert res.status is EvolveStatus.TARGET_REACHED
    return res.graph


@pytest.fixture(scope="module")
def report(clustered_graph):
    return run_ensemble(clustered_graph, 5, EvolveConfig(target=None), seed=3)


def test_self_consistency(report, clustered_graph):
    assert report.replica_count == 5
    assert report.target_measure == "Ttilde"
    assert all(s is EvolveStatus.TARGET_REACHED for s in report.statuses)
    assert abs(report.deviations["sv_transitivity"]) <= 0.01
    for name in ("n", "mean_degree", "mean_sq_degree"):
        assert name not in report.deviations
        for r in report.replicas:
            assert getattr(r.stats, name) == getattr(report.empirical, name)


def test_replicas_keep_degree_sequence(clustered_graph):
    # rebuild replica 0 by hand from its recorded seed
    seed = replica_seed(3, 0)
    rng = random.Random(seed)
    g0 = random_connected_graph(clustered_graph.degrees, rng)
    res = evolve(g0, EvolveConfig(target=sv_transitivity(clustered_graph)), rng)
    assert res.graph.degrees == clustered_graph.degrees


def test_deviation_arithmetic_reproducible(report):
    means, _, devs = aggregate([r.stats for r in report.replicas], report.empirical)
    for name in DEVIATION_FIELDS:
        obs = getattr(report.empirical, name)
        if devs[name] is None:
            assert report.deviations[name] is None
            continue
        assert abs(devs[name] - report.deviations[name]) <= 1e-12
        assert abs(report.deviations[name] - (report.means[name] - obs)) <= 1e-12


def test_byte_identical(clustered_graph, report):
    again = run_ensemble(clustered_graph, 5, EvolveConfig(target=None), seed=3)
    assert again.to_json() == report.to_json()
    assert again.to_csv() == report.to_csv()


def test_replica_seeds_independent():
    seeds = {replica_seed(7, r) for r in range(100)}
    assert len(seeds) == 100
    assert replica_seed(7, 0) != replica_seed(8, 0)


def test_star_rejected():
    with pytest.raises(UndefinedMeasure):
        run_ensemble(star_graph(4), 1, EvolveConfig(target=None), seed=0)


def test_disconnected_rejected():
    g = Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    with pytest.raises(GraphError):
        run_ensemble(g, 1, EvolveConfig(target=None), seed=0)


def test_single_replica_tracks_target(clustered_graph):
    rep = run_ensemble(clustered_graph, 1, EvolveConfig(target=None, measure=Measure.SV_T, tol=0.01), seed=11)
    assert abs(rep.deviations["sv_transitivity"]) <= 0.01


def test_csv_layout(report):
    lines = report.to_csv().splitlines()
    assert lines[0].startswith("replica,seed,status,initial_clust,final_clust,n,")
    assert len(lines) == 6


def _stats(**kw):
    base = dict(
        n=10, mean_degree=3.0, mean_sq_degree=10.0, transitivity=0.3, sv_transitivity=0.4,
        diameter=4, assortativity=0.0, modularity=0.3, mean_path_length=2.5,
    )
    base.update(kw)
    return NetStats(**base)


def _report(empirical, replicas, statuses=None):
    statuses = statuses or [EvolveStatus.TARGET_REACHED] * len(replicas)
    means, stds, devs = aggregate(replicas, empirical)
    rr = [ReplicaResult(i, i, st, 0.1, 0.4, s) for i, (s, st) in enumerate(zip(replicas, statuses))]
    return EnsembleReport(len(replicas), "Ttilde", 0.4, empirical, rr, means, stds, devs)


def test_consistent_verdict():
    rep = _report(_stats(), [_stats(transitivity=0.31), _stats(transitivity=0.29)])
    out = compare_report(rep)
    assert out["consistent"]
    assert out["verdict"] == "consistent with degree+clustering null"
    assert "[" in out["text"]


def test_assortativity_excess_flagged():
    rep = _report(_stats(assortativity=0.15), [_stats(assortativity=-0.25)])
    out = compare_report(rep)
    row = next(r for r in out["rows"] if r["statistic"] == "assortativity")
    assert row["deviation"] == pytest.approx(-0.4)
    assert row["flagged"]
    assert "excess of r in the empirical network" in out["text"]


def test_plateau_warning_names_replica():
    rep = _report(_stats(), [_stats(), _stats()], [EvolveStatus.TARGET_REACHED, EvolveStatus.PLATEAUED])
    out = compare_report(rep)
    assert out["warnings"] and "replica 1" in out["warnings"][0]


def test_undefined_statistic_has_no_deviation():
    rep = _report(_stats(assortativity=None), [_stats(assortativity=None)])
    assert rep.deviations["assortativity"] is None
    assert "undefined" in rep.to_csv()
