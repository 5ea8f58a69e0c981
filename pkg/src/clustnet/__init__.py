"""Clustered random graphs with an exact degree sequence, via triangle-increasing rewiring."""

from .clustering import (
    Measure,
    UndefinedMeasure,
    clustering_coefficient,
    measure_value,
    omega,
    rewire_triangle_delta,
    sv_clustering,
    sv_transitivity,
    transitivity,
    triangle_count,
    triple_count,
)
from .construction import havel_hakimi, random_connected_graph, randomize, taylor_connect
from .degrees import DistSpec, is_realizable, sample_degree_sequence, spec_for_mean
from .ensemble import EnsembleReport, compare_report, run_ensemble
from .graph import Graph, GraphError, degree_sequence, is_connected
from .netstats import NetStats, assortativity, diameter, full_stats, modularity_partition, path_length_distribution
from .rewiring import EvolveConfig, EvolveResult, EvolveStatus, Move, TracePoint, evolve, propose_move

__all__ = [
    "DistSpec",
    "EnsembleReport",
    "EvolveConfig",
    "EvolveResult",
    "EvolveStatus",
    "Graph",
    "GraphError",
    "Measure",
    "Move",
    "NetStats",
    "TracePoint",
    "UndefinedMeasure",
    "assortativity",
    "clustering_coefficient",
    "compare_report",
    "degree_sequence",
    "diameter",
    "evolve",
    "full_stats",
    "havel_hakimi",
    "is_connected",
    "is_realizable",
    "measure_value",
    "modularity_partition",
    "omega",
    "path_length_distribution",
    "propose_move",
    "random_connected_graph",
    "randomize",
    "rewire_triangle_delta",
    "run_ensemble",
    "sample_degree_sequence",
    "spec_for_mean",
    "sv_clustering",
    "sv_transitivity",
    "taylor_connect",
    "transitivity",
    "triangle_count",
    "triple_count",
]
