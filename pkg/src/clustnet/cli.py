"""Command-line entry points: generate, stats, nullmodel, pathhist."""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import random
import sys
import time
from pathlib import Path

from .clustering import (
    Measure,
    UndefinedMeasure,
    clustering_coefficient,
    omega,
    sv_clustering,
    sv_transitivity,
    transitivity,
    triangle_count,
    triple_count,
)
from .construction import ConstructionError, random_connected_graph
from .degrees import DegreeModelError, DistSpec, is_realizable, sample_degree_sequence, spec_for_mean
from .ensemble import compare_report, run_ensemble
from .graph import GraphError, is_connected
from .io import EdgeListError, parse_edge_list, read_degree_file, write_edge_list, write_trace
from .netstats import full_stats, path_length_distribution
from .rewiring import EvolveConfig, EvolveStatus, NoValidMove, evolve

log = logging.getLogger("clustnet")

EXIT_CODES = {
    EvolveStatus.TARGET_REACHED: 0,
    EvolveStatus.PLATEAUED: 3,
    EvolveStatus.TARGET_BELOW_INITIAL: 4,
    EvolveStatus.BUDGET_EXHAUSTED: 5,
}
EXIT_ERROR = 1

SEED_ENV = "CLUSTNET_SEED"
WORKERS_ENV = "CLUSTNET_WORKERS"


class UsageError(ValueError):
    pass


def _default_seed() -> int:
    return int(os.environ.get(SEED_ENV, "0"))


def _default_workers() -> int:
    if WORKERS_ENV in os.environ:
        return int(os.environ[WORKERS_ENV])
    return os.cpu_count() or 1


def _add_evolve_args(p: argparse.ArgumentParser, target_required: bool) -> None:
    p.add_argument("--measure", default="Ttilde", choices=[m.value for m in Measure])
    p.add_argument("--target", type=float, required=target_required)
    p.add_argument("--tol", type=float, default=0.01)
    p.add_argument("--seed", type=int, default=None, help=f"defaults to ${SEED_ENV} or 0")
    p.add_argument("--max-failed", type=int, default=None, help="consecutive rejections before plateau (default 100*M)")
    p.add_argument("--max-accepted", type=int, default=None)
    p.add_argument("--max-proposals", type=int, default=None)
    p.add_argument("--permissive", action="store_true", help="accept every connected move")
    p.add_argument("--connectivity-batch", type=int, default=1)
    p.add_argument("--randomize-steps", type=int, default=None, help="swap attempts before evolving (default 10*M)")


def _evolve_config(args, target) -> EvolveConfig:
    try:
        return EvolveConfig(
            target=target,
            measure=Measure(args.measure),
            tol=args.tol,
            max_failed_proposals=args.max_failed,
            max_accepted_steps=args.max_accepted,
            max_proposals=args.max_proposals,
            permissive=args.permissive,
            connectivity_batch=args.connectivity_batch,
            trace_all=getattr(args, "trace_all", False),
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _degree_sequence(args, rng: random.Random) -> list[int]:
    if args.dist == "file":
        if not args.degrees:
            raise UsageError("--dist file needs --degrees PATH")
        seq = read_degree_file(args.degrees)
        if not is_realizable(seq):
            raise UsageError(f"degree sequence in {args.degrees} is not graphical")
        return seq
    if args.n is None or args.n < 2:
        raise UsageError("--n must be given and >= 2")
    d_max = args.dmax if args.dmax is not None else args.n - 1
    if args.mean is not None:
        spec = spec_for_mean(args.dist, args.mean, d_max)
    else:
        kw = {"poisson": "lam", "exponential": "kappa", "scalefree": "gamma"}[args.dist]
        value = getattr(args, kw)
        if value is None:
            raise UsageError(f"--dist {args.dist} needs --mean or --{kw}")
        spec = DistSpec(args.dist, d_max=d_max, **{kw: value})
    return sample_degree_sequence(spec, args.n, rng)


def cmd_generate(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    cfg = _evolve_config(args, args.target)
    rng = random.Random(seed)
    t0 = time.perf_counter()
    seq = _degree_sequence(args, rng)
    g0 = random_connected_graph(seq, rng, steps=args.randomize_steps)
    res = evolve(g0, cfg, rng)
    wall = time.perf_counter() - t0
    if args.out:
        write_edge_list(res.graph, args.out)
    if args.trace_out:
        write_trace(res.trace, args.trace_out)
    summary = {
        "status": res.status.value,
        "measure": cfg.measure.value,
        "target": cfg.target,
        "tol": cfg.tol,
        "seed": seed,
        "n": res.graph.node_count,
        "m": res.graph.edge_count,
        "initial_clust": res.initial_clust,
        "final_clust": res.final_clust,
        "proposals": res.proposals,
        "accepted": res.accepted,
        "rollbacks": res.rollbacks,
        "wall_time": wall,
    }
    text = json.dumps(summary, indent=2, sort_keys=True) + "\n"
    if args.summary_out:
        Path(args.summary_out).write_text(text)
    sys.stdout.write(text)
    log.info("wall time %.2fs, %d proposals, %d accepted", wall, res.proposals, res.accepted)
    return EXIT_CODES[res.status]


def _maybe(fn, g):
    try:
        return fn(g)
    except UndefinedMeasure:
        return "undefined"


def graph_report(g) -> dict:
    """Clustering counts and measures for any simple graph, plus path statistics if connected."""
    _, tri = triangle_count(g)
    _, tau = triple_count(g)
    om_nodes, om = omega(g)
    doc = {
        "n": g.node_count,
        "m": g.edge_count,
        "triangles": tri,
        "triples": tau,
        "omega": om,
        "N2": sum(1 for d in g.degrees if d >= 2),
        "N_omega": sum(1 for w in om_nodes if w > 0),
        "C": _maybe(clustering_coefficient, g),
        "T": _maybe(transitivity, g),
        "Ctilde": _maybe(sv_clustering, g),
        "Ttilde": _maybe(sv_transitivity, g),
        "connected": bool(g.node_count) and is_connected(g),
    }
    if doc["connected"]:
        stats = full_stats(g).as_dict()
        for key, value in stats.items():
            doc[key] = "undefined" if value is None else value
    else:
        degs = g.degrees
        doc["mean_degree"] = sum(degs) / len(degs) if degs else 0.0
        doc["mean_sq_degree"] = sum(d * d for d in degs) / len(degs) if degs else 0.0
    return doc


def cmd_stats(args) -> int:
    g, _ = parse_edge_list(args.input, lenient=args.lenient)
    doc = graph_report(g)
    if not doc["connected"]:
        log.warning("graph is disconnected; path statistics omitted")
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    sys.stdout.write(text)
    return 0


def cmd_nullmodel(args) -> int:
    g, _ = parse_edge_list(args.input, lenient=args.lenient)
    if g.node_count == 0 or not is_connected(g):
        raise GraphError(f"{args.input} is not connected; null model needs a connected graph")
    seed = args.seed if args.seed is not None else _default_seed()
    if args.k < 1:
        raise UsageError("--k must be >= 1")
    cfg = _evolve_config(args, args.target)
    workers = args.workers if args.workers is not None else _default_workers()
    t0 = time.perf_counter()
    report = run_ensemble(g, args.k, cfg, seed, workers=workers, randomize_steps=args.randomize_steps)
    cmp = compare_report(report, threshold=args.threshold)
    if args.out_json:
        Path(args.out_json).write_text(report.to_json())
    if args.out_csv:
        Path(args.out_csv).write_text(report.to_csv())
    if args.out_table:
        Path(args.out_table).write_text(cmp["text"])
    sys.stdout.write(cmp["text"])
    log.info("wall time %.2fs for %d replicas", time.perf_counter() - t0, args.k)
    return 0


def histogram(values: list[float], edges: list[float]) -> list[int]:
    counts = [0] * (len(edges) - 1)
    for v in values:
        for b in range(len(counts)):
            last = b == len(counts) - 1
            if edges[b] <= v < edges[b + 1] or (last and v == edges[-1]):
                counts[b] += 1
                break
    return counts


def bin_edges(values: list[float], width: float) -> list[float]:
    lo = math.floor(min(values) / width) * width
    hi = math.floor(max(values) / width) * width + width
    nb = max(1, round((hi - lo) / width))
    return [round(lo + b * width, 10) for b in range(nb + 1)]


def path_histograms(random_g, clustered_g, width: float = 0.1) -> dict:
    rand_means, rand_global = path_length_distribution(random_g)
    clus_means, clus_global = path_length_distribution(clustered_g)
    edges = bin_edges(rand_means + clus_means, width)
    return {
        "edges": edges,
        "random": histogram(rand_means, edges),
        "clustered": histogram(clus_means, edges),
        "random_mean": rand_global,
        "clustered_mean": clus_global,
    }


def format_histograms(h: dict) -> str:
    lines = ["bin_left,bin_right,random,clustered"]
    e = h["edges"]
    for b in range(len(e) - 1):
        lines.append(f"{e[b]!r},{e[b + 1]!r},{h['random'][b]},{h['clustered'][b]}")
    return "\n".join(lines) + "\n"


def cmd_pathhist(args) -> int:
    if args.random and args.clustered:
        rg, _ = parse_edge_list(args.random)
        cg, _ = parse_edge_list(args.clustered)
    elif args.random and args.target is not None:
        rg, _ = parse_edge_list(args.random)
        seed = args.seed if args.seed is not None else _default_seed()
        cfg = _evolve_config(args, args.target)
        cg = evolve(rg, cfg, random.Random(seed)).graph
    else:
        raise UsageError("pathhist needs --random with either --clustered or --target")
    h = path_histograms(rg, cg, width=args.bin_width)
    text = format_histograms(h)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    means = {"random_mean": h["random_mean"], "clustered_mean": h["clustered_mean"]}
    sys.stderr.write(json.dumps(means, sort_keys=True) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="clustnet", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="sample a degree sequence, build a random graph, raise its clustering")
    p.add_argument("--dist", required=True, choices=["poisson", "exponential", "scalefree", "file"])
    p.add_argument("--n", type=int)
    p.add_argument("--mean", type=float, help="solve the family parameter for this mean degree")
    p.add_argument("--lam", type=float)
    p.add_argument("--kappa", type=float)
    p.add_argument("--gamma", type=float)
    p.add_argument("--dmax", type=int)
    p.add_argument("--degrees", help="degree file for --dist file")
    _add_evolve_args(p, target_required=True)
    p.add_argument("--trace-all", action="store_true", help="trace every proposal, not only accepted ones")
    p.add_argument("--out", help="edge list of the final graph")
    p.add_argument("--trace-out", help="trace CSV")
    p.add_argument("--summary-out", help="run summary JSON")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("stats", help="clustering and structure statistics of an edge list")
    p.add_argument("input")
    p.add_argument("--out")
    p.add_argument("--lenient", action="store_true", help="skip duplicate edges and self-loops with a warning")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("nullmodel", help="compare an edge list against clustered random replicas")
    p.add_argument("input")
    p.add_argument("--k", type=int, default=25)
    _add_evolve_args(p, target_required=False)
    p.add_argument("--workers", type=int, default=None, help=f"defaults to ${WORKERS_ENV} or the CPU count")
    p.add_argument("--threshold", type=float, default=0.05)
    p.add_argument("--out-json")
    p.add_argument("--out-csv")
    p.add_argument("--out-table")
    p.add_argument("--lenient", action="store_true")
    p.set_defaults(func=cmd_nullmodel)

    p = sub.add_parser("pathhist", help="per-node mean path length histograms, random vs clustered")
    p.add_argument("--random", required=True, help="edge list of the random graph")
    p.add_argument("--clustered", help="edge list of its clustered counterpart")
    _add_evolve_args(p, target_required=False)
    p.add_argument("--bin-width", type=float, default=0.1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_pathhist)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except (
        UsageError,
        EdgeListError,
        DegreeModelError,
        ConstructionError,
        UndefinedMeasure,
        GraphError,
        NoValidMove,
        OSError,
    ) as exc:
        sys.stderr.write(f"clustnet {args.command}: error: {exc}\n")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
