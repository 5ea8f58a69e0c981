"""Null-model ensembles: clustered random graphs matched to an empirical network."""

from __future__ import annotations

import csv
import io
import json
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields, replace

import numpy as np

from .clustering import measure_value
from .construction import random_connected_graph
from .graph import Graph, GraphError, is_connected
from .netstats import NetStats, full_stats
from .rewiring import EvolveConfig, EvolveStatus, evolve

STAT_FIELDS = tuple(f.name for f in fields(NetStats))
# fixed by the degree sequence, so never compared
CONSTRAINED = ("n", "mean_degree", "mean_sq_degree")
DEVIATION_FIELDS = tuple(f for f in STAT_FIELDS if f not in CONSTRAINED)
# compared relative to the observed value rather than absolutely
UNBOUNDED = ("diameter", "mean_path_length")


def replica_seed(seed: int, index: int) -> int:
    """Independent per-replica seed derived from the run seed and replica index."""
    return int(np.random.SeedSequence([seed, index]).generate_state(1, dtype=np.uint64)[0])


@dataclass
class ReplicaResult:
    index: int
    seed: int
    status: EvolveStatus
    initial_clust: float
    final_clust: float
    stats: NetStats


@dataclass
class EnsembleReport:
    replica_count: int
    target_measure: str
    target_value: float
    empirical: NetStats
    replicas: list[ReplicaResult]
    means: dict[str, float | None]
    stds: dict[str, float | None]
    deviations: dict[str, float | None]

    @property
    def statuses(self) -> list[EvolveStatus]:
        return [r.status for r in self.replicas]

    def to_json(self) -> str:
        doc = {
            "replica_count": self.replica_count,
            "target_measure": self.target_measure,
            "target_value": self.target_value,
            "empirical": self.empirical.as_dict(),
            "ensemble_means": self.means,
            "ensemble_stds": self.stds,
            "deviations": self.deviations,
            "replicas": [
                {
                    "index": r.index,
                    "seed": r.seed,
                    "status": r.status.value,
                    "initial_clust": r.initial_clust,
                    "final_clust": r.final_clust,
                    "stats": r.stats.as_dict(),
                }
                for r in self.replicas
            ],
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["replica", "seed", "status", "initial_clust", "final_clust", *STAT_FIELDS])
        for r in self.replicas:
            s = r.stats.as_dict()
            w.writerow(
                [r.index, r.seed, r.status.value, repr(r.initial_clust), repr(r.final_clust)]
                + [_cell(s[f]) for f in STAT_FIELDS]
            )
        return buf.getvalue()


def _cell(v) -> str:
    if v is None:
        return "undefined"
    return repr(v)


def aggregate(replicas: list[NetStats], empirical: NetStats):
    """Ensemble means, standard deviations and deviations from the empirical values.

    Undefined replica values are skipped; a statistic undefined in every
    replica, or in the empirical graph, has no deviation.
    """
    means: dict[str, float | None] = {}
    stds: dict[str, float | None] = {}
    devs: dict[str, float | None] = {}
    for name in STAT_FIELDS:
        vals = [getattr(s, name) for s in replicas if getattr(s, name) is not None]
        if vals:
            mu = math.fsum(vals) / len(vals)
            means[name] = mu
            stds[name] = math.sqrt(math.fsum((v - mu) ** 2 for v in vals) / len(vals))
        else:
            means[name] = stds[name] = None
        if name in DEVIATION_FIELDS:
            obs = getattr(empirical, name)
            devs[name] = None if means[name] is None or obs is None else means[name] - obs
    return means, stds, devs


def _run_replica(args) -> ReplicaResult:
    index, seed, seq, cfg, randomize_steps = args
    rng = random.Random(seed)
    g0 = random_connected_graph(seq, rng, steps=randomize_steps)
    res = evolve(g0, cfg, rng)
    return ReplicaResult(index, seed, res.status, res.initial_clust, res.final_clust, full_stats(res.graph))


def run_ensemble(
    empirical: Graph,
    k: int,
    cfg: EvolveConfig,
    seed: int,
    workers: int = 1,
    randomize_steps: int | None = None,
) -> EnsembleReport:
    """Generate ``k`` clustered replicas of ``empirical`` and compare statistics.

    Each replica rebuilds a random connected graph from the empirical
    degree sequence and evolves it toward ``cfg.target``, which defaults
    to the empirical graph's own value of ``cfg.measure``. Replicas that
    plateau are kept; their status is recorded.
    """
    if k < 1:
        raise ValueError(f"replica count must be >= 1, got {k}")
    if empirical.node_count == 0 or not is_connected(empirical):
        raise GraphError("empirical graph must be connected")
    observed = measure_value(empirical, cfg.measure)
    if cfg.target is None:
        cfg = replace(cfg, target=observed)
    empirical_stats = full_stats(empirical)
    seq = empirical.degrees
    jobs = [(r, replica_seed(seed, r), seq, cfg, randomize_steps) for r in range(k)]
    if workers > 1 and k > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_replica, jobs))
    else:
        results = [_run_replica(j) for j in jobs]
    means, stds, devs = aggregate([r.stats for r in results], empirical_stats)
    return EnsembleReport(
        replica_count=k,
        target_measure=cfg.measure.value,
        target_value=cfg.target,
        empirical=empirical_stats,
        replicas=results,
        means=means,
        stds=stds,
        deviations=devs,
    )


_LABELS = {
    "n": "N",
    "mean_degree": "<d>",
    "mean_sq_degree": "<d^2>",
    "transitivity": "T",
    "sv_transitivity": "T~",
    "diameter": "Diam",
    "assortativity": "r",
    "modularity": "Q",
    "mean_path_length": "<l>",
}


def compare_report(report: EnsembleReport, threshold: float = 0.05) -> dict:
    """Deviation table with flags, in machine-readable and text form.

    A statistic is flagged when its deviation exceeds ``threshold`` in
    absolute value; for diameter and mean path length the deviation is
    first divided by the observed value. Negative deviations mean the
    empirical network has more of the quantity than its null ensemble.
    """
    rows = []
    for name in STAT_FIELDS:
        mean = report.means[name]
        obs = getattr(report.empirical, name)
        dev = report.deviations.get(name)
        flagged = False
        note = ""
        if dev is not None:
            scale = abs(obs) if name in UNBOUNDED and obs else 1.0
            flagged = abs(dev) / scale > threshold
            if flagged:
                note = f"{'excess' if dev < 0 else 'deficit'} of {_LABELS[name]} in the empirical network"
        rows.append(
            {"statistic": name, "empirical": obs, "ensemble_mean": mean, "deviation": dev, "flagged": flagged, "note": note}
        )
    warnings = [
        f"replica {r.index} ended {r.status.value} at {report.target_measure}={r.final_clust:.4f}"
        for r in report.replicas
        if r.status is not EvolveStatus.TARGET_REACHED
    ]
    consistent = not any(row["flagged"] for row in rows)
    verdict = (
        "consistent with degree+clustering null"
        if consistent
        else "deviates from degree+clustering null: " + ", ".join(_LABELS[r["statistic"]] for r in rows if r["flagged"])
    )

    header = "  ".join(f"{_LABELS[n]:>16}" for n in STAT_FIELDS)
    cells = []
    for row in rows:
        mean = _fmt(row["ensemble_mean"])
        if row["statistic"] in CONSTRAINED:
            cells.append(f"{mean:>16}")
        else:
            cells.append(f"{mean + ' [' + _fmt(row['deviation']) + ']':>16}")
    lines = [header, "  ".join(cells), "", f"verdict: {verdict}"]
    lines += [f"warning: {w}" for w in warnings]
    lines += [f"  {r['note']}" for r in rows if r["flagged"]]
    return {
        "rows": rows,
        "consistent": consistent,
        "verdict": verdict,
        "warnings": warnings,
        "text": "\n".join(lines) + "\n",
    }


def _fmt(v) -> str:
    if v is None:
        return "undef"
    if isinstance(v, int):
        return str(v)
    return f"{v:.3g}"
