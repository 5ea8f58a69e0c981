"""Triangle-increasing rewiring chain.

A move picks a node ``x`` with two neighbors ``y1, y2`` and one further
neighbor of each, ``z1`` and ``z2``; it deletes ``(y1, z1)``, ``(y2, z2)``
and adds ``(y1, y2)``, ``(z1, z2)``. Degrees never change. Moves are kept
only when they raise the chosen clustering measure and leave the graph
connected, until the measure is within ``tol`` of the target or no more
improving moves turn up.
"""

from __future__ import annotations

import logging
import math
import random
import time
from collections.abc import Callable
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .clustering import (
    Measure,
    TriangleChange,
    UndefinedMeasure,
    omega_from_slots,
    omega_slot_sum,
    rewire_triangle_delta,
    triangle_count,
)
from .graph import Graph, is_connected, reachable

log = logging.getLogger(__name__)

# draws of steps 1-3 before propose_move gives up
PROPOSE_RETRIES = 10_000
# relative gap below which two real-valued measure readings count as equal
_REAL_TIE = 1e-12


class NoValidMove(RuntimeError):
    pass


class EvolveStatus(str, Enum):
    TARGET_REACHED = "TargetReached"
    PLATEAUED = "Plateaued"
    TARGET_BELOW_INITIAL = "TargetBelowInitial"
    BUDGET_EXHAUSTED = "BudgetExhausted"


@dataclass(frozen=True)
class Move:
    x: int
    y1: int
    y2: int
    z1: int
    z2: int

    @property
    def deletes(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return (self.y1, self.z1), (self.y2, self.z2)

    @property
    def adds(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return (self.y1, self.y2), (self.z1, self.z2)

    def applicable(self, g: Graph) -> bool:
        adj = g.adj
        return (
            self.z1 in adj[self.y1]
            and self.z2 in adj[self.y2]
            and self.y2 not in adj[self.y1]
            and self.z2 not in adj[self.z1]
        )


def apply_move(g: Graph, m: Move) -> None:
    g.remove_edge(m.y1, m.z1)
    g.remove_edge(m.y2, m.z2)
    g.add_edge(m.y1, m.y2)
    g.add_edge(m.z1, m.z2)


def undo_move(g: Graph, m: Move) -> None:
    g.remove_edge(m.y1, m.y2)
    g.remove_edge(m.z1, m.z2)
    g.add_edge(m.y1, m.z1)
    g.add_edge(m.y2, m.z2)


@dataclass
class EvolveConfig:
    """Settings for one run of the chain.

    ``target=None`` is only meaningful for ensembles, which substitute the
    empirical graph's own value. ``max_failed_proposals=None`` means ``100 * M`` consecutive rejections.
    ``max_accepted_steps`` and ``max_proposals`` are off when ``None``.
    ``connectivity_batch=k`` defers the connectivity test to every k-th
    accepted move and rolls back to the last connected state on failure.
    ``verify_every=k`` recounts triangles and possible triangles from
    scratch every k accepted moves and fails loudly on any mismatch.
    """

    target: float | None
    measure: Measure = Measure.SV_T
    tol: float = 0.01
    max_failed_proposals: int | None = None
    max_accepted_steps: int | None = None
    max_proposals: int | None = None
    permissive: bool = False
    connectivity_batch: int = 1
    trace_all: bool = False
    verify_every: int = 0

    def __post_init__(self):
        self.measure = Measure(self.measure)
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        for name in ("max_failed_proposals", "max_accepted_steps", "max_proposals"):
            v = getattr(self, name)
            if v is not None and v <= 0:
                raise ValueError(f"{name} must be positive, got {v}")
        if self.connectivity_batch < 1:
            raise ValueError(f"connectivity_batch must be >= 1, got {self.connectivity_batch}")
        if self.verify_every < 0:
            raise ValueError("verify_every must be >= 0")


@dataclass(frozen=True)
class TracePoint:
    step: int
    delta_G: int
    omega_G: int
    clust: float
    accepted: bool


@dataclass
class EvolveResult:
    graph: Graph
    trace: list[TracePoint]
    status: EvolveStatus
    initial_clust: float
    final_clust: float
    proposals: int = 0
    accepted: int = 0
    rollbacks: int = 0
    wall_time: float = 0.0

    def __iter__(self):
        # allows ``graph, trace, status = evolve(...)``
        return iter((self.graph, self.trace, self.status))


class ClusteringTracker:
    """Per-node triangle and possible-triangle counts kept in step with a graph.

    ``delta_sum`` is the sum of per-node triangle counts, three times the
    number of triangles. ``slots[i]`` is the capacity sum behind
    ``omega[i]``; only the four rewired endpoints ever change it.
    """

    def __init__(self, g: Graph):
        self.degs = g.degrees
        degs = self.degs
        self.tau = [d * (d - 1) // 2 for d in degs]
        self.delta, _ = triangle_count(g)
        self.slots = [omega_slot_sum(g, i, degs) for i in range(g.node_count)]
        self.omega = [omega_from_slots(d, s) for d, s in zip(degs, self.slots)]
        self.delta_sum = sum(self.delta)
        self.tau_total = sum(self.tau)
        self.omega_total = sum(self.omega)
        self.n2 = sum(1 for d in degs if d >= 2)
        self.n_omega = sum(1 for w in self.omega if w > 0)
        self.c_sum = math.fsum(dl / t for dl, t in zip(self.delta, self.tau) if t > 0)
        self.sv_sum = math.fsum(dl / w for dl, w in zip(self.delta, self.omega) if w > 0)

    @property
    def triangles(self) -> int:
        return self.delta_sum // 3

    def value(self, measure: Measure) -> float:
        if measure is Measure.TRIANGLES:
            return float(self.triangles)
        if measure is Measure.T:
            if self.tau_total == 0:
                raise UndefinedMeasure("transitivity undefined: graph has no triples")
            return self.delta_sum / self.tau_total
        if measure is Measure.C:
            if self.n2 == 0:
                raise UndefinedMeasure("clustering coefficient undefined: no node has degree >= 2")
            return self.c_sum / self.n2
        if self.omega_total == 0:
            raise UndefinedMeasure("degree-corrected measures undefined: omega(G) = 0")
        if measure is Measure.SV_T:
            return self.delta_sum / self.omega_total
        return self.sv_sum / self.n_omega

    def slot_updates(self, m: Move) -> dict[int, int]:
        """New capacity sums for the four endpoints whose neighbor sets change."""
        degs = self.degs
        s = self.slots

        def cap(i, j):
            return min(degs[i] - 1, degs[j] - 1)

        return {
            m.y1: s[m.y1] - cap(m.y1, m.z1) + cap(m.y1, m.y2),
            m.y2: s[m.y2] - cap(m.y2, m.z2) + cap(m.y2, m.y1),
            m.z1: s[m.z1] - cap(m.z1, m.y1) + cap(m.z1, m.z2),
            m.z2: s[m.z2] - cap(m.z2, m.y2) + cap(m.z2, m.z1),
        }

    def candidate(self, change: TriangleChange, slots: dict[int, int]) -> _Candidate:
        degs, omega = self.degs, self.omega
        new_omega = {i: omega_from_slots(degs[i], s) for i, s in slots.items()}
        omega_total = self.omega_total + sum(w - omega[i] for i, w in new_omega.items())
        n_omega = self.n_omega + sum((w > 0) - (omega[i] > 0) for i, w in new_omega.items())
        return _Candidate(
            change=change,
            slots=slots,
            new_omega=new_omega,
            delta_sum=self.delta_sum + 3 * change.total,
            omega_total=omega_total,
            n_omega=n_omega,
        )

    def commit(self, cand: _Candidate) -> None:
        delta, tau, omega = self.delta, self.tau, self.omega
        nd = cand.change.node_deltas
        touched = set(nd) | set(cand.new_omega)
        for i in touched:
            old_d, old_w = delta[i], omega[i]
            new_d = old_d + nd.get(i, 0)
            new_w = cand.new_omega.get(i, old_w)
            if tau[i]:
                self.c_sum += (new_d - old_d) / tau[i]
            if old_w:
                self.sv_sum -= old_d / old_w
            if new_w:
                self.sv_sum += new_d / new_w
            delta[i] = new_d
            omega[i] = new_w
        for i, s in cand.slots.items():
            self.slots[i] = s
        self.delta_sum = cand.delta_sum
        self.omega_total = cand.omega_total
        self.n_omega = cand.n_omega

    def snapshot(self) -> tuple:
        return (
            list(self.delta),
            list(self.slots),
            list(self.omega),
            self.delta_sum,
            self.omega_total,
            self.n_omega,
            self.c_sum,
            self.sv_sum,
        )

    def restore(self, snap: tuple) -> None:
        (
            delta,
            slots,
            omega,
            self.delta_sum,
            self.omega_total,
            self.n_omega,
            self.c_sum,
            self.sv_sum,
        ) = snap
        self.delta, self.slots, self.omega = list(delta), list(slots), list(omega)

    def verify(self, g: Graph) -> None:
        """Compare against a from-scratch recount; raise on any mismatch."""
        fresh = ClusteringTracker(g)
        if fresh.delta != self.delta or fresh.omega != self.omega or fresh.slots != self.slots:
            raise AssertionError("incremental triangle/omega counts diverged from recount")
        if abs(fresh.c_sum - self.c_sum) > 1e-9 or abs(fresh.sv_sum - self.sv_sum) > 1e-9:
            raise AssertionError("incremental clustering sums drifted beyond 1e-9")
        # re-anchor the float sums so drift cannot accumulate
        self.c_sum, self.sv_sum = fresh.c_sum, fresh.sv_sum


@dataclass
class _Candidate:
    change: TriangleChange
    slots: dict[int, int]
    new_omega: dict[int, int]
    delta_sum: int
    omega_total: int
    n_omega: int


def _candidate_value(tr: ClusteringTracker, cand: _Candidate, measure: Measure) -> float | None:
    """Measure value after the move, or None if it would be undefined."""
    if measure is Measure.TRIANGLES:
        return float(cand.delta_sum // 3)
    if measure is Measure.T:
        return cand.delta_sum / tr.tau_total
    if measure is Measure.C:
        return (tr.c_sum + _c_sum_change(tr, cand)) / tr.n2
    if cand.omega_total == 0:
        return None
    if measure is Measure.SV_T:
        return cand.delta_sum / cand.omega_total
    if cand.n_omega == 0:
        return None
    return (tr.sv_sum + _sv_sum_change(tr, cand)) / cand.n_omega


def _c_sum_change(tr: ClusteringTracker, cand: _Candidate) -> Fraction:
    return sum(
        (Fraction(dd, tr.tau[i]) for i, dd in cand.change.node_deltas.items() if tr.tau[i]),
        Fraction(0),
    )


def _sv_sum_change(tr: ClusteringTracker, cand: _Candidate) -> float:
    nd = cand.change.node_deltas
    total = 0.0
    for i in set(nd) | set(cand.new_omega):
        old_d, old_w = tr.delta[i], tr.omega[i]
        new_d = old_d + nd.get(i, 0)
        new_w = cand.new_omega.get(i, old_w)
        total += (new_d / new_w if new_w else 0.0) - (old_d / old_w if old_w else 0.0)
    return total


def _improves(tr: ClusteringTracker, cand: _Candidate, measure: Measure, before: float, after: float) -> bool:
    """Whether a move raises both the triangle count and the measure.

    Decided on exact integers wherever the measure allows it.
    """
    if cand.change.total <= 0:
        return False
    if measure in (Measure.TRIANGLES, Measure.T):
        # fixed denominator: the triangle gain already decides
        return True
    if measure is Measure.SV_T:
        return cand.delta_sum * tr.omega_total > tr.delta_sum * cand.omega_total
    if measure is Measure.C:
        return _c_sum_change(tr, cand) > 0
    if cand.n_omega == tr.n_omega:
        ds = _sv_sum_change(tr, cand)
        return ds > _REAL_TIE * max(1.0, abs(tr.sv_sum))
    return after - before > _REAL_TIE * max(1.0, abs(before))


def accept_rule(
    clust_before: float,
    clust_after: float,
    keeps_connected: bool,
    permissive: bool,
    triangle_delta: int | None = None,
) -> bool:
    """Hill-climbing keeps a connected move only if it adds triangles and raises the measure.

    In permissive mode any connected move is kept.
    """
    if not keeps_connected:
        return False
    if permissive:
        return True
    if triangle_delta is not None and triangle_delta <= 0:
        return False
    return clust_after > clust_before


def _select(adj: list[set[int]], degs: list[int], eligible: list[int], rng: random.Random) -> Move | None:
    x = eligible[rng.randrange(len(eligible))]
    ys = [y for y in adj[x] if degs[y] > 1]
    if len(ys) < 2:
        return None
    y1, y2 = rng.sample(ys, 2)
    z1s = [z for z in adj[y1] if z != x and z != y2]
    if not z1s:
        return None
    z1 = z1s[rng.randrange(len(z1s))]
    z2s = [z for z in adj[y2] if z != x and z != y1 and z != z1]
    if not z2s:
        return None
    return Move(x, y1, y2, z1, z2s[rng.randrange(len(z2s))])


def propose_move(g: Graph, rng: random.Random, max_tries: int = PROPOSE_RETRIES) -> Move:
    """Draw a move by the node/neighbor selection rule, retrying dead ends.

    The returned move is well formed (distinct nodes, edges to delete
    present) but its edges to add may already exist; the caller rejects
    those.
    """
    degs = g.degrees
    eligible = [i for i, d in enumerate(degs) if d > 1]
    if not eligible:
        raise NoValidMove("no node has degree > 1")
    for _ in range(max_tries):
        m = _select(g.adj, degs, eligible, rng)
        if m is not None:
            return m
    raise NoValidMove(f"no valid selection in {max_tries} draws")


def has_selection(g: Graph) -> bool:
    """Whether any (x, y1, y2, z1, z2) satisfies the selection constraints."""
    adj = g.adj
    degs = g.degrees
    for x in range(g.node_count):
        ys = [y for y in adj[x] if degs[y] > 1]
        for a in range(len(ys)):
            for b in range(len(ys)):
                if a == b:
                    continue
                y1, y2 = ys[a], ys[b]
                for z1 in adj[y1]:
                    if z1 in (x, y2):
                        continue
                    if any(z2 not in (x, y1, z1) for z2 in adj[y2]):
                        return True
    return False


def evaluate_move(g: Graph, m: Move, measure: Measure) -> tuple[float, int, bool]:
    """Measure value after ``m``, its triangle change, and whether ``g`` stays connected.

    ``g`` is returned to its original state.
    """
    measure = Measure(measure)
    change = rewire_triangle_delta(g, m)
    tr = ClusteringTracker(g)
    cand = tr.candidate(change, tr.slot_updates(m))
    after = _candidate_value(tr, cand, measure)
    apply_move(g, m)
    try:
        connected = is_connected(g)
    finally:
        undo_move(g, m)
    if after is None:
        raise UndefinedMeasure(f"{measure.value} undefined after move")
    return after, change.total, connected


def connectivity_check_policy(cfg: EvolveConfig, candidate: Graph, move: Move | None = None, pending: int = 1) -> bool:
    """Connectivity verdict for a candidate state under the batching rule.

    With ``connectivity_batch == 1`` every candidate is tested; the local
    test ``y1 ~ z1`` suffices when the pre-move graph was connected,
    because every node then still reaches one of the four endpoints. With
    a batch of ``k`` only every k-th pending move triggers a full BFS and
    the others pass provisionally.
    """
    if cfg.connectivity_batch == 1:
        if move is not None:
            return reachable(candidate, move.y1, move.z1)
        return is_connected(candidate)
    if pending % cfg.connectivity_batch:
        return True
    return is_connected(candidate)


def evolve(
    g: Graph,
    cfg: EvolveConfig,
    rng: random.Random,
    observer: Callable[[Graph, TracePoint], None] | None = None,
) -> EvolveResult:
    """Run the chain on a copy of ``g`` until a halting condition.

    ``observer`` is called with the live graph after each accepted move
    (and after each proposal when ``trace_all`` is set); it must not
    mutate the graph.
    """
    t0 = time.perf_counter()
    if cfg.target is None:
        raise ValueError("evolve needs a numeric target")
    if g.node_count == 0 or not is_connected(g):
        raise ValueError("evolve needs a non-empty connected graph")
    g = g.copy()
    measure = cfg.measure
    tr = ClusteringTracker(g)
    clust = tr.value(measure)
    initial = clust
    target, tol = cfg.target, cfg.tol

    def done(status, trace, proposals=0, accepted=0, rollbacks=0):
        return EvolveResult(
            graph=g,
            trace=trace,
            status=status,
            initial_clust=initial,
            final_clust=clust,
            proposals=proposals,
            accepted=accepted,
            rollbacks=rollbacks,
            wall_time=time.perf_counter() - t0,
        )

    if abs(clust - target) < tol:
        return done(EvolveStatus.TARGET_REACHED, [])
    if clust > target and not cfg.permissive:
        return done(EvolveStatus.TARGET_BELOW_INITIAL, [])
    if not has_selection(g):
        raise NoValidMove("no node has two neighbors with further neighbors to rewire")

    m_edges = g.edge_count
    max_failed = cfg.max_failed_proposals or 100 * m_edges
    max_accepted = cfg.max_accepted_steps
    max_props = cfg.max_proposals
    batch = cfg.connectivity_batch

    adj = g.adj
    degs = tr.degs
    eligible = [i for i, d in enumerate(degs) if d > 1]

    trace = [TracePoint(0, tr.triangles, tr.omega_total, clust, False)]
    proposals = accepted = failures = rollbacks = 0
    pending: list[Move] = []
    checkpoint = (tr.snapshot(), len(trace), clust, 0, 0, 0)

    def rollback():
        # proposals since the checkpoint all count as failures, so a chain
        # that keeps disconnecting still reaches the plateau budget
        nonlocal clust, pending, accepted, failures
        for mv in reversed(pending):
            undo_move(g, mv)
        snap, trace_len, clust, props_then, accepted, failures_then = checkpoint
        failures = failures_then + proposals - props_then
        tr.restore(snap)
        del trace[trace_len:]
        pending = []

    def settle() -> bool:
        """Verify deferred moves; True if the current state is connected."""
        nonlocal checkpoint, rollbacks
        if not pending:
            return True
        if is_connected(g):
            pending.clear()
            checkpoint = (tr.snapshot(), len(trace), clust, proposals, accepted, failures)
            return True
        rollback()
        rollbacks += 1
        return False

    status = None
    while status is None:
        if max_props is not None and proposals >= max_props:
            settle()
            status = EvolveStatus.BUDGET_EXHAUSTED
            break
        proposals += 1
        ok = False
        m = _select(adj, degs, eligible, rng)
        if m is not None and m.y2 not in adj[m.y1] and m.z2 not in adj[m.z1]:
            change = rewire_triangle_delta(g, m, validate=False)
            if cfg.permissive or change.total > 0:
                cand = tr.candidate(change, tr.slot_updates(m))
                after = _candidate_value(tr, cand, measure)
            else:
                after = None
            # the hill-climber cannot come back down, so it never steps past target + tol
            if after is not None and (
                cfg.permissive or (after - target < tol and _improves(tr, cand, measure, clust, after))
            ):
                apply_move(g, m)
                if batch == 1:
                    connected = reachable(g, m.y1, m.z1)
                else:
                    pending.append(m)
                    connected = True
                if connected:
                    tr.commit(cand)
                    clust = after
                    ok = True
                else:
                    undo_move(g, m)
        if ok:
            accepted += 1
            failures = 0
            point = TracePoint(proposals, tr.triangles, tr.omega_total, clust, True)
            trace.append(point)
            if observer is not None:
                observer(g, point)
            if cfg.verify_every and accepted % cfg.verify_every == 0:
                tr.verify(g)
            if batch > 1 and len(pending) >= batch:
                settle()
        else:
            failures += 1
            if cfg.trace_all:
                point = TracePoint(proposals, tr.triangles, tr.omega_total, clust, False)
                trace.append(point)
                if observer is not None:
                    observer(g, point)

        if abs(clust - target) < tol and settle():
            status = EvolveStatus.TARGET_REACHED
        elif max_accepted is not None and accepted >= max_accepted:
            settle()
            status = EvolveStatus.BUDGET_EXHAUSTED
        elif failures >= max_failed:
            settle()
            status = EvolveStatus.PLATEAUED

    if trace[-1].step != proposals:
        trace.append(TracePoint(proposals, tr.triangles, tr.omega_total, clust, False))
    result = done(status, trace, proposals, accepted, rollbacks)
    log.info(
        "evolve %s: %s %.4f -> %.4f in %d proposals, %d accepted, %.2fs",
        status.value,
        measure.value,
        initial,
        clust,
        proposals,
        accepted,
        result.wall_time,
    )
    return result
