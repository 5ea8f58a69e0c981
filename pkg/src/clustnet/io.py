"""Edge-list, degree-file and trace-CSV formats."""

from __future__ import annotations

import logging
from collections.abc import Iterable
from pathlib import Path

from .graph import Graph
from .rewiring import TracePoint

log = logging.getLogger(__name__)

TRACE_COLUMNS = ("step", "delta_G", "omega_G", "clust", "accepted")


class EdgeListError(ValueError):
    pass


def _lines(source) -> Iterable[str]:
    if isinstance(source, (str, Path)):
        return Path(source).read_text().splitlines()
    return source


def parse_edge_list(source, lenient: bool = False) -> tuple[Graph, list[str]]:
    """Read whitespace-separated label pairs; ``#`` starts a comment line.

    Node ids follow first appearance. Self-loops and repeated edges are
    errors naming the line, or skipped with a warning when ``lenient``.
    """
    index: dict[str, int] = {}
    labels: list[str] = []
    pairs: list[tuple[int, int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(_lines(source), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListError(f"line {lineno}: expected two node labels, got {len(parts)}: {raw!r}")
        ids = []
        for lab in parts:
            if lab not in index:
                index[lab] = len(labels)
                labels.append(lab)
            ids.append(index[lab])
        i, j = ids
        problem = None
        if i == j:
            problem = f"line {lineno}: self-loop on {parts[0]!r}"
        elif (min(i, j), max(i, j)) in seen:
            problem = f"line {lineno}: duplicate edge {parts[0]} {parts[1]}"
        if problem:
            if not lenient:
                raise EdgeListError(problem)
            log.warning("%s (skipped)", problem)
            continue
        seen.add((min(i, j), max(i, j)))
        pairs.append((i, j, lineno))
    g = Graph(len(labels))
    for i, j, _ in pairs:
        g.add_edge(i, j)
    return g, labels


def _label_key(label: str):
    return (0, int(label), "") if label.isdigit() else (1, 0, label)


def format_edge_list(g: Graph, labels: list[str] | None = None) -> str:
    """One line per edge, smaller label first, lines sorted; integer labels sort numerically."""
    if labels is None:
        labels = [str(i) for i in range(g.node_count)]
    rows = []
    for i, j in g.edges():
        a, b = labels[i], labels[j]
        if _label_key(b) < _label_key(a):
            a, b = b, a
        rows.append((_label_key(a), _label_key(b), a, b))
    rows.sort()
    return "".join(f"{a} {b}\n" for _, _, a, b in rows)


def write_edge_list(g: Graph, path, labels: list[str] | None = None) -> None:
    Path(path).write_text(format_edge_list(g, labels))


def read_degree_file(path) -> list[int]:
    """Integers separated by whitespace or newlines; ``#`` comment lines ignored."""
    out = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        for tok in line.split():
            try:
                out.append(int(tok))
            except ValueError:
                raise EdgeListError(f"line {lineno}: not an integer degree: {tok!r}") from None
    return out


def format_trace(trace: Iterable[TracePoint]) -> str:
    lines = [",".join(TRACE_COLUMNS)]
    for p in trace:
        lines.append(f"{p.step},{p.delta_G},{p.omega_G},{p.clust!r},{int(p.accepted)}")
    return "\n".join(lines) + "\n"


def write_trace(trace: Iterable[TracePoint], path) -> None:
    Path(path).write_text(format_trace(trace))


def read_trace(path) -> list[TracePoint]:
    rows = Path(path).read_text().splitlines()
    if not rows or tuple(rows[0].split(",")) != TRACE_COLUMNS:
        raise ValueError(f"trace header must be {','.join(TRACE_COLUMNS)}")
    out = []
    for row in rows[1:]:
        step, dg, og, clust, acc = row.split(",")
        out.append(TracePoint(int(step), int(dg), int(og), float(clust), acc == "1"))
    return out
