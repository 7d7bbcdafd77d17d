"""Graph snapshots, snapshot series, and edge-list ingestion.

A snapshot is one undirected simple graph observed at a given iteration of
a growth process. All analysis code consumes the immutable snapshot /
series objects defined here.

Edge-list file format: UTF-8 text, one edge per line, exactly two
tab-separated node labels; lines starting with '#' are ignored. Series
directories follow the convention ``graph_<zero-padded iteration>.edges``.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

logger = logging.getLogger(__name__)

DEFAULT_SERIES_PATTERN = "graph_{iteration}.edges"


class EdgeListParseError(ValueError):
    """Raised when an edge-list file violates the format contract."""


@dataclass(frozen=True)
class GraphSnapshot:
    """One undirected simple graph at an iteration index.

    nodes keeps the deterministic insertion order from the input file;
    edges hold unordered label pairs stored as sorted 2-tuples. No
    self-loops, no duplicates, every endpoint present in `nodes`.
    """

    iteration: int
    nodes: tuple[str, ...]
    edges: frozenset[tuple[str, str]]

    def __post_init__(self):
        if self.iteration < 0:
            raise ValueError(f"iteration must be non-negative, got {self.iteration}")
        if len(set(self.nodes)) != len(self.nodes):
            raise ValueError("duplicate node labels in snapshot")
        node_set = set(self.nodes)
        normalized = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop on {u!r}")
            if u not in node_set or v not in node_set:
                raise ValueError(f"edge endpoint missing from node list: {(u, v)!r}")
            normalized.add((u, v) if u < v else (v, u))
        object.__setattr__(self, "edges", frozenset(normalized))

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def index_of(self) -> dict[str, int]:
        """Label -> row index bijection matching the node order."""
        return {label: i for i, label in enumerate(self.nodes)}

    def neighbors(self) -> dict[str, list[str]]:
        """Adjacency lists; neighbor lists sorted for determinism."""
        adj: dict[str, list[str]] = {u: [] for u in self.nodes}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for u in adj:
            adj[u].sort()
        return adj


@dataclass(frozen=True)
class SnapshotSeries:
    """Snapshots sorted strictly ascending by iteration; never empty."""

    snapshots: tuple[GraphSnapshot, ...]

    def __post_init__(self):
        if not self.snapshots:
            raise ValueError("snapshot series is empty")
        iters = [s.iteration for s in self.snapshots]
        if any(b <= a for a, b in zip(iters, iters[1:])):
            raise ValueError(f"iterations not strictly increasing: {iters}")

    def __len__(self) -> int:
        return len(self.snapshots)

    def __iter__(self):
        return iter(self.snapshots)

    @property
    def iterations(self) -> list[int]:
        return [s.iteration for s in self.snapshots]

    @property
    def final(self) -> GraphSnapshot:
        return self.snapshots[-1]

    def all_labels(self) -> list[str]:
        """Union of node labels over the series, in first-seen order."""
        seen: dict[str, None] = {}
        for snap in self.snapshots:
            for label in snap.nodes:
                seen.setdefault(label)
        return list(seen)


def _make_snapshot(iteration: int, node_order: list[str],
                   edges: set[tuple[str, str]]) -> GraphSnapshot:
    return GraphSnapshot(iteration=iteration, nodes=tuple(node_order),
                         edges=frozenset(edges))


def load_edge_list(path: str | Path, iteration: int) -> GraphSnapshot:
    """Parse one edge-list file into a validated snapshot.

    Duplicate lines and reversed duplicates merge into a single edge;
    self-loop lines are dropped (count reported via a warning log).
    Raises EdgeListParseError on malformed lines (with line number) and
    on files that yield an empty graph.
    """
    path = Path(path)
    node_order: list[str] = []
    seen: set[str] = set()
    edges: set[tuple[str, str]] = set()
    self_loops = 0

    with path.open("r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) != 2:
                raise EdgeListParseError(
                    f"{path}:{lineno}: expected 2 tab-separated fields, got {len(fields)}")
            u, v = fields
            if not u or not v:
                raise EdgeListParseError(f"{path}:{lineno}: empty node label")
            for label in (u, v):
                if label not in seen:
                    seen.add(label)
                    node_order.append(label)
            if u == v:
                self_loops += 1
                continue
            edges.add(tuple(sorted((u, v))))  # type: ignore[arg-type]

    if self_loops:
        logger.warning("%s: dropped %d self-loop line(s)", path, self_loops)
    if not node_order:
        raise EdgeListParseError(f"{path}: empty graph (no nodes)")
    return _make_snapshot(iteration, node_order, edges)


def write_edge_list(snapshot: GraphSnapshot, path: str | Path,
                    header_comments: list[str] | None = None) -> None:
    """Write a snapshot back to the edge-list format (sorted edge order)."""
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        for comment in header_comments or []:
            fh.write(f"# {comment}\n")
        for u, v in sorted(snapshot.edges):
            fh.write(f"{u}\t{v}\n")


def _pattern_to_regex(pattern: str) -> re.Pattern[str]:
    """Filename template -> regex capturing the iteration digits.

    The template marks the iteration field either as ``{iteration}`` or as
    a single ``*`` wildcard; everything else is matched literally.
    """
    if "{iteration}" in pattern:
        parts = pattern.split("{iteration}")
    elif "*" in pattern:
        parts = pattern.split("*")
    else:
        raise ValueError(
            f"series pattern {pattern!r} has no iteration field ('{{iteration}}' or '*')")
    if len(parts) != 2:
        raise ValueError(f"series pattern {pattern!r} must contain exactly one iteration field")
    return re.compile(re.escape(parts[0]) + r"(\d+)" + re.escape(parts[1]) + r"$")


def load_series(directory: str | Path,
                pattern: str = DEFAULT_SERIES_PATTERN) -> SnapshotSeries:
    """Load every matching edge-list file in `directory`, sorted by iteration.

    Raises ValueError when no file matches or two files parse to the same
    iteration index. Warns if a node present at iteration t is missing at
    t' > t (the expected process only ever adds).
    """
    directory = Path(directory)
    rx = _pattern_to_regex(pattern)
    found: dict[int, Path] = {}
    for entry in sorted(directory.iterdir()) if directory.is_dir() else []:
        m = rx.match(entry.name)
        if not m:
            continue
        iteration = int(m.group(1))
        if iteration in found:
            raise ValueError(
                f"duplicate iteration {iteration}: {found[iteration].name} and {entry.name}")
        found[iteration] = entry
    if not found:
        raise ValueError(f"no snapshots matching {pattern!r} in {directory}")

    snapshots = [load_edge_list(found[i], i) for i in sorted(found)]
    prev_nodes: set[str] = set()
    for snap in snapshots:
        missing = prev_nodes - set(snap.nodes)
        if missing:
            logger.warning("iteration %d: %d node(s) disappeared (e.g. %r)",
                           snap.iteration, len(missing), sorted(missing)[0])
        prev_nodes |= set(snap.nodes)
    return SnapshotSeries(snapshots=tuple(snapshots))


def adjacency_and_degrees(g: GraphSnapshot) -> tuple[np.ndarray, np.ndarray]:
    """Dense symmetric 0/1 adjacency matrix and its degree vector.

    Row/column order follows g.nodes; the diagonal is zero and degrees
    equal row sums.
    """
    index = g.index_of()
    n = g.n_nodes
    a = np.zeros((n, n), dtype=float)
    for u, v in g.edges:
        i, j = index[u], index[v]
        a[i, j] = 1.0
        a[j, i] = 1.0
    return a, a.sum(axis=1)
