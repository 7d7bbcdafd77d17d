"""Surprising-edge classification and threshold sensitivity sweeps.

A surprising edge is a structurally present edge whose endpoint embeddings
have raw cosine similarity strictly below a threshold (default 0.1): a
semantically long-range link. The per-snapshot fraction of such edges is
the alpha statistic tracked over a growth series.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .embeddings import EmbeddingTable, cosine
from .graphs import GraphSnapshot, SnapshotSeries

DEFAULT_THRESHOLD = 0.1
DEFAULT_SWEEP_GRID = (0.05, 0.10, 0.15, 0.20, 0.30)


@dataclass(frozen=True)
class EdgeFlag:
    """Classification of one edge: endpoint cosine and the surprise verdict."""

    source: str
    target: str
    cosine: float
    surprising: bool


@dataclass(frozen=True)
class SurpriseStats:
    """Per-snapshot surprising-edge summary: N, N_s, and alpha = N_s / N."""

    iteration: int
    n_edges: int
    n_surprising: int
    alpha: float
    threshold: float

    def __post_init__(self):
        if not 0 <= self.n_surprising <= self.n_edges:
            raise ValueError(f"n_surprising {self.n_surprising} outside [0, {self.n_edges}]")


@dataclass(frozen=True)
class ThresholdSweep:
    """alpha per (iteration, threshold); thresholds ascending."""

    thresholds: tuple[float, ...]
    iterations: tuple[int, ...]
    alphas: dict[int, tuple[float, ...]]  # iteration -> alpha per threshold


def _check_threshold(threshold: float) -> None:
    if not -1.0 <= threshold <= 1.0:
        raise ValueError(f"threshold must lie in [-1, 1], got {threshold}")


def classify_edges(g: GraphSnapshot, embeddings: EmbeddingTable,
                   threshold: float = DEFAULT_THRESHOLD,
                   ) -> tuple[list[EdgeFlag], SurpriseStats]:
    """Flag every edge whose raw endpoint cosine is strictly below `threshold`.

    Classification uses the raw cosine in [-1, 1], not the [0, 1]-scaled
    similarity used for entropy; flags come back in sorted edge order so
    output files are deterministic.
    """
    _check_threshold(threshold)
    missing = [lab for lab in g.nodes if lab not in embeddings]
    if missing:
        raise KeyError(f"missing embeddings for labels: {missing[:10]}"
                       + ("..." if len(missing) > 10 else ""))
    flags = []
    for u, v in sorted(g.edges):
        c = cosine(embeddings.get(u), embeddings.get(v))
        flags.append(EdgeFlag(source=u, target=v, cosine=c, surprising=c < threshold))
    n_s = sum(f.surprising for f in flags)
    n = len(flags)
    stats = SurpriseStats(iteration=g.iteration, n_edges=n, n_surprising=n_s,
                          alpha=(n_s / n) if n else 0.0, threshold=threshold)
    return flags, stats


def threshold_sweep(series: SnapshotSeries, embeddings: EmbeddingTable,
                    thresholds: Sequence[float] = DEFAULT_SWEEP_GRID) -> ThresholdSweep:
    """alpha for every (snapshot, threshold) pair of the sweep grid.

    alpha is non-decreasing in the threshold for a fixed snapshot; that
    monotonicity is re-checked here as a guard against double-scaling bugs.
    """
    if not thresholds:
        raise ValueError("threshold grid is empty")
    for t in thresholds:
        _check_threshold(t)
    grid = tuple(sorted(thresholds))

    alphas: dict[int, tuple[float, ...]] = {}
    for snap in series:
        flags, _ = classify_edges(snap, embeddings, threshold=1.0)
        cosines = [f.cosine for f in flags]
        n = len(cosines)
        row = tuple((sum(c < t for c in cosines) / n) if n else 0.0 for t in grid)
        if any(b < a for a, b in zip(row, row[1:])):
            raise RuntimeError(
                f"internal invariant violated: alpha not monotone in threshold at "
                f"iteration {snap.iteration}: {row}")
        alphas[snap.iteration] = row
    return ThresholdSweep(thresholds=grid, iterations=tuple(series.iterations),
                          alphas=alphas)
