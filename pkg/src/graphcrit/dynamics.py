"""Entropy traces over a snapshot series and transition detection.

build_trace evaluates structural entropy, semantic entropy, the discovery
parameter, and surprising-edge counts for every snapshot. The rolling
lag-0 Pearson correlation between the two entropy series then feeds a
sign-sustain detector that locates the critical transition where
co-evolving dynamics flip to anti-correlated ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .edges import DEFAULT_THRESHOLD
from .embeddings import EmbeddingTable
from .graphs import SnapshotSeries, adjacency_and_degrees
from .spectral import (EntropySample, discovery_parameter, normalized_laplacian,
                       von_neumann_entropy)

# Above this many distinct labels the shared cosine Gram would not fit
# comfortably in memory; fall back to per-snapshot products.
GRAM_CAP = 3600


class TraceBuildError(RuntimeError):
    """Entropy computation failed for one snapshot; message carries the iteration."""


@dataclass(frozen=True)
class EntropyTrace:
    """Per-iteration entropy samples plus edge / surprising-edge counts."""

    samples: tuple[EntropySample, ...]
    n_edges: tuple[int, ...]
    n_surprising: tuple[int, ...]
    surprise_threshold: float

    def __post_init__(self):
        if not (len(self.samples) == len(self.n_edges) == len(self.n_surprising)):
            raise ValueError("trace columns have mismatched lengths")
        iters = self.iterations
        if any(b <= a for a, b in zip(iters, iters[1:])):
            raise ValueError("trace iterations not strictly increasing")

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def iterations(self) -> list[int]:
        return [s.iteration for s in self.samples]

    @property
    def alphas(self) -> list[float]:
        return [(s / n) if n else 0.0 for s, n in zip(self.n_surprising, self.n_edges)]

    @property
    def s_struct(self) -> np.ndarray:
        return np.array([s.s_struct for s in self.samples])

    @property
    def s_sem(self) -> np.ndarray:
        return np.array([s.s_sem for s in self.samples])


@dataclass(frozen=True)
class XCorrPoint:
    iteration: int
    pearson_r: float
    degenerate: bool


@dataclass(frozen=True)
class CrossCorrelationTrace:
    """Windowed Pearson r between the entropy series, one point per window end."""

    window: int
    points: tuple[XCorrPoint, ...]


@dataclass(frozen=True)
class TransitionReport:
    """Earliest sustained positive-to-negative flip of the correlation trace."""

    transition_iteration: int | None
    sustain_length: int
    pre_mean_r: float
    post_mean_r: float


def build_trace(series: SnapshotSeries, embeddings: EmbeddingTable,
                surprise_threshold: float = DEFAULT_THRESHOLD) -> EntropyTrace:
    """Entropy samples and surprise counts for every snapshot, in order.

    Embeddings are fixed per label, so the pairwise cosine matrix is
    computed once over the union of labels and sliced per snapshot (for
    series small enough to hold the full matrix). Any entropy failure is
    re-raised as TraceBuildError naming the iteration.
    """
    labels = series.all_labels()
    index = {lab: i for i, lab in enumerate(labels)}
    x = embeddings.matrix(labels)
    norms = np.linalg.norm(x, axis=1)
    if (norms == 0).any():
        bad = [labels[i] for i in np.nonzero(norms == 0)[0][:10]]
        raise ValueError(f"zero-norm embeddings for labels: {bad}")
    unit = x / norms[:, None]
    full_cos = np.clip(unit @ unit.T, -1.0, 1.0) if len(labels) <= GRAM_CAP else None

    samples: list[EntropySample] = []
    n_edges: list[int] = []
    n_surprising: list[int] = []
    for snap in series:
        try:
            idx = np.array([index[lab] for lab in snap.nodes])
            if full_cos is not None:
                cos = full_cos[np.ix_(idx, idx)].copy()
            else:
                sub = unit[idx]
                cos = np.clip(sub @ sub.T, -1.0, 1.0)

            a, d = adjacency_and_degrees(snap)
            s_struct = von_neumann_entropy(normalized_laplacian(a, d)).entropy_nats

            a_sem = (cos + 1.0) / 2.0
            np.fill_diagonal(a_sem, 0.0)
            a_sem = (a_sem + a_sem.T) / 2.0
            s_sem = von_neumann_entropy(
                normalized_laplacian(a_sem, a_sem.sum(axis=1))).entropy_nats

            local = snap.index_of()
            n_s = 0
            for u, v in snap.edges:
                if cos[local[u], local[v]] < surprise_threshold:
                    n_s += 1
        except Exception as exc:
            raise TraceBuildError(f"iteration {snap.iteration}: {exc}") from exc

        samples.append(EntropySample(iteration=snap.iteration, s_struct=s_struct,
                                     s_sem=s_sem,
                                     d_param=discovery_parameter(s_struct, s_sem)))
        n_edges.append(snap.n_edges)
        n_surprising.append(n_s)

    return EntropyTrace(samples=tuple(samples), n_edges=tuple(n_edges),
                        n_surprising=tuple(n_surprising),
                        surprise_threshold=surprise_threshold)


def pearson(x: Sequence[float], y: Sequence[float]) -> tuple[float, bool]:
    """Pearson r with a total degenerate convention.

    Returns (r, degenerate). A window where either series is constant has
    no defined correlation; report r = 0 with the flag set so downstream
    detection never sees NaN.
    """
    xa = np.asarray(x, dtype=float)
    ya = np.asarray(y, dtype=float)
    if xa.size != ya.size or xa.size < 2:
        raise ValueError("pearson needs two equal-length series of >= 2 points")
    xc = xa - xa.mean()
    yc = ya - ya.mean()
    sx = float(np.sqrt((xc * xc).sum()))
    sy = float(np.sqrt((yc * yc).sum()))
    if sx == 0.0 or sy == 0.0:
        return 0.0, True
    r = float((xc * yc).sum() / (sx * sy))
    return float(np.clip(r, -1.0, 1.0)), False


def rolling_cross_correlation(trace: EntropyTrace, window: int) -> CrossCorrelationTrace:
    """Pearson r of (s_struct, s_sem) over each sliding window.

    Each point is computed from exactly `window` consecutive samples and
    labeled with the iteration of the window's last sample.
    """
    if window < 3:
        raise ValueError(f"window must be >= 3, got {window}")
    if len(trace) < window:
        raise ValueError(f"trace length {len(trace)} shorter than window {window}")
    ss = trace.s_struct
    se = trace.s_sem
    iters = trace.iterations
    points = []
    for end in range(window - 1, len(trace)):
        lo = end - window + 1
        r, degenerate = pearson(ss[lo:end + 1], se[lo:end + 1])
        points.append(XCorrPoint(iteration=iters[end], pearson_r=r, degenerate=degenerate))
    return CrossCorrelationTrace(window=window, points=tuple(points))


def detect_transition(xcorr: CrossCorrelationTrace, sustain: int) -> TransitionReport:
    """Earliest point where r flips from >= 0 to < 0 and stays negative.

    The flip must hold for `sustain` consecutive windowed points; returns
    transition_iteration None when the trace never sustains a flip.
    """
    if sustain < 1:
        raise ValueError(f"sustain must be >= 1, got {sustain}")
    rs = [p.pearson_r for p in xcorr.points]
    for k in range(1, len(rs) - sustain + 1):
        if rs[k - 1] >= 0 and all(r < 0 for r in rs[k:k + sustain]):
            return TransitionReport(
                transition_iteration=xcorr.points[k].iteration,
                sustain_length=sustain,
                pre_mean_r=float(np.mean(rs[:k])),
                post_mean_r=float(np.mean(rs[k:])),
            )
    return TransitionReport(transition_iteration=None, sustain_length=sustain,
                            pre_mean_r=float(np.mean(rs)) if rs else float("nan"),
                            post_mean_r=float("nan"))


# ---------------------------------------------------------------------------
# CSV emission (canonical outputs; 9 significant digits for floats)
# ---------------------------------------------------------------------------

def _fmt(x: float) -> str:
    return f"{x:.9g}"


def write_trace_csv(trace: EntropyTrace, path: str | Path,
                    header_comments: Sequence[str] = ()) -> None:
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        for comment in header_comments:
            fh.write(f"# {comment}\n")
        fh.write("iteration,s_struct,s_sem,d_param,n_edges,n_surprising,alpha\n")
        for sample, n, n_s, alpha in zip(trace.samples, trace.n_edges,
                                         trace.n_surprising, trace.alphas):
            fh.write(f"{sample.iteration},{_fmt(sample.s_struct)},{_fmt(sample.s_sem)},"
                     f"{_fmt(sample.d_param)},{n},{n_s},{_fmt(alpha)}\n")


def write_xcorr_csv(xcorr: CrossCorrelationTrace, path: str | Path,
                    header_comments: Sequence[str] = ()) -> None:
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        for comment in header_comments:
            fh.write(f"# {comment}\n")
        fh.write("iteration,pearson_r,degenerate\n")
        for p in xcorr.points:
            fh.write(f"{p.iteration},{_fmt(p.pearson_r)},{int(p.degenerate)}\n")
