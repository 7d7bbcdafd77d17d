"""Synthetic snapshot-series generator with controllable surprise links.

Emulates the qualitative regime of an agentically grown concept graph:
preferential + semantic attachment around embedding centroids, plus a
tunable rate q of long-range links to semantically distant targets. The
steady-state fraction of surprising edges then tracks q, which makes the
generator a self-contained test bed for the criticality analyses.

Everything is driven by counter-based generators keyed on (seed,
iteration), so corpora are bit-reproducible and iterations could be
re-derived independently.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .embeddings import EmbeddingTable, save_embeddings
from .graphs import GraphSnapshot, SnapshotSeries, write_edge_list

SURPRISE_COS = 0.1  # raw-cosine cutoff shared with edge classification
# Weighted attachment draws from targets at least this similar, keeping a
# clear cosine gap above the surprise cutoff: the surprising-edge fraction
# then tracks surprise_prob and is insensitive to low thresholds.
COHERENT_MIN_COS = 0.3
SURPRISE_RETRY_CAP = 64
SEED_CLIQUE_SIZE = 4


@dataclass(frozen=True)
class GrowthConfig:
    """Generator hyperparameters; see grow() for the mechanics."""

    seed: int = 0
    n_iterations: int = 100
    nodes_per_iter: int = 1
    edges_per_new_node: int = 3
    pref_weight: float = 1.0
    sem_weight: float = 1.0
    surprise_prob: float = 0.1
    n_centroids: int = 8
    embed_dim: int = 64
    embed_noise: float = 0.15

    def __post_init__(self):
        if self.seed < 0:
            raise ValueError("seed must be non-negative")
        if self.n_iterations < 1:
            raise ValueError("n_iterations must be >= 1")
        if self.nodes_per_iter < 1:
            raise ValueError("nodes_per_iter must be >= 1")
        if self.edges_per_new_node < 1:
            raise ValueError("edges_per_new_node must be >= 1")
        if self.pref_weight < 0 or self.sem_weight < 0:
            raise ValueError("attachment weights must be non-negative")
        if self.pref_weight + self.sem_weight <= 0:
            raise ValueError("pref_weight + sem_weight must be positive")
        if not 0.0 <= self.surprise_prob <= 1.0:
            raise ValueError("surprise_prob must lie in [0, 1]")
        if self.n_centroids < 1:
            raise ValueError("n_centroids must be >= 1")
        if self.embed_dim < 2:
            raise ValueError("embed_dim must be >= 2")
        if self.embed_noise < 0:
            raise ValueError("embed_noise must be non-negative")


@dataclass(frozen=True)
class GrowthRun:
    """A generated corpus plus generation bookkeeping."""

    series: SnapshotSeries
    embeddings: EmbeddingTable
    surprise_links: int
    surprise_fallbacks: int  # retry cap exhausted; edge fell back to weighted rule


def _rng(seed: int, stream: int) -> np.random.Generator:
    return np.random.Generator(
        np.random.Philox(key=np.array([seed, stream], dtype=np.uint64)))


def _centroids(cfg: GrowthConfig, rng: np.random.Generator) -> np.ndarray:
    """Near-orthogonal unit centroids (exactly orthogonal when dim allows)."""
    raw = rng.standard_normal((cfg.embed_dim, cfg.n_centroids))
    if cfg.n_centroids <= cfg.embed_dim:
        q, _ = np.linalg.qr(raw)
        return q.T[:cfg.n_centroids]
    return raw.T / np.linalg.norm(raw.T, axis=1)[:, None]


def _sample_embedding(centroid: np.ndarray, noise: float,
                      rng: np.random.Generator) -> np.ndarray:
    vec = centroid + noise * rng.standard_normal(centroid.shape)
    norm = float(np.linalg.norm(vec))
    if norm == 0.0:
        vec = centroid.copy()
        norm = float(np.linalg.norm(vec))
    return vec / norm


def grow(cfg: GrowthConfig) -> GrowthRun:
    """Generate a snapshot series and its embedding table.

    Starts from a small clique whose nodes sit on distinct centroids. Each
    iteration adds nodes_per_iter nodes (embedding = random centroid plus
    Gaussian noise, unit-normalized), and each new node attaches up to
    edges_per_new_node edges:

      * with probability surprise_prob: a uniformly random semantically
        distant target (raw cosine < 0.1, rejection-sampled up to the
        retry cap, falling back to the weighted rule when exhausted);
      * otherwise: a target sampled with weight
        pref_weight * degree + sem_weight * scaled-similarity drawn from
        the semantically coherent candidates (cosine >= COHERENT_MIN_COS)
        when any exist, so the surprising-edge fraction is governed by
        surprise_prob rather than by centroid geometry.

    One snapshot is recorded per iteration; the run is fully determined
    by the config.
    """
    setup_rng = _rng(cfg.seed, 0)
    centroids = _centroids(cfg, setup_rng)

    labels: list[str] = []
    vectors: list[np.ndarray] = []
    degrees: list[int] = []
    adjacency: list[set[int]] = []
    edges: set[tuple[str, str]] = set()

    def add_node(vec: np.ndarray) -> int:
        idx = len(labels)
        labels.append(f"n{idx:05d}")
        vectors.append(vec)
        degrees.append(0)
        adjacency.append(set())
        return idx

    def add_edge(i: int, j: int) -> None:
        adjacency[i].add(j)
        adjacency[j].add(i)
        degrees[i] += 1
        degrees[j] += 1
        u, v = labels[i], labels[j]
        edges.add((u, v) if u < v else (v, u))

    for i in range(SEED_CLIQUE_SIZE):
        add_node(_sample_embedding(centroids[i % cfg.n_centroids],
                                   cfg.embed_noise, setup_rng))
    for i in range(SEED_CLIQUE_SIZE):
        for j in range(i + 1, SEED_CLIQUE_SIZE):
            add_edge(i, j)

    surprise_links = 0
    surprise_fallbacks = 0
    snapshots: list[GraphSnapshot] = []

    for t in range(1, cfg.n_iterations + 1):
        rng = _rng(cfg.seed, t)
        for _ in range(cfg.nodes_per_iter):
            centroid = centroids[int(rng.integers(cfg.n_centroids))]
            vec = _sample_embedding(centroid, cfg.embed_noise, rng)
            existing = np.array(vectors)  # unit rows
            new = add_node(vec)
            cos = np.clip(existing @ vec, -1.0, 1.0)
            degree_arr = np.array(degrees[:new], dtype=float)

            for _ in range(cfg.edges_per_new_node):
                open_targets = [j for j in range(new) if j not in adjacency[new]]
                if not open_targets:
                    break
                target: int | None = None
                if rng.random() < cfg.surprise_prob:
                    for _ in range(SURPRISE_RETRY_CAP):
                        j = open_targets[int(rng.integers(len(open_targets)))]
                        if cos[j] < SURPRISE_COS:
                            target = j
                            surprise_links += 1
                            break
                    if target is None:
                        surprise_fallbacks += 1
                if target is None:
                    # cascade keeps weighted picks out of the surprising
                    # class whenever the geometry allows it
                    pool = [j for j in open_targets if cos[j] >= COHERENT_MIN_COS]
                    if not pool:
                        pool = [j for j in open_targets if cos[j] >= SURPRISE_COS]
                    if not pool:
                        pool = open_targets
                    w = (cfg.pref_weight * degree_arr[pool]
                         + cfg.sem_weight * (cos[pool] + 1.0) / 2.0)
                    total = float(w.sum())
                    if total <= 0.0:
                        target = pool[int(rng.integers(len(pool)))]
                    else:
                        target = pool[int(rng.choice(len(pool), p=w / total))]
                add_edge(new, target)
                degree_arr = np.array(degrees[:new], dtype=float)
        snapshots.append(GraphSnapshot(iteration=t, nodes=tuple(labels),
                                       edges=frozenset(edges)))

    table = EmbeddingTable(dim=cfg.embed_dim,
                           vectors={lab: vec for lab, vec in zip(labels, vectors)})
    series = SnapshotSeries(snapshots=tuple(snapshots))
    return GrowthRun(series=series, embeddings=table,
                     surprise_links=surprise_links,
                     surprise_fallbacks=surprise_fallbacks)


def generate_series(cfg: GrowthConfig) -> tuple[SnapshotSeries, EmbeddingTable]:
    """Series and embeddings only; use grow() when the bookkeeping matters."""
    run = grow(cfg)
    return run.series, run.embeddings


def write_corpus(run: GrowthRun, out_dir: str | Path, pad: int = 4) -> list[Path]:
    """Write a generated corpus in the standard on-disk formats.

    One `graph_<zero-padded iteration>.edges` file per snapshot plus an
    `embeddings.tsv` table, indistinguishable from an ingested corpus.
    Returns the written paths.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    pad = max(pad, len(str(run.series.iterations[-1])))
    written = []
    for snap in run.series:
        path = out_dir / f"graph_{snap.iteration:0{pad}d}.edges"
        write_edge_list(snap, path)
        written.append(path)
    emb_path = out_dir / "embeddings.tsv"
    save_embeddings(run.embeddings, emb_path)
    written.append(emb_path)
    return written
