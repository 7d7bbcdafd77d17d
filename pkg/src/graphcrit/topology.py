"""Topology/semantics diagnostics: centrality, diversity, communities.

Betweenness is the exact unweighted pair-count form (endpoints excluded,
each unordered pair counted once) via single-source shortest-path
accumulation. Local semantic neighbor diversity is the mean pairwise
Euclidean distance among a node's neighbor embeddings (0 below degree 2).
Louvain is a seeded greedy modularity optimizer with deterministic
tie-breaking, so partitions are bit-reproducible.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .dynamics import pearson
from .embeddings import EmbeddingTable, PcaProjection
from .graphs import GraphSnapshot


@dataclass(frozen=True)
class NodeMetrics:
    """Per-node structural and semantic measurements."""

    label: str
    degree: int
    betweenness: float
    diversity: float


@dataclass(frozen=True)
class CommunityAssignment:
    """Node label -> community id (contiguous from 0) plus partition modularity."""

    communities: Mapping[str, int]
    modularity: float

    def n_communities(self) -> int:
        return len(set(self.communities.values()))


@dataclass(frozen=True)
class CentroidHistogram:
    """Distances of nodes from their community centroid in 2-D PCA space."""

    bin_edges: np.ndarray
    counts: np.ndarray
    distances: Mapping[str, float]


# ---------------------------------------------------------------------------
# Betweenness centrality (Brandes accumulation)
# ---------------------------------------------------------------------------

def betweenness(g: GraphSnapshot, normalized: bool = False) -> dict[str, float]:
    """Exact betweenness for every node of an unweighted snapshot.

    Runs one BFS + dependency accumulation per source; unreachable pairs
    contribute nothing, endpoints are excluded, and each unordered pair is
    counted once. `normalized=True` rescales by 2/((n-1)(n-2)); the
    pair-count form is the default.
    """
    labels = g.nodes
    n = len(labels)
    index = g.index_of()
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in g.edges:
        i, j = index[u], index[v]
        adj[i].append(j)
        adj[j].append(i)
    for nb in adj:
        nb.sort()

    bc = [0.0] * n
    for s in range(n):
        stack: list[int] = []
        preds: list[list[int]] = [[] for _ in range(n)]
        sigma = [0] * n
        dist = [-1] * n
        sigma[s] = 1
        dist[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            stack.append(v)
            dv = dist[v]
            for w in adj[v]:
                if dist[w] < 0:
                    dist[w] = dv + 1
                    queue.append(w)
                if dist[w] == dv + 1:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        delta = [0.0] * n
        while stack:
            w = stack.pop()
            coeff = (1.0 + delta[w]) / sigma[w]
            for v in preds[w]:
                delta[v] += sigma[v] * coeff
            if w != s:
                bc[w] += delta[w]

    scale = 0.5  # each unordered pair was accumulated from both endpoints
    if normalized and n > 2:
        scale /= (n - 1) * (n - 2) / 2.0
    return {labels[i]: bc[i] * scale for i in range(n)}


# ---------------------------------------------------------------------------
# Local semantic neighbor diversity
# ---------------------------------------------------------------------------

def neighbor_diversity(g: GraphSnapshot, u: str, embeddings: EmbeddingTable) -> float:
    """Mean pairwise Euclidean distance among u's neighbor embeddings.

    Distances use the raw (not unit-normalized) vectors; nodes of degree
    below 2 have no neighbor pair and score 0.
    """
    if u not in g.index_of():
        raise KeyError(f"node {u!r} not in snapshot")
    nbrs = g.neighbors()[u]
    if len(nbrs) < 2:
        return 0.0
    x = embeddings.matrix(nbrs)
    return _mean_pairwise_distance(x)


def _mean_pairwise_distance(x: np.ndarray) -> float:
    sq = (x * x).sum(axis=1)
    d2 = sq[:, None] + sq[None, :] - 2.0 * (x @ x.T)
    iu = np.triu_indices(len(x), k=1)
    return float(np.sqrt(np.clip(d2[iu], 0.0, None)).mean())


def node_metrics(g: GraphSnapshot, embeddings: EmbeddingTable) -> list[NodeMetrics]:
    """Degree, betweenness, and neighbor diversity for every node."""
    bc = betweenness(g)
    adj = g.neighbors()
    out = []
    for label in g.nodes:
        nbrs = adj[label]
        div = _mean_pairwise_distance(embeddings.matrix(nbrs)) if len(nbrs) >= 2 else 0.0
        out.append(NodeMetrics(label=label, degree=len(nbrs),
                               betweenness=bc[label], diversity=div))
    return out


def bc_diversity_correlation(g: GraphSnapshot,
                             embeddings: EmbeddingTable) -> tuple[float, bool]:
    """Pearson r between betweenness and neighbor diversity over all nodes.

    Returns (r, degenerate); zero variance in either metric is reported as
    r = 0 with the degenerate flag rather than an error.
    """
    if g.n_nodes < 3:
        raise ValueError(f"need >= 3 nodes, got {g.n_nodes}")
    metrics = node_metrics(g, embeddings)
    return pearson([m.betweenness for m in metrics], [m.diversity for m in metrics])


# ---------------------------------------------------------------------------
# Louvain community detection
# ---------------------------------------------------------------------------

def louvain(g: GraphSnapshot, resolution: float = 1.0, seed: int = 0) -> CommunityAssignment:
    """Greedy modularity-optimization partition of a snapshot.

    Node visit order is shuffled by `seed` (counter-based generator) and
    ties in modularity gain break toward the lowest community id, so a
    fixed seed gives a bit-identical partition. Works per component on
    disconnected graphs; an edgeless graph yields singleton communities
    with modularity 0.
    """
    labels = g.nodes
    n = len(labels)
    index = g.index_of()

    if not g.edges:
        return CommunityAssignment(communities={lab: i for i, lab in enumerate(labels)},
                                   modularity=0.0)

    # weights[i][j]: edge weight between current-level super-nodes; diagonal
    # holds collapsed internal weight counted as ordered pairs.
    weights: list[dict[int, float]] = [dict() for _ in range(n)]
    for u, v in g.edges:
        i, j = index[u], index[v]
        weights[i][j] = weights[i].get(j, 0.0) + 1.0
        weights[j][i] = weights[j].get(i, 0.0) + 1.0
    membership = list(range(n))  # original node -> current community label
    rng = np.random.Generator(np.random.Philox(key=np.uint64(seed)))

    while True:
        improved, partition = _louvain_level(weights, resolution, rng)
        mapping = {node: comm for node, comm in enumerate(partition)}
        membership = [mapping[c] for c in membership]
        if not improved:
            break
        weights = _aggregate(weights, partition)

    # contiguous ids in order of first appearance over the node order
    relabel: dict[int, int] = {}
    communities: dict[str, int] = {}
    for i, lab in enumerate(labels):
        c = membership[i]
        if c not in relabel:
            relabel[c] = len(relabel)
        communities[lab] = relabel[c]
    q = modularity(g, communities, resolution=resolution)
    return CommunityAssignment(communities=communities, modularity=q)


def _louvain_level(weights: list[dict[int, float]], resolution: float,
                   rng: np.random.Generator) -> tuple[bool, list[int]]:
    """One level of local moves; returns (any_node_moved, node -> community)."""
    n = len(weights)
    k = [sum(w.values()) for w in weights]  # diagonal already counts ordered pairs
    two_m = float(sum(k))
    comm = list(range(n))
    comm_tot = k.copy()

    order = [int(i) for i in rng.permutation(n)]
    moved_any = False
    while True:
        moved = False
        for i in order:
            ci = comm[i]
            # weight from i to each adjacent community (self-loops excluded)
            links: dict[int, float] = {}
            for j, w in weights[i].items():
                if j != i:
                    links[comm[j]] = links.get(comm[j], 0.0) + w
            comm_tot[ci] -= k[i]
            base = links.get(ci, 0.0) - resolution * comm_tot[ci] * k[i] / two_m
            best_c, best_gain = ci, base
            # sorted scan + strict > : equal-gain candidates resolve to the
            # lowest community id, and ties with staying never move
            for c in sorted(links):
                if c == ci:
                    continue
                gain = links[c] - resolution * comm_tot[c] * k[i] / two_m
                if gain > best_gain:
                    best_c, best_gain = c, gain
            comm[i] = best_c
            comm_tot[best_c] += k[i]
            if best_c != ci:
                moved = True
                moved_any = True
        if not moved:
            break

    relabel: dict[int, int] = {}
    partition = []
    for c in comm:
        if c not in relabel:
            relabel[c] = len(relabel)
        partition.append(relabel[c])
    return moved_any, partition


def _aggregate(weights: list[dict[int, float]], partition: list[int]) -> list[dict[int, float]]:
    n_comm = max(partition) + 1
    agg: list[dict[int, float]] = [dict() for _ in range(n_comm)]
    for i, row in enumerate(weights):
        ci = partition[i]
        for j, w in row.items():
            cj = partition[j]
            agg[ci][cj] = agg[ci].get(cj, 0.0) + w
    return agg


def modularity(g: GraphSnapshot, communities: Mapping[str, int],
               resolution: float = 1.0) -> float:
    """Newman modularity of a partition of an unweighted snapshot."""
    m = g.n_edges
    if m == 0:
        return 0.0
    adj = g.neighbors()
    degree = {u: len(adj[u]) for u in g.nodes}
    internal = sum(1 for u, v in g.edges if communities[u] == communities[v])
    comm_deg: dict[int, float] = {}
    for u in g.nodes:
        comm_deg[communities[u]] = comm_deg.get(communities[u], 0.0) + degree[u]
    q = internal / m
    q -= resolution * sum((d / (2.0 * m)) ** 2 for d in comm_deg.values())
    return q


# ---------------------------------------------------------------------------
# Community centroid distances and simple diagnostics
# ---------------------------------------------------------------------------

def centroid_distance_histogram(proj: PcaProjection, communities: CommunityAssignment,
                                n_bins: int) -> CentroidHistogram:
    """Histogram of node distances from their community centroid in PCA space.

    Centroids are the mean 2-D position per community; bins are equal
    width over [0, max distance].
    """
    if n_bins < 1:
        raise ValueError(f"n_bins must be >= 1, got {n_bins}")
    missing = [lab for lab in proj.coordinates if lab not in communities.communities]
    if missing:
        raise KeyError(f"labels missing a community assignment: {missing[:10]}")

    groups: dict[int, list[str]] = {}
    for lab in proj.coordinates:
        groups.setdefault(communities.communities[lab], []).append(lab)
    centroids = {
        c: np.mean([proj.coordinates[lab] for lab in labs], axis=0)
        for c, labs in groups.items()
    }
    distances = {
        lab: float(np.linalg.norm(np.array(proj.coordinates[lab])
                                  - centroids[communities.communities[lab]]))
        for lab in proj.coordinates
    }
    values = np.array(list(distances.values()))
    hi = float(values.max()) if values.size and values.max() > 0 else 1.0
    counts, edges = np.histogram(values, bins=n_bins, range=(0.0, hi))
    return CentroidHistogram(bin_edges=edges, counts=counts, distances=distances)


def degree_distribution(g: GraphSnapshot) -> dict[int, int]:
    """Exact degree histogram; counts sum to the node count."""
    adj = g.neighbors()
    return dict(sorted(Counter(len(adj[u]) for u in g.nodes).items()))


def clustering_coefficient(g: GraphSnapshot) -> float:
    """Global average of local clustering coefficients.

    Nodes with degree < 2 contribute 0; returns 0 for an empty node set.
    """
    if g.n_nodes == 0:
        raise ValueError("snapshot has no nodes")
    adj = {u: set(nbrs) for u, nbrs in g.neighbors().items()}
    total = 0.0
    for u, nbrs in adj.items():
        k = len(nbrs)
        if k < 2:
            continue
        nb = sorted(nbrs)
        links = sum(1 for a in range(k) for b in range(a + 1, k)
                    if nb[b] in adj[nb[a]])
        total += 2.0 * links / (k * (k - 1))
    return total / g.n_nodes
