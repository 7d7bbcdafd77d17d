"""Independent reference implementations used to cross-check production code.

Everything here is deliberately written from scratch against the
definitions (cyclic Jacobi rotations, literal shortest-path enumeration,
exhaustive partition search) and never calls the library's own
eigensolver / accumulation paths.
"""

from __future__ import annotations

import itertools
import math
from collections import deque

import numpy as np


# ---------------------------------------------------------------------------
# Dense symmetric eigensolve: cyclic Jacobi rotations
# ---------------------------------------------------------------------------

def jacobi_eigenvalues(matrix, tol: float = 1e-14, max_sweeps: int = 200) -> list[float]:
    a = np.array(matrix, dtype=float, copy=True)
    n = a.shape[0]
    if n == 1:
        return [float(a[0, 0])]
    for _ in range(max_sweeps):
        off = math.sqrt(sum(a[p, q] ** 2 for p in range(n) for q in range(n) if p != q))
        if off < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p, q]) < tol / (n * n):
                    continue
                if a[q, q] == a[p, p]:
                    t = 1.0
                else:
                    theta = (a[q, q] - a[p, p]) / (2.0 * a[p, q])
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp, akq = a[k, p], a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk, aqk = a[p, k], a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
    return sorted(float(a[i, i]) for i in range(n))


def laplacian_by_hand(nodes, edges) -> np.ndarray:
    """Normalized Laplacian built with explicit loops (no library calls)."""
    index = {u: i for i, u in enumerate(nodes)}
    n = len(nodes)
    adj = [[0.0] * n for _ in range(n)]
    for u, v in edges:
        adj[index[u]][index[v]] = 1.0
        adj[index[v]][index[u]] = 1.0
    deg = [sum(row) for row in adj]
    lap = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j and deg[i] > 0:
                lap[i][j] = 1.0
            elif adj[i][j] > 0:
                lap[i][j] = -adj[i][j] / math.sqrt(deg[i] * deg[j])
    return np.array(lap)


def entropy_from_spectrum(eigenvalues) -> float:
    """Shannon entropy of sum-normalized eigenvalues, plain math.log loop."""
    eigs = [max(0.0, float(e)) for e in eigenvalues]
    total = sum(eigs)
    if total == 0.0:
        return 0.0
    s = 0.0
    for e in eigs:
        w = e / total
        if w > 0.0:
            s -= w * math.log(w)
    return s


def graph_entropy_oracle(nodes, edges) -> float:
    return entropy_from_spectrum(jacobi_eigenvalues(laplacian_by_hand(nodes, edges)))


def weighted_entropy_oracle(weight_matrix) -> float:
    """Spectral entropy of a weighted adjacency, built by hand."""
    w = np.asarray(weight_matrix, dtype=float)
    n = w.shape[0]
    deg = [float(sum(w[i])) for i in range(n)]
    lap = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j and deg[i] > 0:
                lap[i][j] = 1.0
            elif w[i][j] != 0 and deg[i] > 0 and deg[j] > 0:
                lap[i][j] = -w[i][j] / math.sqrt(deg[i] * deg[j])
    return entropy_from_spectrum(jacobi_eigenvalues(np.array(lap)))


# ---------------------------------------------------------------------------
# Betweenness: literal enumeration of every shortest path
# ---------------------------------------------------------------------------

def brute_betweenness(nodes, edges) -> dict:
    adj: dict = {u: set() for u in nodes}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)

    def distances(src):
        dist = {src: 0}
        queue = deque([src])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    queue.append(w)
        return dist

    def all_shortest_paths(s, t, dist):
        paths = []

        def backtrack(v, suffix):
            if v == s:
                paths.append([s] + suffix)
                return
            for w in adj[v]:
                if dist.get(w) == dist[v] - 1:
                    backtrack(w, [v] + suffix)

        backtrack(t, [])
        return paths

    bc = {u: 0.0 for u in nodes}
    for s, t in itertools.combinations(list(nodes), 2):
        dist = distances(s)
        if t not in dist:
            continue
        paths = all_shortest_paths(s, t, dist)
        for u in nodes:
            if u == s or u == t:
                continue
            through = sum(1 for p in paths if u in p)
            bc[u] += through / len(paths)
    return bc


# ---------------------------------------------------------------------------
# Modularity: exhaustive search over all set partitions
# ---------------------------------------------------------------------------

def iter_partitions(items: list):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in iter_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [part[i] + [first]] + part[i + 1:]
        yield part + [[first]]


def partition_modularity(nodes, edges, groups) -> float:
    comm = {}
    for cid, group in enumerate(groups):
        for u in group:
            comm[u] = cid
    m = len(edges)
    if m == 0:
        return 0.0
    deg = {u: 0 for u in nodes}
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    internal = sum(1 for u, v in edges if comm[u] == comm[v])
    q = internal / m
    comm_deg: dict = {}
    for u in nodes:
        comm_deg[comm[u]] = comm_deg.get(comm[u], 0) + deg[u]
    q -= sum((d / (2.0 * m)) ** 2 for d in comm_deg.values())
    return q


def best_partition_exhaustive(nodes, edges):
    """(argmax partition as frozenset-of-frozensets, its modularity)."""
    best_q = -math.inf
    best = None
    for part in iter_partitions(list(nodes)):
        q = partition_modularity(nodes, edges, part)
        if q > best_q:
            best_q = q
            best = frozenset(frozenset(g) for g in part)
    return best, best_q


# ---------------------------------------------------------------------------
# Misc small oracles
# ---------------------------------------------------------------------------

def brute_clustering(nodes, edges) -> float:
    adj = {u: set() for u in nodes}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    total = 0.0
    for u in nodes:
        nbrs = sorted(adj[u])
        k = len(nbrs)
        if k < 2:
            continue
        triangles = sum(1 for a, b in itertools.combinations(nbrs, 2) if b in adj[a])
        total += 2.0 * triangles / (k * (k - 1))
    return total / len(nodes)


def covariance_eigp_oracle(points) -> list[float]:
    """Eigenvalues of the sample covariance, built with loops + Jacobi."""
    x = np.asarray(points, dtype=float)
    n, d = x.shape
    mean = [sum(x[:, j]) / n for j in range(d)]
    cov = [[0.0] * d for _ in range(d)]
    for a in range(d):
        for b in range(d):
            cov[a][b] = sum((x[i, a] - mean[a]) * (x[i, b] - mean[b])
                            for i in range(n)) / (n - 1)
    return sorted(jacobi_eigenvalues(np.array(cov)), reverse=True)


def central_difference_gradient(f, theta: np.ndarray, eps: float = 1e-5) -> np.ndarray:
    grad = np.zeros_like(theta, dtype=float)
    for i in range(theta.size):
        up = theta.copy()
        dn = theta.copy()
        up[i] += eps
        dn[i] -= eps
        grad[i] = (f(up) - f(dn)) / (2.0 * eps)
    return grad


def random_snapshot(rng: np.random.Generator, n_nodes: int, p_edge: float,
                    iteration: int = 0):
    """Random simple graph as (nodes, edges) label tuples."""
    nodes = tuple(f"v{i}" for i in range(n_nodes))
    edges = set()
    for i in range(n_nodes):
        for j in range(i + 1, n_nodes):
            if rng.random() < p_edge:
                edges.add((nodes[i], nodes[j]))
    return nodes, edges
