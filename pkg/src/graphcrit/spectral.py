"""Spectral entropy of graphs and the discovery parameter.

Structural entropy is the Shannon entropy of the normalized-Laplacian
eigenvalue distribution (eigenvalues rescaled to sum to one); semantic
entropy applies the same construction to a dense cosine-similarity
adjacency built from node embeddings. Their normalized difference is the
dimensionless discovery parameter.

All logarithms are natural (entropies in nats); the discovery parameter
is a ratio, so the base cancels there.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .embeddings import EmbeddingTable
from .graphs import GraphSnapshot, adjacency_and_degrees

# Dense eigensolves only; inputs beyond this size are rejected with guidance.
MAX_DENSE_NODES = 5000

# Eigenvalues in [-CLAMP_TOL, 0) are numerical noise and clamp to zero;
# anything below -CLAMP_TOL is treated as a failed eigensolve.
CLAMP_TOL = 1e-10

NO_SIGNAL = float("nan")  # discovery parameter when both entropies vanish


@dataclass(frozen=True)
class SpectrumResult:
    """Eigenvalues (ascending), their sum-to-one weights, and entropy in nats.

    zero_spectrum marks the degenerate all-zero case (edgeless graph),
    where entropy is defined to be 0 and the weights stay all-zero.
    """

    eigenvalues: np.ndarray
    weights: np.ndarray
    entropy_nats: float
    zero_spectrum: bool = False


@dataclass(frozen=True)
class EntropySample:
    """Per-iteration entropy pair and their discovery parameter."""

    iteration: int
    s_struct: float
    s_sem: float
    d_param: float


def normalized_laplacian(adjacency: np.ndarray, degrees: np.ndarray) -> np.ndarray:
    """L = I - D^(-1/2) A D^(-1/2) with zero rows for isolated nodes.

    Zero-degree entries of D^(-1/2) are treated as 0, so an isolated node
    contributes a zero row/column (eigenvalue 0) and L stays well-defined.
    """
    a = np.asarray(adjacency, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"adjacency must be square, got {a.shape}")
    if (a < 0).any():
        raise ValueError("adjacency has negative entries")
    if not np.allclose(a, a.T, atol=1e-12):
        raise ValueError("adjacency must be symmetric")
    d = np.asarray(degrees, dtype=float)
    d_inv_sqrt = np.where(d > 0, 1.0 / np.sqrt(np.where(d > 0, d, 1.0)), 0.0)
    norm_a = d_inv_sqrt[:, None] * a * d_inv_sqrt[None, :]
    lap = -norm_a
    np.fill_diagonal(lap, np.where(d > 0, 1.0, 0.0))
    return (lap + lap.T) / 2.0  # re-symmetrize against rounding


def spectral_weights(eigenvalues: np.ndarray) -> tuple[np.ndarray, bool]:
    """Clamp tiny negatives and rescale eigenvalues to sum to one.

    Returns (weights, zero_spectrum). Eigenvalues below -CLAMP_TOL abort:
    that indicates a broken input rather than rounding noise.
    """
    eigs = np.sort(np.asarray(eigenvalues, dtype=float))
    if eigs.size and float(eigs[0]) < -CLAMP_TOL:
        raise ValueError(f"eigenvalue {eigs[0]:.3e} below clamping tolerance -{CLAMP_TOL:g}")
    eigs = np.clip(eigs, 0.0, None)
    total = float(eigs.sum())
    if total <= 0.0:
        return np.zeros_like(eigs), True
    return eigs / total, False


def entropy_of_weights(weights: np.ndarray) -> float:
    """Shannon entropy in nats with the 0*ln(0) = 0 convention."""
    w = np.asarray(weights, dtype=float)
    nz = w[w > 0]
    return float(-(nz * np.log(nz)).sum()) + 0.0 if nz.size else 0.0  # +0.0 kills -0.0


def von_neumann_entropy(lap: np.ndarray) -> SpectrumResult:
    """Spectral entropy of a symmetric PSD matrix (dense eigensolve).

    The eigenvalues are rescaled to sum to one before taking the Shannon
    entropy. An all-zero spectrum (edgeless graph) yields entropy 0 with
    zero_spectrum=True instead of an exception.
    """
    lap = np.asarray(lap, dtype=float)
    if lap.ndim != 2 or lap.shape[0] != lap.shape[1]:
        raise ValueError(f"matrix must be square, got {lap.shape}")
    if lap.shape[0] > MAX_DENSE_NODES:
        raise ValueError(
            f"graph has {lap.shape[0]} nodes; dense eigensolve is capped at "
            f"{MAX_DENSE_NODES}. Analyze a subgraph or raise MAX_DENSE_NODES if "
            "you accept the cost.")
    if not np.allclose(lap, lap.T, atol=1e-10):
        raise ValueError("matrix must be symmetric")
    eigs = np.linalg.eigvalsh(lap)
    weights, degenerate = spectral_weights(eigs)
    entropy = entropy_of_weights(weights)
    return SpectrumResult(eigenvalues=np.sort(np.clip(eigs, 0.0, None)),
                          weights=weights, entropy_nats=entropy,
                          zero_spectrum=degenerate)


def structural_entropy(g: GraphSnapshot) -> SpectrumResult:
    """Von Neumann entropy of a snapshot's normalized Laplacian."""
    a, d = adjacency_and_degrees(g)
    return von_neumann_entropy(normalized_laplacian(a, d))


def semantic_adjacency(embeddings: EmbeddingTable,
                       node_order: Sequence[str]) -> np.ndarray:
    """Dense similarity adjacency: (cos(x_i, x_j) + 1) / 2 off-diagonal.

    The affine map is the minimal order-preserving rescale of cosine onto
    [0, 1]; the diagonal is forced to 0 (self-similarity excluded, matching
    the structural no-self-loop convention). No thresholding is applied.
    """
    x = embeddings.matrix(node_order)
    norms = np.linalg.norm(x, axis=1)
    if (norms == 0).any():
        bad = [node_order[i] for i in np.nonzero(norms == 0)[0][:10]]
        raise ValueError(f"zero-norm embeddings for labels: {bad}")
    unit = x / norms[:, None]
    cos = np.clip(unit @ unit.T, -1.0, 1.0)
    a_sem = (cos + 1.0) / 2.0
    np.fill_diagonal(a_sem, 0.0)
    return (a_sem + a_sem.T) / 2.0


def semantic_entropy(a_sem: np.ndarray) -> SpectrumResult:
    """Spectral entropy of the similarity adjacency (weighted degrees)."""
    a = np.asarray(a_sem, dtype=float)
    if (a < 0).any() or (a > 1).any():
        raise ValueError("semantic adjacency entries must lie in [0, 1]")
    if np.abs(np.diagonal(a)).max(initial=0.0) > 0:
        raise ValueError("semantic adjacency must have a zero diagonal")
    degrees = a.sum(axis=1)
    return von_neumann_entropy(normalized_laplacian(a, degrees))


def discovery_parameter(s_struct: float, s_sem: float) -> float:
    """(s_struct - s_sem) / (s_struct + s_sem), in [-1, 1].

    Returns the NO_SIGNAL sentinel (NaN) when both entropies are zero,
    which no well-defined result can produce.
    """
    if s_struct < 0 or s_sem < 0:
        raise ValueError(f"entropies must be non-negative, got ({s_struct}, {s_sem})")
    total = s_struct + s_sem
    if total == 0.0:
        return NO_SIGNAL
    return (s_struct - s_sem) / total


def entropy_sample(g: GraphSnapshot, embeddings: EmbeddingTable) -> EntropySample:
    """Structural entropy, semantic entropy, and discovery parameter of one snapshot."""
    s_struct = structural_entropy(g).entropy_nats
    s_sem = semantic_entropy(semantic_adjacency(embeddings, g.nodes)).entropy_nats
    return EntropySample(iteration=g.iteration, s_struct=s_struct, s_sem=s_sem,
                         d_param=discovery_parameter(s_struct, s_sem))
