"""Embedding tables, deterministic fallback vectors, cosine, and 2-D PCA.

Embedding file format: UTF-8 text whose first line is ``#dim <d>``; every
following line is ``label<TAB>v1,v2,...,vd`` with decimal floats. Labels
must match graph node labels exactly.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

DEFAULT_DIM = 384  # native width of common sentence encoders; keeps files interchangeable


@dataclass(frozen=True)
class EmbeddingTable:
    """Label -> fixed-dimension vector map. Vectors never have zero norm."""

    dim: int
    vectors: Mapping[str, np.ndarray]

    def __post_init__(self):
        for label, vec in self.vectors.items():
            if vec.shape != (self.dim,):
                raise ValueError(
                    f"embedding for {label!r} has dim {vec.shape}, expected ({self.dim},)")
            if not np.isfinite(vec).all():
                raise ValueError(f"embedding for {label!r} has non-finite entries")
            if float(np.linalg.norm(vec)) == 0.0:
                raise ValueError(f"embedding for {label!r} has zero norm")

    def __contains__(self, label: str) -> bool:
        return label in self.vectors

    def __len__(self) -> int:
        return len(self.vectors)

    def get(self, label: str) -> np.ndarray:
        return self.vectors[label]

    def matrix(self, labels: Sequence[str]) -> np.ndarray:
        """Stack vectors for `labels` into an (n, dim) array (checked)."""
        missing = [lab for lab in labels if lab not in self.vectors]
        if missing:
            raise KeyError(f"missing embeddings for labels: {missing[:10]}"
                           + ("..." if len(missing) > 10 else ""))
        return np.stack([self.vectors[lab] for lab in labels])


@dataclass(frozen=True)
class PcaProjection:
    """2-D PCA coordinates per label plus explained-variance fractions."""

    coordinates: Mapping[str, tuple[float, float]]
    explained_variance: tuple[float, float]


def load_embeddings(path: str | Path) -> EmbeddingTable:
    """Read an embedding file; errors name the offending label/line."""
    path = Path(path)
    with path.open("r", encoding="utf-8") as fh:
        first = fh.readline()
        if not first:
            raise ValueError(f"{path}: empty embedding file")
        m = first.strip().split()
        if len(m) != 2 or m[0] != "#dim":
            raise ValueError(f"{path}: first line must be '#dim <d>', got {first.strip()!r}")
        dim = int(m[1])
        if dim < 1:
            raise ValueError(f"{path}: dimension must be positive, got {dim}")

        vectors: dict[str, np.ndarray] = {}
        for lineno, raw in enumerate(fh, start=2):
            line = raw.rstrip("\n")
            if not line.strip():
                continue
            fields = line.split("\t")
            if len(fields) != 2:
                raise ValueError(f"{path}:{lineno}: expected 'label<TAB>floats'")
            label, payload = fields
            if label in vectors:
                raise ValueError(f"{path}:{lineno}: duplicate label {label!r}")
            values = np.array([float(x) for x in payload.split(",")], dtype=float)
            if values.shape != (dim,):
                raise ValueError(
                    f"{path}:{lineno}: {label!r} has {values.size} values, expected {dim}")
            vectors[label] = values
    if not vectors:
        raise ValueError(f"{path}: no embedding rows")
    return EmbeddingTable(dim=dim, vectors=vectors)


def save_embeddings(table: EmbeddingTable, path: str | Path) -> None:
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        fh.write(f"#dim {table.dim}\n")
        for label, vec in table.vectors.items():
            fh.write(label + "\t" + ",".join(repr(float(x)) for x in vec) + "\n")


def _philox_for(label: str, seed: int) -> np.random.Generator:
    # Stable 128-bit key from (label, seed); Python's hash() varies per process.
    digest = hashlib.blake2b(f"{seed}\x00{label}".encode("utf-8"), digest_size=16).digest()
    key = np.frombuffer(digest, dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def fallback_embed(label: str, dim: int = DEFAULT_DIM, seed: int = 0) -> np.ndarray:
    """Deterministic unit vector for a label, for runs without a real encoder.

    Coordinates are standard-normal draws from a counter-based generator
    keyed by hash(label, seed), then unit-normalized; same inputs always
    produce the same vector.
    """
    if dim < 2:
        raise ValueError(f"fallback embedding dim must be >= 2, got {dim}")
    rng = _philox_for(label, seed)
    while True:
        vec = rng.standard_normal(dim)
        norm = float(np.linalg.norm(vec))
        if norm > 0.0:  # astronomically unlikely to loop
            return vec / norm


def fallback_table(labels: Iterable[str], dim: int = DEFAULT_DIM,
                   seed: int = 0) -> EmbeddingTable:
    """Fallback embeddings for every label, in the given order."""
    return EmbeddingTable(dim=dim,
                          vectors={lab: fallback_embed(lab, dim, seed) for lab in labels})


def cosine(u: np.ndarray, v: np.ndarray) -> float:
    """Cosine similarity in [-1, 1], clamped against rounding."""
    nu = float(np.linalg.norm(u))
    nv = float(np.linalg.norm(v))
    if nu == 0.0 or nv == 0.0:
        raise ValueError("cosine undefined for zero-norm vector")
    return float(np.clip(float(np.dot(u, v)) / (nu * nv), -1.0, 1.0))


def pca_2d(table: EmbeddingTable, labels: Sequence[str]) -> PcaProjection:
    """Project `labels` onto the top-2 principal axes of their embeddings.

    Mean-centered covariance eigendecomposition, no whitening. Sign
    convention: each axis is flipped so its largest-magnitude loading is
    positive, which keeps golden-file outputs stable.
    """
    if len(labels) < 3:
        raise ValueError(f"PCA needs at least 3 points, got {len(labels)}")
    if table.dim < 2:
        raise ValueError("PCA to 2 components needs embedding dim >= 2")
    x = table.matrix(labels)
    centered = x - x.mean(axis=0)
    cov = centered.T @ centered / (len(labels) - 1)
    eigvals, eigvecs = np.linalg.eigh(cov)
    order = np.argsort(eigvals)[::-1]
    eigvals = np.clip(eigvals[order], 0.0, None)
    axes = eigvecs[:, order[:2]]
    for k in range(2):
        loading = axes[np.argmax(np.abs(axes[:, k])), k]
        if loading < 0:
            axes[:, k] = -axes[:, k]
    coords = centered @ axes
    total = float(eigvals.sum())
    explained = (float(eigvals[0]) / total, float(eigvals[1]) / total) if total > 0 else (0.0, 0.0)
    return PcaProjection(
        coordinates={lab: (float(coords[i, 0]), float(coords[i, 1]))
                     for i, lab in enumerate(labels)},
        explained_variance=explained,
    )
