"""Compute real node-label embeddings and write the analysis embedding format.

Reads one label per line, encodes each unique label verbatim with a
pretrained sentence encoder (all-MiniLM-L6-v2 by default, 384-wide), and
writes `#dim <d>` followed by `label<TAB>v1,...,vd` rows in input order:
byte-compatible with the analysis toolkit's embedding loader. Runs are
idempotent for a fixed model version.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

logger = logging.getLogger(__name__)

DEFAULT_MODEL = "sentence-transformers/all-MiniLM-L6-v2"

# An encoder maps a batch of labels to an (n, dim) float array.
Encoder = Callable[[Sequence[str]], np.ndarray]


class ExportError(RuntimeError):
    """Unusable inputs or an unavailable encoder model."""


@dataclass(frozen=True)
class ExportJob:
    labels_path: Path
    out_path: Path
    model_id: str = DEFAULT_MODEL
    batch_size: int = 64

    def __post_init__(self):
        if self.batch_size < 1:
            raise ExportError(f"batch size must be >= 1, got {self.batch_size}")


def read_labels(path: Path) -> tuple[list[str], int]:
    """Unique labels in file order plus the skipped-duplicate count."""
    if not path.exists():
        raise ExportError(f"labels file not found: {path}")
    labels: list[str] = []
    seen: set[str] = set()
    duplicates = 0
    for raw in path.read_text(encoding="utf-8").splitlines():
        label = raw.strip()
        if not label:
            continue
        if label in seen:
            duplicates += 1
            continue
        seen.add(label)
        labels.append(label)
    if not labels:
        raise ExportError(f"labels file is empty: {path}")
    return labels, duplicates


def load_sentence_encoder(model_id: str) -> Encoder:
    """Wrap a sentence-transformers model; failure becomes ExportError."""
    try:
        from sentence_transformers import SentenceTransformer
    except Exception as exc:
        raise ExportError(f"sentence-transformers is not installed: {exc}") from exc
    try:
        model = SentenceTransformer(model_id)
    except Exception as exc:
        raise ExportError(f"could not load encoder model {model_id!r}: {exc}") from exc

    def encode(batch: Sequence[str]) -> np.ndarray:
        return np.asarray(model.encode(list(batch), show_progress_bar=False),
                          dtype=float)

    return encode


def export(job: ExportJob, encoder: Encoder | None = None) -> Path:
    """Encode every unique label and write the embedding file.

    `encoder` defaults to the pretrained model named in the job; tests may
    inject a deterministic stand-in. Returns the written path.
    """
    labels, duplicates = read_labels(job.labels_path)
    if duplicates:
        logger.warning("skipped %d duplicate label(s)", duplicates)
    if encoder is None:
        encoder = load_sentence_encoder(job.model_id)

    rows: list[np.ndarray] = []
    for start in range(0, len(labels), job.batch_size):
        batch = labels[start:start + job.batch_size]
        vectors = np.atleast_2d(encoder(batch))
        if vectors.shape[0] != len(batch):
            raise ExportError(
                f"encoder returned {vectors.shape[0]} vectors for a batch of {len(batch)}")
        rows.append(vectors)
    matrix = np.vstack(rows)
    if not np.isfinite(matrix).all():
        raise ExportError("encoder produced non-finite values")
    norms = np.linalg.norm(matrix, axis=1)
    if (norms == 0).any():
        bad = labels[int(np.nonzero(norms == 0)[0][0])]
        raise ExportError(f"encoder produced a zero vector for label {bad!r}")

    dim = matrix.shape[1]
    with job.out_path.open("w", encoding="utf-8") as fh:
        fh.write(f"#dim {dim}\n")
        for label, vec in zip(labels, matrix):
            fh.write(label + "\t" + ",".join(repr(float(x)) for x in vec) + "\n")
    return job.out_path


def main(argv: Sequence[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="export-embeddings",
        description="Encode node labels with a sentence encoder and write "
                    "the analysis embedding file format")
    parser.add_argument("--labels", required=True, help="file with one label per line")
    parser.add_argument("--out", required=True, help="output embedding file")
    parser.add_argument("--model", default=DEFAULT_MODEL, help="encoder model id")
    parser.add_argument("--batch", type=int, default=64, help="encode batch size")
    args = parser.parse_args(argv)

    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    try:
        job = ExportJob(labels_path=Path(args.labels), out_path=Path(args.out),
                        model_id=args.model, batch_size=args.batch)
        out = export(job)
    except ExportError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
