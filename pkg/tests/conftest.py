import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))  # makes `oracles` importable

from graphcrit import EmbeddingTable, GraphSnapshot


def snapshot(nodes, edges, iteration=0) -> GraphSnapshot:
    """Terse snapshot builder for tests."""
    return GraphSnapshot(iteration=iteration, nodes=tuple(nodes),
                         edges=frozenset(tuple(sorted(e)) for e in edges))


@pytest.fixture
def k2():
    return snapshot("ab", [("a", "b")])


@pytest.fixture
def k3():
    return snapshot("abc", [("a", "b"), ("a", "c"), ("b", "c")])


@pytest.fixture
def path3():
    return snapshot("abc", [("a", "b"), ("b", "c")])


@pytest.fixture
def star3():
    """Hub h with three leaves (4 nodes)."""
    return snapshot("habc", [("h", "a"), ("h", "b"), ("h", "c")])


def table_from(vectors: dict) -> EmbeddingTable:
    arrays = {k: np.asarray(v, dtype=float) for k, v in vectors.items()}
    dim = len(next(iter(arrays.values())))
    return EmbeddingTable(dim=dim, vectors=arrays)
