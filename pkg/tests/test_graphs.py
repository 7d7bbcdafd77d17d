import logging

import numpy as np
import pytest

from graphcrit import (GraphSnapshot, SnapshotSeries, adjacency_and_degrees,
                       load_edge_list, load_series, write_edge_list)
from graphcrit.graphs import EdgeListParseError

from conftest import snapshot


def write(path, text):
    path.write_text(text, encoding="utf-8")
    return path


# ---------------------------------------------------------------------------
# load_edge_list
# ---------------------------------------------------------------------------

def test_load_merges_duplicates_and_drops_self_loops(tmp_path, caplog):
    f = write(tmp_path / "g.edges", "a\tb\nb\ta\na\ta\n")
    with caplog.at_level(logging.WARNING):
        snap = load_edge_list(f, iteration=0)
    assert snap.nodes == ("a", "b")
    assert snap.edges == frozenset({("a", "b")})
    assert "1 self-loop" in caplog.text


def test_load_triangle(tmp_path):
    f = write(tmp_path / "g.edges", "a\tb\nb\tc\nc\ta\n")
    snap = load_edge_list(f, iteration=3)
    assert snap.n_nodes == 3
    assert snap.n_edges == 3
    assert snap.iteration == 3


def test_load_ignores_comments_and_blank_lines(tmp_path):
    f = write(tmp_path / "g.edges", "# header\n\na\tb\n  \n# note\nb\tc\n")
    snap = load_edge_list(f, iteration=0)
    assert snap.n_edges == 2


def test_load_malformed_line_reports_lineno(tmp_path):
    f = write(tmp_path / "g.edges", "a\tb\na b c\n")
    with pytest.raises(EdgeListParseError, match=r":2:"):
        load_edge_list(f, iteration=0)


def test_load_three_fields_rejected(tmp_path):
    f = write(tmp_path / "g.edges", "a\tb\tc\n")
    with pytest.raises(EdgeListParseError, match="expected 2"):
        load_edge_list(f, iteration=0)


def test_load_empty_graph_rejected(tmp_path):
    f = write(tmp_path / "g.edges", "# nothing here\n")
    with pytest.raises(EdgeListParseError, match="empty graph"):
        load_edge_list(f, iteration=0)


def test_node_order_is_insertion_order(tmp_path):
    f = write(tmp_path / "g.edges", "z\tm\nm\ta\n")
    snap = load_edge_list(f, iteration=0)
    assert snap.nodes == ("z", "m", "a")


# ---------------------------------------------------------------------------
# snapshot validation
# ---------------------------------------------------------------------------

def test_snapshot_rejects_self_loop():
    with pytest.raises(ValueError, match="self-loop"):
        GraphSnapshot(iteration=0, nodes=("a",), edges=frozenset({("a", "a")}))


def test_snapshot_rejects_unknown_endpoint():
    with pytest.raises(ValueError, match="missing"):
        GraphSnapshot(iteration=0, nodes=("a", "b"), edges=frozenset({("a", "c")}))


def test_snapshot_rejects_duplicate_nodes():
    with pytest.raises(ValueError, match="duplicate"):
        GraphSnapshot(iteration=0, nodes=("a", "a"), edges=frozenset())


def test_snapshot_rejects_negative_iteration():
    with pytest.raises(ValueError, match="non-negative"):
        GraphSnapshot(iteration=-1, nodes=("a",), edges=frozenset())


def test_label_index_bijection(k3):
    index = k3.index_of()
    assert sorted(index.values()) == [0, 1, 2]
    assert {k3.nodes[i]: i for i in range(3)} == index


# ---------------------------------------------------------------------------
# load_series
# ---------------------------------------------------------------------------

def test_series_sorted_by_parsed_iteration(tmp_path):
    write(tmp_path / "graph_0010.edges", "a\tb\n")
    write(tmp_path / "graph_0002.edges", "a\tb\n")
    series = load_series(tmp_path)
    assert series.iterations == [2, 10]


def test_series_empty_dir_errors(tmp_path):
    with pytest.raises(ValueError, match="no snapshots"):
        load_series(tmp_path)


def test_series_duplicate_iteration_errors(tmp_path):
    write(tmp_path / "graph_005.edges", "a\tb\n")
    write(tmp_path / "graph_0005.edges", "a\tb\n")
    with pytest.raises(ValueError, match="duplicate iteration 5"):
        load_series(tmp_path)


def test_series_warns_on_disappearing_node(tmp_path, caplog):
    write(tmp_path / "graph_0001.edges", "a\tb\n")
    write(tmp_path / "graph_0002.edges", "a\tc\n")
    with caplog.at_level(logging.WARNING):
        load_series(tmp_path)
    assert "disappeared" in caplog.text


def test_series_requires_strictly_increasing_iterations(k2, k3):
    with pytest.raises(ValueError, match="strictly increasing"):
        SnapshotSeries(snapshots=(k3, k2))  # both iteration 0


# ---------------------------------------------------------------------------
# adjacency / round trips
# ---------------------------------------------------------------------------

def test_adjacency_single_edge(k2):
    a, d = adjacency_and_degrees(k2)
    assert np.array_equal(a, [[0, 1], [1, 0]])
    assert np.array_equal(d, [1, 1])


def test_adjacency_triangle(k3):
    a, d = adjacency_and_degrees(k3)
    assert np.array_equal(a, np.ones((3, 3)) - np.eye(3))
    assert np.array_equal(d, [2, 2, 2])


def test_adjacency_path(path3):
    _, d = adjacency_and_degrees(path3)
    assert np.array_equal(d, [1, 2, 1])


def test_adjacency_symmetric_zero_diagonal_random():
    rng = np.random.default_rng(42)
    for _ in range(20):
        n = int(rng.integers(2, 9))
        labels = [f"v{i}" for i in range(n)]
        edges = {tuple(sorted((labels[i], labels[j])))
                 for i in range(n) for j in range(i + 1, n) if rng.random() < 0.4}
        snap = snapshot(labels, edges)
        a, d = adjacency_and_degrees(snap)
        assert np.array_equal(a, a.T)
        assert np.all(np.diagonal(a) == 0)
        assert np.array_equal(d, a.sum(axis=1))


def test_edge_list_round_trip(tmp_path, k3):
    out = tmp_path / "rt.edges"
    write_edge_list(k3, out)
    again = load_edge_list(out, iteration=k3.iteration)
    assert again.edges == k3.edges
