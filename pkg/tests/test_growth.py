import numpy as np
import pytest

from graphcrit import (GrowthConfig, classify_edges, grow, generate_series,
                       load_embeddings, load_series, write_corpus)


def small_cfg(**overrides):
    base = dict(seed=1, n_iterations=25, nodes_per_iter=1, edges_per_new_node=2,
                pref_weight=1.0, sem_weight=1.0, surprise_prob=0.1, n_centroids=4,
                embed_dim=16, embed_noise=0.1)
    base.update(overrides)
    return GrowthConfig(**base)


def test_config_validation():
    with pytest.raises(ValueError):
        small_cfg(n_iterations=0)
    with pytest.raises(ValueError):
        small_cfg(pref_weight=0.0, sem_weight=0.0)
    with pytest.raises(ValueError):
        small_cfg(surprise_prob=1.5)
    with pytest.raises(ValueError):
        small_cfg(embed_dim=1)


def test_same_seed_same_corpus():
    a = grow(small_cfg())
    b = grow(small_cfg())
    assert a.series.final.edges == b.series.final.edges
    assert a.series.final.nodes == b.series.final.nodes
    for lab in a.series.final.nodes:
        assert np.array_equal(a.embeddings.get(lab), b.embeddings.get(lab))


def test_different_seeds_differ():
    a = grow(small_cfg(seed=1))
    b = grow(small_cfg(seed=2))
    assert a.series.final.edges != b.series.final.edges


def test_growth_is_monotone_superset():
    run = grow(small_cfg(n_iterations=40))
    prev = None
    for snap in run.series:
        if prev is not None:
            assert prev.edges <= snap.edges
            assert set(prev.nodes) <= set(snap.nodes)
        prev = snap


def test_node_count_grows_exactly():
    run = grow(small_cfg(n_iterations=30, nodes_per_iter=3))
    counts = [snap.n_nodes for snap in run.series]
    assert counts[0] == 4 + 3  # seed clique + first batch
    assert all(b - a == 3 for a, b in zip(counts, counts[1:]))


def test_single_centroid_q0_has_no_surprising_edges():
    cfg = small_cfg(surprise_prob=0.0, n_centroids=1, embed_noise=0.02,
                    n_iterations=40)
    run = grow(cfg)
    _, stats = classify_edges(run.series.final, run.embeddings, 0.1)
    assert stats.n_surprising == 0
    assert run.surprise_links == 0


def test_steady_state_alpha_tracks_surprise_prob():
    cfg = GrowthConfig(seed=7, n_iterations=500, nodes_per_iter=1,
                       edges_per_new_node=3, pref_weight=1.0, sem_weight=1.0,
                       surprise_prob=0.12, n_centroids=8, embed_dim=64,
                       embed_noise=0.15)
    run = grow(cfg)
    alphas = []
    for snap in run.series.snapshots[-100:]:
        _, stats = classify_edges(snap, run.embeddings, 0.1)
        alphas.append(stats.alpha)
    assert 0.09 <= float(np.mean(alphas)) <= 0.15


def test_preferential_only_growth_develops_hubs():
    cfg = small_cfg(pref_weight=1.0, sem_weight=0.0, surprise_prob=0.0,
                    n_centroids=1, embed_noise=0.05, n_iterations=400,
                    edges_per_new_node=2)
    run = grow(cfg)
    degrees_over_time = []
    for snap in run.series.snapshots[49::50]:
        adj = snap.neighbors()
        degs = sorted(len(adj[u]) for u in snap.nodes)
        degrees_over_time.append((max(degs), degs[len(degs) // 2]))
    # hub degree pulls away from the median as the graph grows
    ratios = [mx / md for mx, md in degrees_over_time]
    assert ratios[-1] > ratios[0]
    assert ratios[-1] >= 8.0


def test_surprise_fallback_counted_when_geometry_blocks():
    # single tight centroid: no semantically distant target ever exists
    cfg = small_cfg(surprise_prob=1.0, n_centroids=1, embed_noise=0.02,
                    n_iterations=20)
    run = grow(cfg)
    assert run.surprise_links == 0
    assert run.surprise_fallbacks > 0
    assert run.series.final.n_edges > 6  # edges still attached via fallback


def test_generate_series_wrapper():
    series, table = generate_series(small_cfg())
    assert len(series) == 25
    assert all(lab in table for lab in series.final.nodes)


def test_write_corpus_round_trip(tmp_path):
    run = grow(small_cfg(n_iterations=12))
    written = write_corpus(run, tmp_path)
    assert (tmp_path / "graph_0001.edges").exists()
    assert (tmp_path / "graph_0012.edges").exists()
    assert (tmp_path / "embeddings.tsv").exists()
    assert len(written) == 13

    series = load_series(tmp_path)
    assert series.iterations == list(range(1, 13))
    assert series.final.edges == run.series.final.edges
    table = load_embeddings(tmp_path / "embeddings.tsv")
    for lab in run.series.final.nodes:
        assert np.allclose(table.get(lab), run.embeddings.get(lab))
