import numpy as np
import pytest

from graphcrit import (cosine, fallback_embed, fallback_table, load_embeddings,
                       pca_2d, save_embeddings)

from conftest import table_from
from oracles import covariance_eigp_oracle


def write(path, text):
    path.write_text(text, encoding="utf-8")
    return path


# ---------------------------------------------------------------------------
# file format
# ---------------------------------------------------------------------------

def test_load_two_rows(tmp_path):
    f = write(tmp_path / "e.tsv", "#dim 3\na\t1,0,0\nb\t0,1,0\n")
    table = load_embeddings(f)
    assert table.dim == 3
    assert len(table) == 2
    assert np.array_equal(table.get("a"), [1, 0, 0])


def test_load_wrong_width_names_label(tmp_path):
    f = write(tmp_path / "e.tsv", "#dim 3\na\t1,0\n")
    with pytest.raises(ValueError, match="'a'"):
        load_embeddings(f)


def test_load_empty_file(tmp_path):
    f = write(tmp_path / "e.tsv", "")
    with pytest.raises(ValueError, match="empty"):
        load_embeddings(f)


def test_load_duplicate_label(tmp_path):
    f = write(tmp_path / "e.tsv", "#dim 2\na\t1,0\na\t0,1\n")
    with pytest.raises(ValueError, match="duplicate"):
        load_embeddings(f)


def test_load_requires_dim_header(tmp_path):
    f = write(tmp_path / "e.tsv", "a\t1,0\n")
    with pytest.raises(ValueError, match="#dim"):
        load_embeddings(f)


def test_save_load_round_trip_exact(tmp_path):
    table = fallback_table(["x", "y", "zq"], dim=16, seed=3)
    path = tmp_path / "rt.tsv"
    save_embeddings(table, path)
    again = load_embeddings(path)
    assert again.dim == 16
    for label in table.vectors:
        assert np.array_equal(again.get(label), table.get(label))


# ---------------------------------------------------------------------------
# fallback embeddings
# ---------------------------------------------------------------------------

def test_fallback_deterministic():
    assert np.array_equal(fallback_embed("a", 8, 1), fallback_embed("a", 8, 1))


def test_fallback_label_and_seed_sensitivity():
    a = fallback_embed("a", 8, 1)
    assert not np.array_equal(a, fallback_embed("b", 8, 1))
    assert not np.array_equal(a, fallback_embed("a", 8, 2))


def test_fallback_unit_norm():
    assert abs(np.linalg.norm(fallback_embed("a", 8, 1)) - 1.0) < 1e-9


def test_fallback_dim_guard():
    with pytest.raises(ValueError):
        fallback_embed("a", 1, 0)


def test_fallback_near_orthogonality_at_scale():
    # random unit vectors in dim 384 are near-orthogonal on average
    table = fallback_table([f"lbl{i}" for i in range(1000)], dim=384, seed=0)
    x = np.stack([table.get(f"lbl{i}") for i in range(1000)])
    gram = x @ x.T
    mean_off = (gram.sum() - np.trace(gram)) / (1000 * 999)
    assert abs(mean_off) < 0.05


# ---------------------------------------------------------------------------
# cosine
# ---------------------------------------------------------------------------

def test_cosine_identities():
    v = np.array([1.0, 2.0, -3.0])
    e1 = np.array([1.0, 0.0])
    e2 = np.array([0.0, 1.0])
    assert cosine(v, v) == 1.0
    assert cosine(e1, e2) == 0.0
    assert cosine(v, -v) == -1.0


def test_cosine_zero_norm_rejected():
    with pytest.raises(ValueError, match="zero-norm"):
        cosine(np.zeros(3), np.ones(3))


def test_cosine_scale_invariance_and_symmetry():
    rng = np.random.default_rng(7)
    for _ in range(50):
        u = rng.standard_normal(6)
        v = rng.standard_normal(6)
        a, b = rng.uniform(0.1, 10, size=2)
        assert cosine(a * u, b * v) == pytest.approx(cosine(u, v), abs=1e-12)
        assert cosine(u, v) == pytest.approx(cosine(v, u), abs=1e-15)


# ---------------------------------------------------------------------------
# PCA
# ---------------------------------------------------------------------------

def test_pca_collinear_points():
    table = table_from({"a": [1, 2, 0], "b": [2, 4, 0], "c": [3, 6, 0], "d": [4, 8, 0]})
    proj = pca_2d(table, ["a", "b", "c", "d"])
    assert proj.explained_variance[0] == pytest.approx(1.0, abs=1e-12)
    assert proj.explained_variance[1] == pytest.approx(0.0, abs=1e-12)


def test_pca_square_corners_splits_variance_evenly():
    # 4 corners of a square living in a 2-D subspace of dim-10 space
    rng = np.random.default_rng(0)
    basis, _ = np.linalg.qr(rng.standard_normal((10, 2)))
    corners = np.array([[1, 1], [1, -1], [-1, 1], [-1, -1]], dtype=float)
    pts = corners @ basis.T
    labels = ["p0", "p1", "p2", "p3"]
    table = table_from(dict(zip(labels, pts)))
    proj = pca_2d(table, labels)
    oracle = covariance_eigp_oracle(pts)
    total = sum(e for e in oracle if e > 1e-12)
    assert proj.explained_variance[0] == pytest.approx(oracle[0] / total, abs=1e-9)
    assert proj.explained_variance == pytest.approx((0.5, 0.5), abs=1e-9)


def test_pca_projected_coords_have_zero_mean():
    table = fallback_table([f"n{i}" for i in range(12)], dim=6, seed=5)
    proj = pca_2d(table, [f"n{i}" for i in range(12)])
    coords = np.array(list(proj.coordinates.values()))
    assert np.abs(coords.mean(axis=0)).max() < 1e-9


def test_pca_explained_variance_non_increasing():
    table = fallback_table([f"n{i}" for i in range(9)], dim=5, seed=2)
    proj = pca_2d(table, [f"n{i}" for i in range(9)])
    assert proj.explained_variance[0] >= proj.explained_variance[1]


def test_pca_requires_three_points():
    table = table_from({"a": [1, 0], "b": [0, 1]})
    with pytest.raises(ValueError, match="3 points"):
        pca_2d(table, ["a", "b"])


def test_pca_order_invariance_up_to_fixed_signs():
    labels = [f"n{i}" for i in range(8)]
    table = fallback_table(labels, dim=4, seed=9)
    fwd = pca_2d(table, labels)
    rev = pca_2d(table, labels[::-1])
    for lab in labels:
        assert fwd.coordinates[lab] == pytest.approx(rev.coordinates[lab], abs=1e-9)


def test_pca_missing_label_errors():
    table = table_from({"a": [1, 0], "b": [0, 1], "c": [1, 1]})
    with pytest.raises(KeyError, match="missing"):
        pca_2d(table, ["a", "b", "zz"])
