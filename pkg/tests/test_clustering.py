import math

import numpy as np
import pytest
from scipy.spatial.distance import cdist

from narrativemap.clustering import (
    ClusteringParams,
    ClusterKeyword,
    ClusterModel,
    cluster_documents,
    cluster_keywords,
    cosine_distance_matrix,
    project_2d,
    select_top_k,
)
from narrativemap.density import NOISE, density_cluster_labels

from conftest import corpus_from_dicts, doc
from oracles import eq1_score, sweep_density_clustering


def unit_blobs(rng, directions, per_blob, spread):
    """Unit vectors scattered around given directions (cosine-space blobs)."""
    rows, truth = [], []
    for b, d in enumerate(directions):
        d = np.asarray(d, dtype=float)
        d /= np.linalg.norm(d)
        for _ in range(per_blob):
            v = d + rng.normal(0, spread, size=len(d))
            rows.append(v / np.linalg.norm(v))
            truth.append(b)
    return np.array(rows), truth


def partition_sets(labels, ids=None):
    ids = ids if ids is not None else list(range(len(labels)))
    groups = {}
    for i, l in zip(ids, labels):
        if l != NOISE:
            groups.setdefault(l, set()).add(i)
    return sorted((frozenset(g) for g in groups.values()), key=sorted)


# ------------------------------------------------------- density pipeline
def test_two_blobs_found_and_match_nearest_medoid():
    rng = np.random.default_rng(0)
    vectors, truth = unit_blobs(rng, [[1, 0, 0], [0, 1, 0]], per_blob=10, spread=0.05)
    ids = [f"d{i}" for i in range(20)]
    model = cluster_documents(ids, vectors, ClusteringParams(5, 3, 0.2))
    assert model.cluster_ids == [0, 1]
    assert partition_sets(model.hard_labels) == partition_sets(truth)
    # brute-force nearest-medoid assignment agrees on this geometry
    dist = cosine_distance_matrix(vectors)
    medoid_idx = [ids.index(m) for m in model.medoid_ids]
    nearest = np.argmin(dist[:, medoid_idx], axis=1)
    assert np.array_equal(nearest, model.hard_labels)


def test_single_far_outlier_is_noise():
    rng = np.random.default_rng(1)
    vectors, _ = unit_blobs(rng, [[1, 0, 0], [0, 1, 0]], per_blob=10, spread=0.03)
    outlier = np.array([[-0.57735, -0.57735, 0.57735]])  # ~10x any blob radius away
    vectors = np.vstack([vectors, outlier])
    ids = [f"d{i}" for i in range(21)]
    model = cluster_documents(ids, vectors, ClusteringParams(5, 3, 0.2))
    assert model.hard_labels[20] == NOISE
    assert model.cluster_ids == [0, 1]
    # noise still carries a full membership row
    assert model.membership[20].sum() == pytest.approx(1.0, abs=1e-9)


def test_identical_documents_single_full_cluster():
    vectors = np.tile([0.6, 0.8], (8, 1))
    model = cluster_documents([f"d{i}" for i in range(8)], vectors, ClusteringParams(3, 2, 0.2))
    assert model.cluster_ids == [0]
    assert all(l == 0 for l in model.hard_labels)
    assert np.allclose(model.membership, 1.0)


def test_density_labels_match_sweep_oracle_on_random_data():
    rng = np.random.default_rng(3)
    for _ in range(10):
        centers = rng.uniform(-8, 8, size=(int(rng.integers(2, 4)), 2))
        pts = [c + rng.normal(0, 0.3, size=(int(rng.integers(7, 13)), 2)) for c in centers]
        pts.append(rng.uniform(-25, 25, size=(2, 2)))
        X = np.vstack(pts)
        D = cdist(X, X)
        mine = density_cluster_labels(D, 5, 3)
        oracle = sweep_density_clustering(D, 5, 3)
        assert partition_sets(mine) == partition_sets(oracle)
        assert {i for i, l in enumerate(mine) if l == NOISE} == {
            i for i, l in enumerate(oracle) if l == NOISE
        }


def test_density_labels_match_reference_library():
    sklearn_cluster = pytest.importorskip("sklearn.cluster")
    rng = np.random.default_rng(11)
    for _ in range(5):
        centers = rng.uniform(-10, 10, size=(3, 3))
        pts = [c + rng.normal(0, 0.25, size=(10, 3)) for c in centers]
        pts.append(rng.uniform(-40, 40, size=(2, 3)))
        X = np.vstack(pts)
        D = cdist(X, X)
        mine = density_cluster_labels(D, 5, 3)
        ref = sklearn_cluster.HDBSCAN(
            min_cluster_size=5, min_samples=3, metric="precomputed"
        ).fit_predict(D.copy())
        assert partition_sets(mine) == partition_sets(ref)


def test_order_invariance_up_to_relabeling():
    rng = np.random.default_rng(5)
    vectors, _ = unit_blobs(rng, [[1, 0, 0], [0, 1, 0], [0, 0, 1]], per_blob=7, spread=0.05)
    ids = [f"d{i}" for i in range(21)]
    model_a = cluster_documents(ids, vectors, ClusteringParams(5, 3, 0.2))
    perm = rng.permutation(21)
    model_b = cluster_documents(
        [ids[i] for i in perm], vectors[perm], ClusteringParams(5, 3, 0.2)
    )
    sets_a = partition_sets(model_a.hard_labels, ids)
    sets_b = partition_sets(model_b.hard_labels, [ids[i] for i in perm])
    assert sets_a == sets_b


def test_temperature_changes_membership_not_hard_labels():
    rng = np.random.default_rng(6)
    vectors, _ = unit_blobs(rng, [[1, 0, 0], [0, 1, 0]], per_blob=8, spread=0.08)
    ids = [f"d{i}" for i in range(16)]
    cold = cluster_documents(ids, vectors, ClusteringParams(5, 3, 0.05))
    warm = cluster_documents(ids, vectors, ClusteringParams(5, 3, 1.0))
    assert np.array_equal(cold.hard_labels, warm.hard_labels)
    assert not np.allclose(cold.membership, warm.membership)


def test_membership_rows_sum_to_one():
    rng = np.random.default_rng(8)
    vectors, _ = unit_blobs(rng, [[1, 0, 0], [0, 1, 0]], per_blob=9, spread=0.1)
    model = cluster_documents([f"d{i}" for i in range(18)], vectors, ClusteringParams(5, 3, 0.2))
    assert np.allclose(model.membership.sum(axis=1), 1.0, atol=1e-6)
    assert (model.membership >= 0).all()


def test_too_few_documents_rejected():
    with pytest.raises(ValueError, match="min_cluster_size"):
        cluster_documents(["a", "b"], np.eye(2), ClusteringParams(5, 3, 0.2))


# ------------------------------------------------------------ Eq.1 keywords
EQ1_DOCS = [
    doc("d0", 1, "belmar port strike crane"),
    doc("d1", 2, "belmar port strike docks"),
    doc("d2", 3, "belmar port wages"),
    doc("d3", 4, "belmar storm flood rain"),
    doc("d4", 5, "belmar storm flood wind"),
    doc("d5", 6, "belmar storm port"),
]


def hand_model(corpus):
    labels = np.array([0, 0, 0, 1, 1, 1])
    membership = np.eye(2)[labels]
    return ClusterModel(
        doc_ids=corpus.ids,
        cluster_ids=[0, 1],
        hard_labels=labels,
        membership=membership,
        medoid_ids=["d0", "d3"],
    )


def test_eq1_scores_match_hand_computed_table():
    # Frozen oracle table: tf * ln(N/df) * ln(|C|/cf) computed by hand on
    # the 6-document, 2-cluster fixture (11 tokens per cluster).
    corpus = corpus_from_dicts(EQ1_DOCS)
    model = hand_model(corpus)
    kw0 = {k.term: k for k in cluster_keywords(corpus, model, 0)}
    kw1 = {k.term: k for k in cluster_keywords(corpus, model, 1)}

    assert kw0["strike"].score == pytest.approx(0.13845454734887438, abs=1e-9)
    assert kw0["crane"].score == pytest.approx(0.11290482039427367, abs=1e-9)
    assert kw0["docks"].score == pytest.approx(0.11290482039427367, abs=1e-9)
    assert kw0["wages"].score == pytest.approx(0.11290482039427367, abs=1e-9)
    assert kw1["storm"].score == pytest.approx(0.13103264015950947, abs=1e-9)
    assert kw1["flood"].score == pytest.approx(0.13845454734887438, abs=1e-9)

    # terms in every cluster score exactly 0; terms in every document too
    assert kw0["port"].score == 0.0
    assert kw1["port"].score == 0.0
    assert kw0["belmar"].score == 0.0
    assert kw1["belmar"].score == 0.0

    # stored factors recompose bit-exactly and match the oracle formula
    for kws in (kw0, kw1):
        for k in kws.values():
            assert k.score == k.tf * k.idf_global * k.idf_local
    assert kw0["strike"].tf == pytest.approx(2 / 11)
    assert kw0["strike"].idf_global == pytest.approx(math.log(3))
    assert kw0["strike"].idf_local == pytest.approx(math.log(2))
    assert kw1["storm"].score == pytest.approx(
        eq1_score(3, 11, 6, 3, 2, 1), abs=1e-12
    )


def test_eq1_ranking_descending_ties_lexicographic():
    corpus = corpus_from_dicts(EQ1_DOCS)
    ranked = cluster_keywords(corpus, hand_model(corpus), 0)
    scores = [k.score for k in ranked]
    assert scores == sorted(scores, reverse=True)
    tied = [k.term for k in ranked if k.score == pytest.approx(0.11290482039427367)]
    assert tied == sorted(tied)


def test_unknown_and_noise_cluster_rejected():
    corpus = corpus_from_dicts(EQ1_DOCS)
    model = hand_model(corpus)
    with pytest.raises(ValueError):
        cluster_keywords(corpus, model, 7)
    with pytest.raises(ValueError):
        cluster_keywords(corpus, model, NOISE)


# --------------------------------------------------------------- select_top_k
def kw(term, score):
    return ClusterKeyword(term=term, score=score, tf=0.0, idf_global=0.0, idf_local=0.0)


def test_top_k_rule_from_examples():
    keywords = [kw(t, s) for t, s in zip("abcde", [10.0, 9.0, 8.0, 1.0, 1.0])]
    assert [k.term for k in select_top_k(keywords, 20)] == ["a", "b", "c"]


def test_top_k_all_equal_scores():
    keywords = [kw(f"t{i}", 2.0) for i in range(10)]
    assert len(select_top_k(keywords, 3)) == 4  # 3 + floor(ln 3) = 4


def test_top_k_empty():
    assert select_top_k([], 10) == []


def test_top_k_length_bounds_property():
    rng = np.random.default_rng(9)
    for _ in range(50):
        n = int(rng.integers(1, 15))
        scores = sorted(rng.uniform(0, 5, size=n), reverse=True)
        keywords = [kw(f"t{i}", float(s)) for i, s in enumerate(scores)]
        size = int(rng.integers(2, 400))
        out = select_top_k(keywords, size)
        lo = min(3, n)
        hi = min(3 + int(math.floor(math.log(size))), n)
        assert lo <= len(out) <= hi


# ----------------------------------------------------------------- projection
def test_projection_pass_through():
    rng = np.random.default_rng(10)
    vectors = rng.normal(size=(5, 4))
    xy = [(float(i), float(-i)) for i in range(5)]
    out = project_2d(vectors, list(xy))
    assert np.array_equal(out, np.array(xy))


def test_projection_partial_xy_rejected():
    vectors = np.eye(3)
    with pytest.raises(ValueError, match="coordinates"):
        project_2d(vectors, [(0.0, 0.0), None, (1.0, 1.0)])


def test_projection_of_2d_centered_data_preserves_distances():
    rng = np.random.default_rng(12)
    vectors = rng.normal(size=(20, 2))
    vectors -= vectors.mean(axis=0)
    out = project_2d(vectors)
    d_in = cdist(vectors, vectors)
    d_out = cdist(out, out)
    assert np.allclose(d_in, d_out, atol=1e-9)


def test_projection_rank_one_collapses_second_axis():
    direction = np.array([1.0, 2.0, -1.0])
    scales = np.linspace(-2, 2, 9)[:, None]
    vectors = scales * direction
    out = project_2d(vectors)
    assert np.allclose(out[:, 1], 0.0, atol=1e-9)


def test_projection_is_deterministic():
    rng = np.random.default_rng(13)
    vectors = rng.normal(size=(15, 6))
    assert np.array_equal(project_2d(vectors), project_2d(vectors))
