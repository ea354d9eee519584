"""Soft document clustering and per-cluster keyword explanations.

Hard labels come from the density pipeline (condensed-tree cluster
selection); soft memberships are a softmax over negative cosine distance
to each cluster medoid, so the probability rows are smooth in temperature
while the hard partition is not.

Keyword scores combine cluster term frequency with a global and a local
(cross-cluster) inverse document frequency:

    score(t, c) = TF(t, c) * ln(N / df(t)) * ln(|C| / cf(t))

where TF is the share of the cluster's non-stopword tokens that are t,
df counts corpus documents containing t, and cf counts non-noise clusters
containing t.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .corpus import Corpus, explanation_text
from .density import NOISE, density_cluster_labels
from .text import content_tokens
from .vectorize import l2_normalize


@dataclass(frozen=True)
class ClusteringParams:
    min_cluster_size: int = 5
    min_samples: int = 3
    softmax_temperature: float = 0.2

    def __post_init__(self):
        if self.min_cluster_size < 2:
            raise ValueError("min_cluster_size must be >= 2")
        if self.min_samples < 1:
            raise ValueError("min_samples must be >= 1")
        if self.softmax_temperature <= 0:
            raise ValueError("softmax_temperature must be > 0")


@dataclass(frozen=True)
class ClusterKeyword:
    term: str
    score: float
    tf: float
    idf_global: float
    idf_local: float


@dataclass
class ClusterModel:
    """Soft cluster memberships plus the hard density partition."""

    doc_ids: list[str]
    cluster_ids: list[int]
    hard_labels: np.ndarray          # (N,), NOISE for unclustered documents
    membership: np.ndarray           # (N, k), rows sum to 1
    medoid_ids: list[str]            # per-cluster medoid document id
    params: ClusteringParams = field(default_factory=ClusteringParams)

    @property
    def n_clusters(self) -> int:
        return len(self.cluster_ids)

    def size(self, cluster: int) -> int:
        return int(np.sum(self.hard_labels == cluster))

    def members(self, cluster: int) -> list[int]:
        return [i for i, c in enumerate(self.hard_labels) if c == cluster]

    def hard_label_of(self, doc_index: int) -> int:
        return int(self.hard_labels[doc_index])


def cosine_distance_matrix(vectors: np.ndarray) -> np.ndarray:
    unit = l2_normalize(vectors)
    dist = 1.0 - unit @ unit.T
    np.fill_diagonal(dist, 0.0)
    return np.clip(dist, 0.0, 2.0)


def cluster_documents(
    doc_ids: list[str], vectors: np.ndarray, params: ClusteringParams | None = None
) -> ClusterModel:
    """Density clustering with medoid-softmax soft memberships.

    Noise documents keep a full membership row (the softmax does not know
    about noise) but their hard label stays NOISE. Deterministic: ties
    everywhere resolve toward the lower document index.
    """
    if params is None:
        params = ClusteringParams()
    n = len(doc_ids)
    if n < params.min_cluster_size:
        raise ValueError(
            f"corpus of {n} documents is smaller than min_cluster_size="
            f"{params.min_cluster_size}"
        )
    dist = cosine_distance_matrix(vectors)
    labels = density_cluster_labels(dist, params.min_cluster_size, params.min_samples)
    cluster_ids = sorted({int(c) for c in labels if c != NOISE})

    medoid_indices = []
    for c in cluster_ids:
        members = np.flatnonzero(labels == c)
        within = dist[np.ix_(members, members)].sum(axis=1)
        medoid_indices.append(int(members[int(np.argmin(within))]))

    # softmax over -distance/temperature to each medoid
    d_to_medoids = dist[:, medoid_indices]
    logits = -d_to_medoids / params.softmax_temperature
    logits -= logits.max(axis=1, keepdims=True)
    expl = np.exp(logits)
    membership = expl / expl.sum(axis=1, keepdims=True)

    return ClusterModel(
        doc_ids=list(doc_ids),
        cluster_ids=cluster_ids,
        hard_labels=labels,
        membership=membership,
        medoid_ids=[doc_ids[i] for i in medoid_indices],
        params=params,
    )


def cluster_keywords(corpus: Corpus, model: ClusterModel, cluster: int) -> list[ClusterKeyword]:
    """Ranked keyword explanations for one non-noise cluster.

    Ranked by descending score, ties broken lexicographically. Terms
    present in every corpus document or in every cluster score exactly 0.
    """
    if cluster not in model.cluster_ids:
        raise ValueError(f"unknown or noise cluster id {cluster}")
    n_docs = len(corpus)
    doc_terms = [content_tokens(explanation_text(d)) for d in corpus]

    df: Counter = Counter()
    for terms in doc_terms:
        df.update(set(terms))

    cluster_terms: dict[int, set[str]] = {c: set() for c in model.cluster_ids}
    for i, terms in enumerate(doc_terms):
        label = int(model.hard_labels[i])
        if label != NOISE:
            cluster_terms[label].update(terms)
    cf: Counter = Counter()
    for terms in cluster_terms.values():
        cf.update(terms)
    n_clusters = len(model.cluster_ids)

    counts: Counter = Counter()
    for i in model.members(cluster):
        counts.update(doc_terms[i])
    total = sum(counts.values())
    if total == 0:
        return []

    keywords = []
    for term, count in counts.items():
        tf = count / total
        idf_global = math.log(n_docs / df[term])
        idf_local = math.log(n_clusters / cf[term])
        keywords.append(
            ClusterKeyword(
                term=term,
                score=tf * idf_global * idf_local,
                tf=tf,
                idf_global=idf_global,
                idf_local=idf_local,
            )
        )
    keywords.sort(key=lambda k: (-k.score, k.term))
    return keywords


def select_top_k(keywords: list[ClusterKeyword], cluster_size: int) -> list[ClusterKeyword]:
    """Dynamic top-k prefix: every keyword scoring within 30% of the best,
    floored at 3 and capped at 3 + floor(ln(cluster_size))."""
    if not keywords:
        return []
    threshold = 0.3 * keywords[0].score
    strong = sum(1 for k in keywords if k.score >= threshold)
    cap = 3 + int(math.floor(math.log(cluster_size))) if cluster_size >= 1 else 3
    k = max(3, min(strong, cap))
    return keywords[: min(k, len(keywords))]


def project_2d(
    vectors: np.ndarray, provided_xy: list[tuple[float, float] | None] | None = None
) -> np.ndarray:
    """2D coordinates per document: caller-provided pass-through or PCA.

    provided_xy is all-or-nothing; PCA uses a deterministic sign convention
    (the largest-magnitude loading of each component is positive).
    """
    n = vectors.shape[0]
    if n < 2:
        raise ValueError("projection needs at least 2 documents")
    if provided_xy is not None:
        have = [xy for xy in provided_xy if xy is not None]
        if have:
            if len(have) != n:
                raise ValueError(
                    f"{len(have)} of {n} documents carry xy coordinates; "
                    "coordinates must cover the whole corpus or none of it"
                )
            return np.asarray(have, dtype=float)
    centered = vectors - vectors.mean(axis=0, keepdims=True)
    _, _, vt = np.linalg.svd(centered, full_matrices=False)
    comps = np.zeros((2, vectors.shape[1]))
    available = min(2, vt.shape[0])
    comps[:available] = vt[:available]
    for row in range(available):
        pivot = int(np.argmax(np.abs(comps[row])))
        if comps[row, pivot] < 0:
            comps[row] = -comps[row]
    return centered @ comps.T
