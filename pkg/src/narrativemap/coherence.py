"""Pairwise event coherence: text similarity, cluster similarity, time decay.

combined = ((1 - w_c) * text_sim + w_c * cluster_sim) * exp(-lambda_t * dt_days)

cluster_share isolates how much of the (pre-decay) score the clustering
component contributes; the connection labeller reads it directly.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .clustering import ClusterModel
from .corpus import Corpus
from .vectorize import CorpusVectors, cosine, l2_normalize

SECONDS_PER_DAY = 86400.0

# The user-facing temporal sensitivity slider in [0, 1] maps linearly onto
# a per-day decay rate in [0, MAX_DECAY_PER_DAY].
MAX_DECAY_PER_DAY = 0.2


@dataclass(frozen=True)
class CoherenceParams:
    w_c: float = 0.5          # weight of the cluster-similarity component
    lambda_t: float = 0.0     # exponential decay rate per day

    def __post_init__(self):
        if not 0.0 <= self.w_c <= 1.0:
            raise ValueError("w_c must lie in [0, 1]")
        if self.lambda_t < 0.0:
            raise ValueError("lambda_t must be >= 0")


def decay_rate(temporal_sensitivity: float) -> float:
    if not 0.0 <= temporal_sensitivity <= 1.0:
        raise ValueError("temporal_sensitivity must lie in [0, 1]")
    return MAX_DECAY_PER_DAY * temporal_sensitivity


@dataclass(frozen=True)
class CoherenceScore:
    text_sim: float
    cluster_sim: float
    temporal_factor: float
    combined: float
    cluster_share: float

    def to_jsonable(self) -> dict:
        return {
            "text_sim": self.text_sim,
            "cluster_sim": self.cluster_sim,
            "temporal_factor": self.temporal_factor,
            "combined": self.combined,
            "cluster_share": self.cluster_share,
        }


def score_from_parts(
    text_sim: float, cluster_sim: float, dt_days: float, params: CoherenceParams
) -> CoherenceScore:
    text_sim = max(0.0, text_sim)
    cluster_sim = max(0.0, cluster_sim)
    temporal = float(np.exp(-params.lambda_t * dt_days))
    base = (1.0 - params.w_c) * text_sim + params.w_c * cluster_sim
    share = (params.w_c * cluster_sim / base) if base > 0 else 0.0
    return CoherenceScore(
        text_sim=text_sim,
        cluster_sim=cluster_sim,
        temporal_factor=temporal,
        combined=base * temporal,
        cluster_share=share,
    )


def coherence(
    corpus: Corpus,
    vectors: CorpusVectors,
    model: ClusterModel,
    a_id: str,
    b_id: str,
    params: CoherenceParams | None = None,
) -> CoherenceScore:
    """Coherence of the ordered pair (a, b); a must not come after b."""
    if params is None:
        params = CoherenceParams()
    ia = corpus.position(a_id)
    ib = corpus.position(b_id)
    a, b = corpus[ia], corpus[ib]
    if a.timestamp > b.timestamp:
        raise ValueError(f"negative time gap: {a_id} is later than {b_id}")
    dt_days = (b.timestamp - a.timestamp).total_seconds() / SECONDS_PER_DAY
    text_sim = cosine(vectors.vectors[ia], vectors.vectors[ib])
    cluster_sim = cosine(model.membership[ia], model.membership[ib])
    return score_from_parts(text_sim, cluster_sim, dt_days, params)


def coherence_components(
    vectors: CorpusVectors, model: ClusterModel, timestamps: np.ndarray, params: CoherenceParams
) -> dict[str, np.ndarray]:
    """All-pairs coherence pieces as dense symmetric matrices.

    timestamps are UNIX seconds; the temporal factor uses |dt|, so the
    matrices are symmetric and the caller applies temporal direction.
    """
    unit_docs = l2_normalize(vectors.vectors)
    text = np.clip(unit_docs @ unit_docs.T, 0.0, None)
    unit_mem = l2_normalize(model.membership)
    cluster = np.clip(unit_mem @ unit_mem.T, 0.0, None)
    dt_days = np.abs(timestamps[:, None] - timestamps[None, :]) / SECONDS_PER_DAY
    temporal = np.exp(-params.lambda_t * dt_days)
    base = (1.0 - params.w_c) * text + params.w_c * cluster
    combined = base * temporal
    with np.errstate(invalid="ignore", divide="ignore"):
        share = np.where(base > 0, params.w_c * cluster / np.where(base > 0, base, 1.0), 0.0)
    return {
        "text": text,
        "cluster": cluster,
        "temporal": temporal,
        "combined": combined,
        "share": share,
    }
