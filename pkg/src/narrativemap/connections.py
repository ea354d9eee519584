"""Edge-level explanations: labels, entity overlaps, token attributions.

A connection is labelled "Topical" when the clustering component
contributes strictly more than half of the (pre-decay) coherence score and
"Similarity" otherwise; an entity flag is raised when some entity pair's
token Jaccard overlap reaches 0.5. Signed per-token attributions come from
Shapley values of the token-vs-target cosine game, run in both directions.
The same machinery explains why a candidate pair stayed unconnected.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .clustering import ClusterModel, cluster_keywords, select_top_k
from .coherence import CoherenceScore
from .corpus import Corpus, Document, EntitySpan, explanation_text, extract_entities
from .density import NOISE
from .extraction import CandidateGraph, NarrativeMap
from .shapley import exact_shapley, sampled_shapley
from .text import tokenize
from .vectorize import CorpusVectors

ENTITY_FLAG_THRESHOLD = 0.5
TOP_NEGATIVE_COUNT = 5


@dataclass(frozen=True)
class ConnectionLabel:
    primary: str  # "Topical" | "Similarity"
    entity_flag: bool


@dataclass(frozen=True)
class EntityOverlap:
    entity_a: EntitySpan
    entity_b: EntitySpan
    overlap: float


@dataclass(frozen=True)
class TokenAttribution:
    token: str
    phi: float
    side: str  # "source" | "target"


@dataclass(frozen=True)
class AttributionConfig:
    permutations: int = 200
    seed: int = 0
    exact_max_tokens: int = 12


@dataclass
class TopicSummary:
    side: str
    doc_id: str
    cluster: int  # NOISE for unclustered documents
    keywords: list  # ClusterKeyword

    def to_jsonable(self) -> dict:
        return {
            "side": self.side,
            "doc": self.doc_id,
            "cluster": self.cluster,
            "keywords": [{"term": k.term, "score": k.score} for k in self.keywords],
        }


@dataclass
class NonConnection:
    below_threshold: bool
    margin: float
    top_negative: list[TokenAttribution]

    def to_jsonable(self) -> dict:
        return {
            "below_threshold": self.below_threshold,
            "margin": self.margin,
            "top_negative": [
                {"token": a.token, "phi": a.phi, "side": a.side} for a in self.top_negative
            ],
        }


@dataclass
class ConnectionExplanation:
    label: ConnectionLabel
    topics: list[TopicSummary]
    shared_entities: list[EntityOverlap]
    attributions: list[TokenAttribution]
    coherence: CoherenceScore
    non_connection: NonConnection | None = None

    def to_jsonable(self) -> dict:
        out = {
            "label": {"primary": self.label.primary, "entity": self.label.entity_flag},
            "topics": [t.to_jsonable() for t in self.topics],
            "entities": [
                {
                    "a": o.entity_a.surface,
                    "b": o.entity_b.surface,
                    "overlap": o.overlap,
                }
                for o in self.shared_entities
            ],
            "attributions": [
                {"token": a.token, "phi": a.phi, "side": a.side} for a in self.attributions
            ],
            "coherence": self.coherence.to_jsonable(),
        }
        if self.non_connection is not None:
            out["non_connection"] = self.non_connection.to_jsonable()
        return out


def token_jaccard(a: tuple[str, ...], b: tuple[str, ...]) -> float:
    sa, sb = set(a), set(b)
    union = sa | sb
    if not union:
        return 0.0
    return len(sa & sb) / len(union)


def entity_overlaps(a: Document, b: Document) -> list[EntityOverlap]:
    """All cross pairs scored by token Jaccard, best first."""
    out = [
        EntityOverlap(ea, eb, token_jaccard(ea.tokens, eb.tokens))
        for ea in extract_entities(a)
        for eb in extract_entities(b)
    ]
    out.sort(key=lambda o: (-o.overlap, o.entity_a.surface.lower(), o.entity_b.surface.lower()))
    return out


def label_connection(coh: CoherenceScore, a: Document, b: Document) -> ConnectionLabel:
    """Topical iff cluster_share strictly exceeds 0.5; exactly half is
    Similarity. Entity flag per the 0.5 overlap cut-off."""
    primary = "Topical" if coh.cluster_share > 0.5 else "Similarity"
    entity = any(o.overlap >= ENTITY_FLAG_THRESHOLD for o in entity_overlaps(a, b))
    return ConnectionLabel(primary=primary, entity_flag=entity)


def keyword_attributions(
    corpus: Corpus,
    vectors: CorpusVectors,
    source_id: str,
    target_id: str,
    cfg: AttributionConfig | None = None,
    side: str = "source",
) -> list[TokenAttribution]:
    """Signed Shapley attribution of the source's tokens against the
    target's term vector, ordered by |phi| descending.

    Exact enumeration up to cfg.exact_max_tokens players, seeded
    permutation sampling beyond. Raises ValueError when the source has no
    non-stopword tokens.
    """
    if cfg is None:
        cfg = AttributionConfig()
    src_idx = corpus.position(source_id)
    tgt_idx = corpus.position(target_id)
    source = corpus[src_idx]

    players: list[str] = []
    seen: set[str] = set()
    for tok in tokenize(explanation_text(source)):
        if tok.stop or tok.text in seen:
            continue
        seen.add(tok.text)
        players.append(tok.text)
    if not players:
        raise ValueError(f"document {source_id!r} has no attributable tokens")

    src_weights = vectors.term_weights[src_idx]
    target_vec = vectors.term_weights[tgt_idx]
    target_norm = float(np.linalg.norm(target_vec))

    w = np.zeros(len(players))
    y = np.zeros(len(players))
    for i, term in enumerate(players):
        col = vectors.term_index.get(term)
        if col is not None:
            w[i] = src_weights[col]
            y[i] = target_vec[col]
    num = w * y
    sq = w * w

    if len(players) <= cfg.exact_max_tokens:
        phi = exact_shapley(num, sq, target_norm)
    else:
        rng = np.random.default_rng(cfg.seed)
        phi = sampled_shapley(num, sq, target_norm, cfg.permutations, rng)

    attributions = [
        TokenAttribution(token=t, phi=float(p), side=side) for t, p in zip(players, phi)
    ]
    attributions.sort(key=lambda a: -abs(a.phi))
    return attributions


def _topic_summary(
    corpus: Corpus, model: ClusterModel, doc_id: str, side: str
) -> TopicSummary:
    idx = corpus.position(doc_id)
    label = model.hard_label_of(idx)
    keywords = []
    if label != NOISE:
        ranked = cluster_keywords(corpus, model, label)
        keywords = select_top_k(ranked, model.size(label))
    return TopicSummary(side=side, doc_id=doc_id, cluster=label, keywords=keywords)


def _pair_explanation(
    corpus: Corpus,
    vectors: CorpusVectors,
    model: ClusterModel,
    a_id: str,
    b_id: str,
    score: CoherenceScore,
    cfg: AttributionConfig,
) -> ConnectionExplanation:
    a, b = corpus[a_id], corpus[b_id]
    label = label_connection(score, a, b)
    overlaps = [
        o for o in entity_overlaps(a, b) if o.overlap >= ENTITY_FLAG_THRESHOLD
    ]
    attributions = keyword_attributions(corpus, vectors, a_id, b_id, cfg, side="source")
    attributions += keyword_attributions(corpus, vectors, b_id, a_id, cfg, side="target")
    topics = [
        _topic_summary(corpus, model, a_id, "source"),
        _topic_summary(corpus, model, b_id, "target"),
    ]
    return ConnectionExplanation(
        label=label,
        topics=topics,
        shared_entities=overlaps,
        attributions=attributions,
        coherence=score,
    )


def explain_connection(
    corpus: Corpus,
    vectors: CorpusVectors,
    model: ClusterModel,
    narrative: NarrativeMap,
    source_id: str,
    target_id: str,
    cfg: AttributionConfig | None = None,
) -> ConnectionExplanation:
    """Full explanation of an existing map edge."""
    if cfg is None:
        cfg = AttributionConfig()
    edge = narrative.edge(source_id, target_id)
    if edge is None:
        raise KeyError(f"map has no edge {source_id} -> {target_id}")
    return _pair_explanation(
        corpus, vectors, model, source_id, target_id, edge.score, cfg
    )


def compare_events(
    corpus: Corpus,
    vectors: CorpusVectors,
    model: ClusterModel,
    narrative: NarrativeMap,
    graph: CandidateGraph,
    a_id: str,
    b_id: str,
    cfg: AttributionConfig | None = None,
) -> ConnectionExplanation:
    """Explanation of an arbitrary pair plus why it is (un)connected.

    Events are reordered temporally if needed. margin = theta_min -
    combined, positive when the pair falls below the connection floor;
    top_negative lists the most connection-hurting tokens.
    """
    if cfg is None:
        cfg = AttributionConfig()
    if a_id == b_id:
        raise ValueError("cannot compare an event with itself")
    ia, ib = corpus.position(a_id), corpus.position(b_id)
    if ia > ib:  # corpus order is temporal
        ia, ib = ib, ia
        a_id, b_id = b_id, a_id
    score = graph.score(ia, ib)
    explanation = _pair_explanation(corpus, vectors, model, a_id, b_id, score, cfg)
    margin = narrative.params.min_edge_coherence - score.combined
    negatives = sorted(
        (x for x in explanation.attributions if x.phi < 0), key=lambda x: x.phi
    )
    explanation.non_connection = NonConnection(
        below_threshold=score.combined < narrative.params.min_edge_coherence,
        margin=margin,
        top_negative=negatives[:TOP_NEGATIVE_COUNT],
    )
    return explanation
