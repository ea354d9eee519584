"""Explainable narrative map extraction from timestamped news corpora.

The package turns a JSONL news corpus into a storyline graph and explains
the result at three levels: topical clusters with keyword scores, per-edge
connection explanations (labels, shared entities, signed token
attributions), and global structure explanations (storyline names,
important events).
"""
from .clustering import (
    ClusteringParams,
    ClusterKeyword,
    ClusterModel,
    cluster_documents,
    cluster_keywords,
    project_2d,
    select_top_k,
)
from .coherence import CoherenceParams, CoherenceScore, coherence
from .connections import (
    AttributionConfig,
    ConnectionExplanation,
    ConnectionLabel,
    EntityOverlap,
    TokenAttribution,
    compare_events,
    entity_overlaps,
    explain_connection,
    keyword_attributions,
    label_connection,
)
from .corpus import (
    Corpus,
    CorpusError,
    Document,
    EntitySpan,
    explanation_text,
    extract_entities,
    load_corpus,
)
from .extraction import (
    ExtractionError,
    ExtractionParams,
    MapEdge,
    NarrativeMap,
    build_candidate_graph,
    extract,
    finalize_map,
    link_storylines,
    select_nodes,
    validate_map,
)
from .pipeline import Analysis, PipelineConfig, analyze
from .structure import (
    ImportantEvent,
    NameCandidate,
    NamingWeights,
    candidate_names,
    important_events,
    name_storylines,
    score_name,
)
from .text import tokenize
from .vectorize import CorpusVectors, VectorizerConfig, cosine, vectorize_corpus

__version__ = "0.1.0"

__all__ = [
    "Analysis",
    "AttributionConfig",
    "ClusteringParams",
    "ClusterKeyword",
    "ClusterModel",
    "CoherenceParams",
    "CoherenceScore",
    "ConnectionExplanation",
    "ConnectionLabel",
    "Corpus",
    "CorpusError",
    "CorpusVectors",
    "Document",
    "EntityOverlap",
    "EntitySpan",
    "ExtractionError",
    "ExtractionParams",
    "ImportantEvent",
    "MapEdge",
    "NameCandidate",
    "NamingWeights",
    "NarrativeMap",
    "PipelineConfig",
    "TokenAttribution",
    "VectorizerConfig",
    "analyze",
    "build_candidate_graph",
    "candidate_names",
    "cluster_documents",
    "cluster_keywords",
    "coherence",
    "compare_events",
    "cosine",
    "entity_overlaps",
    "explain_connection",
    "explanation_text",
    "extract",
    "extract_entities",
    "finalize_map",
    "important_events",
    "keyword_attributions",
    "label_connection",
    "link_storylines",
    "load_corpus",
    "name_storylines",
    "project_2d",
    "score_name",
    "select_nodes",
    "select_top_k",
    "tokenize",
    "validate_map",
    "vectorize_corpus",
]
