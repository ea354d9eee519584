"""End-to-end pipeline glue shared by the CLI and the HTTP service.

An Analysis bundles everything derived from a corpus for one parameter
set: vectors, cluster model, candidate graph, 2D projection, and the
extracted narrative map. Every derivation is deterministic given the
corpus, the config, and the seed, so an Analysis can always be rebuilt
from a persisted map document.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from io import StringIO

import numpy as np

from .clustering import (
    ClusteringParams,
    ClusterModel,
    cluster_documents,
    cluster_keywords,
    project_2d,
    select_top_k,
)
from .connections import AttributionConfig
from .corpus import Corpus, load_corpus
from .extraction import (
    CandidateGraph,
    ExtractionParams,
    NarrativeMap,
    build_candidate_graph,
    finalize_map,
    link_storylines,
    select_nodes,
)
from .structure import NamingWeights, important_events, name_storylines
from .vectorize import CorpusVectors, VectorizerConfig, vectorize_corpus

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class PipelineConfig:
    extraction: ExtractionParams = field(default_factory=ExtractionParams)
    clustering: ClusteringParams = field(default_factory=ClusteringParams)
    naming: NamingWeights = field(default_factory=NamingWeights)
    permutations: int = 200
    exact_max_tokens: int = 12
    important_n: int = 3
    seed: int = 0
    projection_dim: int | None = None

    def vectorizer(self) -> VectorizerConfig:
        return VectorizerConfig(projection_dim=self.projection_dim, seed=self.seed)

    def attribution(self) -> AttributionConfig:
        return AttributionConfig(
            permutations=self.permutations,
            seed=self.seed,
            exact_max_tokens=self.exact_max_tokens,
        )

    def to_jsonable(self) -> dict:
        return {
            "extraction": self.extraction.to_jsonable(),
            "clustering": {
                "min_cluster_size": self.clustering.min_cluster_size,
                "min_samples": self.clustering.min_samples,
                "softmax_temperature": self.clustering.softmax_temperature,
            },
            "naming": {
                "alpha": self.naming.alpha,
                "beta": self.naming.beta,
                "gamma": self.naming.gamma,
                "delta": self.naming.delta,
            },
            "permutations": self.permutations,
            "exact_max_tokens": self.exact_max_tokens,
            "important_n": self.important_n,
            "seed": self.seed,
            "projection_dim": self.projection_dim,
        }

    @classmethod
    def from_jsonable(cls, obj: dict) -> "PipelineConfig":
        return cls(
            extraction=ExtractionParams.from_jsonable(obj.get("extraction", {})),
            clustering=ClusteringParams(**obj.get("clustering", {})),
            naming=NamingWeights(**obj.get("naming", {})),
            permutations=int(obj.get("permutations", 200)),
            exact_max_tokens=int(obj.get("exact_max_tokens", 12)),
            important_n=int(obj.get("important_n", 3)),
            seed=int(obj.get("seed", 0)),
            projection_dim=obj.get("projection_dim"),
        )


@dataclass
class Analysis:
    corpus: Corpus
    config: PipelineConfig
    vectors: CorpusVectors
    model: ClusterModel
    graph: CandidateGraph
    projection: np.ndarray
    narrative: NarrativeMap


def analyze(corpus: Corpus, config: PipelineConfig | None = None, progress=None, cancelled=None) -> Analysis:
    """Run the full pipeline. progress/cancelled hook into stage boundaries."""
    if config is None:
        config = PipelineConfig()

    def step(fraction: float, stage: str):
        if cancelled is not None and cancelled():
            from .extraction import ExtractionCancelled

            raise ExtractionCancelled(stage)
        if progress is not None:
            progress(fraction, stage)

    step(0.05, "vectorizing")
    vectors = vectorize_corpus(corpus, config.vectorizer())
    step(0.2, "clustering")
    model = cluster_documents(corpus.ids, vectors.vectors, config.clustering)
    projection = project_2d(vectors.vectors, [d.provided_xy for d in corpus])
    step(0.4, "candidate graph")
    graph = build_candidate_graph(corpus, vectors, model, config.extraction)
    step(0.6, "node selection")
    nodes, flags = select_nodes(vectors, model, config.extraction)
    step(0.8, "storyline linking")
    storylines = link_storylines(nodes, graph)
    step(0.9, "post-processing")
    narrative = finalize_map(corpus, graph, storylines, config.extraction, flags)
    step(1.0, "done")
    return Analysis(
        corpus=corpus,
        config=config,
        vectors=vectors,
        model=model,
        graph=graph,
        projection=projection,
        narrative=narrative,
    )


def clusters_payload(corpus: Corpus, model: ClusterModel) -> dict:
    clusters = []
    for c in model.cluster_ids:
        ranked = cluster_keywords(corpus, model, c)
        top = select_top_k(ranked, model.size(c))
        clusters.append(
            {
                "id": c,
                "medoid": model.medoid_ids[model.cluster_ids.index(c)],
                "size": model.size(c),
                "keywords": [{"term": k.term, "score": k.score} for k in top],
            }
        )
    return {
        "schema_version": SCHEMA_VERSION,
        "clusters": clusters,
        "membership": [[float(x) for x in row] for row in model.membership],
        "labels": [int(x) for x in model.hard_labels],
        "docs": list(corpus.ids),
    }


def projection_payload(corpus: Corpus, model: ClusterModel, projection: np.ndarray) -> dict:
    points = []
    for i, doc in enumerate(corpus):
        points.append(
            {
                "id": doc.id,
                "x": float(projection[i, 0]),
                "y": float(projection[i, 1]),
                "cluster": int(model.hard_labels[i]),
            }
        )
    return {"schema_version": SCHEMA_VERSION, "points": points}


def structure_payload(analysis: Analysis) -> dict:
    names = name_storylines(
        analysis.corpus, analysis.model, analysis.narrative, analysis.config.naming
    )
    important = important_events(
        analysis.corpus,
        analysis.vectors,
        analysis.narrative,
        analysis.config.important_n,
    )
    return {
        "schema_version": SCHEMA_VERSION,
        "storylines": [n.to_jsonable() for n in names],
        "important": [e.to_jsonable() for e in important],
    }


def map_payload(analysis: Analysis) -> dict:
    return analysis.narrative.to_jsonable()


def map_document(analysis: Analysis) -> dict:
    """Self-contained map file: the map plus config and the corpus itself,
    so downstream commands can rebuild the full analysis deterministically."""
    doc = map_payload(analysis)
    doc["config"] = analysis.config.to_jsonable()
    doc["corpus"] = [d.to_jsonable() for d in analysis.corpus]
    return doc


def load_map_document(obj: dict) -> Analysis:
    """Rebuild an Analysis from a map document without re-extracting."""
    corpus = corpus_from_jsonable(obj["corpus"])
    config = PipelineConfig.from_jsonable(obj.get("config", {}))
    narrative = NarrativeMap.from_jsonable(obj)
    vectors = vectorize_corpus(corpus, config.vectorizer())
    model = cluster_documents(corpus.ids, vectors.vectors, config.clustering)
    graph = build_candidate_graph(corpus, vectors, model, config.extraction)
    projection = project_2d(vectors.vectors, [d.provided_xy for d in corpus])
    return Analysis(
        corpus=corpus,
        config=config,
        vectors=vectors,
        model=model,
        graph=graph,
        projection=projection,
        narrative=narrative,
    )


def corpus_from_jsonable(docs: list[dict]) -> Corpus:
    lines = StringIO("\n".join(json.dumps(d) for d in docs))
    return load_corpus(lines)


def corpus_to_jsonl(corpus: Corpus) -> str:
    return "\n".join(json.dumps(d.to_jsonable(), sort_keys=True) for d in corpus) + "\n"


def dumps_canonical(obj: dict) -> str:
    """Stable, human-readable JSON used for every persisted artifact."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
