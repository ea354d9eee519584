"""Document vectorization: lexical TF-IDF default, provided embeddings optional.

The default space is a sublinear TF-IDF over the non-stopword tokens of each
document's explanation text, w(t, d) = ln(1 + tf) * ln(N / df), optionally
followed by a seeded Gaussian random projection, then L2 normalization.
When every document carries a precomputed vector those are normalized and
used as the coherence/clustering space instead; the lexical term weights are
still computed because keyword attributions always work in term space.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .corpus import Corpus, CorpusError, explanation_text
from .text import content_tokens


@dataclass(frozen=True)
class VectorizerConfig:
    projection_dim: int | None = None  # e.g. 256; None keeps the raw term space
    seed: int = 0
    stopword_path: str | None = None


@dataclass
class CorpusVectors:
    """Vector-space view of a corpus.

    vectors      -- (N, dim) unit rows (or zero rows for empty documents);
                    the space used by clustering and coherence
    terms        -- sorted vocabulary of the lexical space
    term_weights -- (N, V) raw TF-IDF weights in term space, unnormalized;
                    the space used by keyword attributions
    """

    vectors: np.ndarray
    terms: list[str]
    term_index: dict[str, int] = field(repr=False)
    term_weights: np.ndarray = field(repr=False)
    idf: np.ndarray = field(repr=False)
    source: str = "tfidf"  # "tfidf" | "provided"

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    def term_vector(self, doc_index: int) -> np.ndarray:
        return self.term_weights[doc_index]


def l2_normalize(matrix: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(matrix, axis=1, keepdims=True)
    safe = np.where(norms > 0, norms, 1.0)
    return matrix / safe


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    """Cosine similarity, 0.0 when either vector is all-zero."""
    na = float(np.linalg.norm(a))
    nb = float(np.linalg.norm(b))
    if na == 0.0 or nb == 0.0:
        return 0.0
    return float(np.dot(a, b) / (na * nb))


def _lexical_weights(corpus: Corpus, cfg: VectorizerConfig):
    from .lexicon import stopwords

    stop_set = stopwords(cfg.stopword_path)
    doc_tokens = [content_tokens(explanation_text(d), stop_set) for d in corpus]
    vocab = sorted({t for toks in doc_tokens for t in toks})
    term_index = {t: i for i, t in enumerate(vocab)}
    n_docs = len(corpus)
    df = np.zeros(len(vocab))
    for toks in doc_tokens:
        for t in set(toks):
            df[term_index[t]] += 1
    idf = np.log(n_docs / np.maximum(df, 1.0))
    weights = np.zeros((n_docs, len(vocab)))
    for row, toks in enumerate(doc_tokens):
        counts: dict[str, int] = {}
        for t in toks:
            counts[t] = counts.get(t, 0) + 1
        for t, tf in counts.items():
            col = term_index[t]
            weights[row, col] = math.log(1.0 + tf) * idf[col]
    return vocab, term_index, weights, idf


def vectorize_corpus(corpus: Corpus, cfg: VectorizerConfig | None = None) -> CorpusVectors:
    """Per-document vectors plus the lexical term-space weights.

    Provided vectors are all-or-nothing: mixing embedded and non-embedded
    documents raises CorpusError because cosines across spaces are
    meaningless.
    """
    if cfg is None:
        cfg = VectorizerConfig()
    if len(corpus) == 0:
        raise CorpusError("cannot vectorize an empty corpus")

    n_with_vector = sum(1 for d in corpus if d.provided_vector is not None)
    if 0 < n_with_vector < len(corpus):
        raise CorpusError(
            f"{n_with_vector} of {len(corpus)} documents carry a provided vector; "
            "provided vectors must cover the whole corpus or none of it"
        )

    vocab, term_index, weights, idf = _lexical_weights(corpus, cfg)

    if n_with_vector == len(corpus):
        provided = np.array([d.provided_vector for d in corpus], dtype=float)
        vectors = l2_normalize(provided)
        source = "provided"
    else:
        vectors = weights
        if cfg.projection_dim is not None and len(vocab) > 0:
            rng = np.random.default_rng(cfg.seed)
            proj = rng.standard_normal((len(vocab), cfg.projection_dim))
            proj /= math.sqrt(cfg.projection_dim)
            vectors = vectors @ proj
        vectors = l2_normalize(vectors)
        source = "tfidf"

    return CorpusVectors(
        vectors=vectors,
        terms=vocab,
        term_index=term_index,
        term_weights=weights,
        idf=idf,
        source=source,
    )
