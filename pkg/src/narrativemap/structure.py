"""Global structure explanations: storyline names and important events.

Name candidates are noun-phrase-like token runs found with a heuristic
part-of-speech layer (bundled lexicons plus suffix rules; proper nouns are
capitalized mid-sentence tokens or known entity tokens). Candidates score

    alpha * C_entity + beta * C_abstract + gamma * C_coverage - delta * O_overlap

with indicator entity/abstract factors, head-token coverage, and a token
Jaccard redundancy penalty against already assigned names.

Important events rank by content centrality (cosine to the storyline
centroid) and structural centrality (coherence-weighted degree); events in
both top-n sets get emphasis.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .clustering import ClusterModel, cluster_keywords, select_top_k
from .connections import token_jaccard
from .corpus import Corpus, Document, explanation_segments, explanation_text, extract_entities
from .density import NOISE
from .extraction import NarrativeMap
from .lexicon import abstract_terms, adjective_lexicon, noun_lexicon
from .text import cased_tokens, content_tokens
from .vectorize import CorpusVectors, cosine

NOUN_SUFFIXES = ("tion", "ment", "ity", "ism", "ness", "ence", "ance", "ing")
MIN_PHRASE_TOKENS = 2
MAX_PHRASE_TOKENS = 6


@dataclass(frozen=True)
class NamingWeights:
    alpha: float = 1.0   # entity presence
    beta: float = 0.5    # abstract-term presence
    gamma: float = 2.0   # storyline coverage
    delta: float = 1.0   # redundancy penalty

    def __post_init__(self):
        if min(self.alpha, self.beta, self.gamma, self.delta) < 0:
            raise ValueError("naming weights must be >= 0")


@dataclass
class NameCandidate:
    phrase: str
    tokens: tuple[str, ...]
    has_entity: bool
    has_abstract: bool
    c_entity: float = 0.0
    c_abstract: float = 0.0
    c_coverage: float = 0.0
    o_overlap: float = 0.0
    score: float = 0.0


@dataclass
class StorylineName:
    index: int
    name: str
    fallback: bool
    c_entity: float
    c_abstract: float
    c_coverage: float
    o_overlap: float
    score: float

    def to_jsonable(self) -> dict:
        return {
            "index": self.index,
            "name": self.name,
            "fallback": self.fallback,
            "score": {
                "c_entity": self.c_entity,
                "c_abstract": self.c_abstract,
                "c_coverage": self.c_coverage,
                "o_overlap": self.o_overlap,
                "total": self.score,
            },
        }


@dataclass
class ImportantEvent:
    doc_id: str
    content_score: float
    structure_score: float
    top_content: bool
    top_structure: bool
    emphasized: bool

    def to_jsonable(self) -> dict:
        return {
            "id": self.doc_id,
            "content_score": self.content_score,
            "structure_score": self.structure_score,
            "top_content": self.top_content,
            "top_structure": self.top_structure,
            "emphasized": self.emphasized,
        }


def _entity_token_set(doc: Document) -> set[str]:
    out: set[str] = set()
    for span in extract_entities(doc):
        out.update(span.tokens)
    return out


def candidate_names(storyline_docs: list[Document]) -> list[NameCandidate]:
    """Unscored name candidates from the storyline's explanation texts.

    Maximal runs of adjective/noun/proper-noun tokens, trimmed to end in a
    noun or proper noun, kept when 2-6 tokens long and containing a proper
    noun or an abstract term. Deduplicated case-insensitively across the
    storyline, first occurrence wins.
    """
    if not storyline_docs:
        raise ValueError("storyline must contain at least one document")
    nouns = noun_lexicon()
    adjectives = adjective_lexicon()
    abstracts = abstract_terms()

    candidates: list[NameCandidate] = []
    seen: set[tuple[str, ...]] = set()
    for doc in storyline_docs:
        entity_tokens = _entity_token_set(doc)
        headline, body_slice = explanation_segments(doc)
        toks = cased_tokens(headline) + cased_tokens(body_slice)

        def is_proper(t) -> bool:
            return (t.capitalized and not t.sentence_initial) or t.lower in entity_tokens

        def is_noun(t) -> bool:
            return (
                t.lower in nouns
                or t.lower in abstracts
                or t.lower.endswith(NOUN_SUFFIXES)
            )

        def in_run(t) -> bool:
            if t.stop and not is_proper(t):
                return False
            return is_proper(t) or is_noun(t) or t.lower in adjectives

        def flush(run: list) -> None:
            while run and not (is_proper(run[-1]) or is_noun(run[-1])):
                run.pop()  # phrases end in a noun or proper noun
            if not MIN_PHRASE_TOKENS <= len(run) <= MAX_PHRASE_TOKENS:
                return
            has_entity = any(is_proper(t) for t in run)
            has_abstract = any(t.lower in abstracts for t in run)
            key = tuple(t.lower for t in run)
            if (has_entity or has_abstract) and key not in seen:
                seen.add(key)
                candidates.append(
                    NameCandidate(
                        phrase=" ".join(t.text for t in run),
                        tokens=key,
                        has_entity=has_entity,
                        has_abstract=has_abstract,
                    )
                )

        run: list = []
        for tok in toks:
            if tok.sentence_initial and run:
                flush(run)  # noun phrases never cross a sentence boundary
                run = []
            if in_run(tok):
                run.append(tok)
            else:
                flush(run)
                run = []
        flush(run)
    return candidates


def score_name(
    cand: NameCandidate,
    storyline_docs: list[Document],
    existing: list[tuple[str, ...]],
    weights: NamingWeights | None = None,
) -> NameCandidate:
    """Scored copy of *cand* against one storyline and the assigned names.

    Coverage counts the storyline documents whose explanation text contains
    the phrase's final (head) token; overlap is the best token Jaccard
    against existing names.
    """
    if weights is None:
        weights = NamingWeights()
    c_entity = 1.0 if cand.has_entity else 0.0
    c_abstract = 1.0 if cand.has_abstract else 0.0
    head = cand.tokens[-1]
    hits = sum(
        1
        for doc in storyline_docs
        if head in (t.text for t in _tokenized_explanation(doc))
    )
    c_coverage = hits / len(storyline_docs)
    o_overlap = max(
        (token_jaccard(cand.tokens, prev) for prev in existing), default=0.0
    )
    score = (
        weights.alpha * c_entity
        + weights.beta * c_abstract
        + weights.gamma * c_coverage
        - weights.delta * o_overlap
    )
    return replace(
        cand,
        c_entity=c_entity,
        c_abstract=c_abstract,
        c_coverage=c_coverage,
        o_overlap=o_overlap,
        score=score,
    )


def _tokenized_explanation(doc: Document):
    from .text import tokenize

    return tokenize(explanation_text(doc))


def _fallback_name(
    corpus: Corpus, model: ClusterModel, storyline_docs: list[Document]
) -> str:
    """Top keyword pair of the storyline's dominant cluster, or the two most
    frequent content tokens when the storyline is all noise."""
    labels = [
        model.hard_label_of(corpus.position(d.id))
        for d in storyline_docs
    ]
    non_noise = [c for c in labels if c != NOISE]
    if non_noise:
        counts: dict[int, int] = {}
        for c in non_noise:
            counts[c] = counts.get(c, 0) + 1
        top_cluster = min(counts, key=lambda c: (-counts[c], c))
        ranked = cluster_keywords(corpus, model, top_cluster)
        pair = [k.term for k in select_top_k(ranked, model.size(top_cluster))[:2]]
        if pair:
            return " ".join(pair)
    freq: dict[str, int] = {}
    order: dict[str, int] = {}
    for doc in storyline_docs:
        for t in content_tokens(explanation_text(doc)):
            freq[t] = freq.get(t, 0) + 1
            order.setdefault(t, len(order))
    top = sorted(freq, key=lambda t: (-freq[t], order[t]))[:2]
    return " ".join(top) if top else "unnamed storyline"


def name_storylines(
    corpus: Corpus,
    model: ClusterModel,
    narrative: NarrativeMap,
    weights: NamingWeights | None = None,
) -> list[StorylineName]:
    """One name per storyline, assigned largest storyline first.

    Each storyline takes its best-scoring candidate (ties broken by higher
    coverage, then lexicographically smaller phrase); assigned names feed
    the redundancy penalty of later storylines. Storylines without
    candidates fall back to cluster keywords and are flagged.
    """
    if weights is None:
        weights = NamingWeights()
    order = sorted(
        range(len(narrative.storylines)),
        key=lambda i: (-len(narrative.storylines[i]), i),
    )
    existing: list[tuple[str, ...]] = []
    results: dict[int, StorylineName] = {}
    for idx in order:
        docs = [corpus[doc_id] for doc_id in narrative.storylines[idx]]
        scored = [
            score_name(c, docs, existing, weights) for c in candidate_names(docs)
        ]
        if scored:
            best = min(
                scored, key=lambda c: (-c.score, -c.c_coverage, c.phrase.lower())
            )
            existing.append(best.tokens)
            results[idx] = StorylineName(
                index=idx,
                name=best.phrase,
                fallback=False,
                c_entity=best.c_entity,
                c_abstract=best.c_abstract,
                c_coverage=best.c_coverage,
                o_overlap=best.o_overlap,
                score=best.score,
            )
        else:
            name = _fallback_name(corpus, model, docs)
            existing.append(tuple(name.split()))
            results[idx] = StorylineName(
                index=idx,
                name=name,
                fallback=True,
                c_entity=0.0,
                c_abstract=0.0,
                c_coverage=0.0,
                o_overlap=0.0,
                score=0.0,
            )
    return [results[i] for i in range(len(narrative.storylines))]


def important_events(
    corpus: Corpus,
    vectors: CorpusVectors,
    narrative: NarrativeMap,
    n: int = 3,
) -> list[ImportantEvent]:
    """Content and structural centrality per map node, with top-n flags.

    content = cosine(event vector, its storyline centroid); structure =
    sum of combined coherence over all incident edges (both kinds, in and
    out). Top-n ties resolve to the earlier timestamp, then id.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    content: dict[str, float] = {}
    for line in narrative.storylines:
        rows = [vectors.vectors[corpus.position(doc_id)] for doc_id in line]
        centroid = np.mean(rows, axis=0)
        for doc_id, row in zip(line, rows):
            # cosine() normalizes internally, so the L2 normalization of
            # the centroid is implicit (and exact for singleton lines)
            content[doc_id] = cosine(row, centroid)

    structure: dict[str, float] = {doc_id: 0.0 for doc_id in narrative.node_ids}
    for edge in narrative.edges:
        structure[edge.source] += edge.score.combined
        structure[edge.target] += edge.score.combined

    def rank(scores: dict[str, float]) -> set[str]:
        ordered = sorted(
            scores,
            key=lambda d: (-scores[d], corpus[d].timestamp, d),
        )
        return set(ordered[: min(n, len(ordered))])

    top_content = rank(content)
    top_structure = rank(structure)

    events = []
    for doc_id in narrative.node_ids:
        tc = doc_id in top_content
        ts = doc_id in top_structure
        events.append(
            ImportantEvent(
                doc_id=doc_id,
                content_score=content[doc_id],
                structure_score=structure[doc_id],
                top_content=tc,
                top_structure=ts,
                emphasized=tc and ts,
            )
        )
    events.sort(
        key=lambda e: (-(e.content_score + e.structure_score), e.doc_id)
    )
    return events
