"""Corpus ingestion and the canonical text slice used by explanations.

A corpus is an immutable, timestamp-sorted collection of news documents.
Ingestion accepts UTF-8 JSONL, one document object per line:

    {"id": str, "timestamp": ISO-8601 str, "headline": str, "body": str,
     "source"?: str, "entities"?: [{"surface": str, "kind"?: str}],
     "vector"?: [float], "xy"?: [float, float]}

Unknown keys are ignored with a warning. Documents are validated on load;
malformed lines report their line number.
"""
from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import IO, Iterable, Iterator

from .text import cased_tokens, tokenize

ENTITY_KINDS = ("person", "org", "place", "other", "unknown")

_KNOWN_KEYS = {"id", "timestamp", "headline", "body", "source", "entities", "vector", "xy"}
_REQUIRED_KEYS = ("id", "timestamp", "headline", "body")

EXPLANATION_BODY_WORDS = 30


class CorpusError(ValueError):
    """Raised for malformed or inconsistent corpus input."""


@dataclass(frozen=True)
class EntitySpan:
    surface: str
    tokens: tuple[str, ...]
    kind: str = "unknown"

    def __post_init__(self):
        if not self.tokens:
            raise CorpusError(f"entity {self.surface!r} has no tokens")
        if self.kind not in ENTITY_KINDS:
            raise CorpusError(f"unknown entity kind {self.kind!r}")

    @classmethod
    def from_surface(cls, surface: str, kind: str = "unknown") -> "EntitySpan":
        toks = tuple(t.text for t in tokenize(surface))
        if not toks:
            raise CorpusError(f"entity surface {surface!r} contains no tokens")
        return cls(surface=surface, tokens=toks, kind=kind)


@dataclass(frozen=True)
class Document:
    id: str
    timestamp: datetime
    headline: str
    body: str
    entities: tuple[EntitySpan, ...] = ()
    source: str | None = None
    provided_vector: tuple[float, ...] | None = None
    provided_xy: tuple[float, float] | None = None

    def to_jsonable(self) -> dict:
        out: dict = {
            "id": self.id,
            "timestamp": self.timestamp.isoformat().replace("+00:00", "Z"),
            "headline": self.headline,
            "body": self.body,
        }
        if self.source is not None:
            out["source"] = self.source
        if self.entities:
            out["entities"] = [{"surface": e.surface, "kind": e.kind} for e in self.entities]
        if self.provided_vector is not None:
            out["vector"] = list(self.provided_vector)
        if self.provided_xy is not None:
            out["xy"] = list(self.provided_xy)
        return out


@dataclass(frozen=True)
class Corpus:
    documents: tuple[Document, ...]
    index: dict[str, int] = field(repr=False, default_factory=dict)

    def __post_init__(self):
        object.__setattr__(
            self, "index", {doc.id: i for i, doc in enumerate(self.documents)}
        )

    def __len__(self) -> int:
        return len(self.documents)

    def __iter__(self) -> Iterator[Document]:
        return iter(self.documents)

    def __getitem__(self, key: int | str) -> Document:
        if isinstance(key, str):
            return self.documents[self.index[key]]
        return self.documents[key]

    def position(self, doc_id: str) -> int:
        if doc_id not in self.index:
            raise KeyError(f"unknown document id {doc_id!r}")
        return self.index[doc_id]

    @property
    def ids(self) -> list[str]:
        return [d.id for d in self.documents]


def _parse_timestamp(raw: str, line_no: int) -> datetime:
    try:
        ts = datetime.fromisoformat(raw.replace("Z", "+00:00"))
    except (ValueError, TypeError, AttributeError):
        raise CorpusError(f"line {line_no}: invalid ISO-8601 timestamp {raw!r}") from None
    if ts.tzinfo is None:
        ts = ts.replace(tzinfo=timezone.utc)
    return ts.astimezone(timezone.utc).replace(microsecond=0)


def _parse_document(obj: dict, line_no: int) -> Document:
    for key in _REQUIRED_KEYS:
        if key not in obj:
            raise CorpusError(f"line {line_no}: missing required field {key!r}")
    unknown = set(obj) - _KNOWN_KEYS
    if unknown:
        warnings.warn(
            f"line {line_no}: ignoring unknown keys {sorted(unknown)}", stacklevel=3
        )
    doc_id = obj["id"]
    if not isinstance(doc_id, str) or not doc_id:
        raise CorpusError(f"line {line_no}: 'id' must be a nonempty string")
    entities = []
    for ent in obj.get("entities") or []:
        surface = ent.get("surface") if isinstance(ent, dict) else None
        if not surface:
            raise CorpusError(f"line {line_no}: entity without 'surface'")
        kind = ent.get("kind", "unknown")
        if kind not in ENTITY_KINDS:
            kind = "other"
        entities.append(EntitySpan.from_surface(surface, kind))
    vector = obj.get("vector")
    if vector is not None:
        if not isinstance(vector, list) or not all(
            isinstance(x, (int, float)) for x in vector
        ):
            raise CorpusError(f"line {line_no}: 'vector' must be a list of numbers")
        vector = tuple(float(x) for x in vector)
    xy = obj.get("xy")
    if xy is not None:
        if not isinstance(xy, list) or len(xy) != 2:
            raise CorpusError(f"line {line_no}: 'xy' must be a 2-element list")
        xy = (float(xy[0]), float(xy[1]))
    return Document(
        id=doc_id,
        timestamp=_parse_timestamp(obj["timestamp"], line_no),
        headline=str(obj["headline"]),
        body=str(obj["body"]),
        entities=tuple(entities),
        source=obj.get("source"),
        provided_vector=vector,
        provided_xy=xy,
    )


def load_corpus(stream: IO[bytes] | IO[str] | Iterable[str]) -> Corpus:
    """Parse JSONL into a validated Corpus sorted by (timestamp, id).

    Raises CorpusError on malformed JSON (with the line number), missing
    required fields, duplicate ids, or inconsistent vector dimensions.
    """
    docs: list[Document] = []
    seen: dict[str, int] = {}
    vector_dim: int | None = None
    for line_no, raw in enumerate(stream, start=1):
        if isinstance(raw, bytes):
            raw = raw.decode("utf-8")
        line = raw.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorpusError(f"line {line_no}: malformed JSON ({exc.msg})") from None
        if not isinstance(obj, dict):
            raise CorpusError(f"line {line_no}: expected a JSON object")
        doc = _parse_document(obj, line_no)
        if doc.id in seen:
            raise CorpusError(
                f"line {line_no}: duplicate id {doc.id!r} (first seen on line {seen[doc.id]})"
            )
        seen[doc.id] = line_no
        if doc.provided_vector is not None:
            if vector_dim is None:
                vector_dim = len(doc.provided_vector)
            elif len(doc.provided_vector) != vector_dim:
                raise CorpusError(
                    f"line {line_no}: vector dimension {len(doc.provided_vector)} "
                    f"differs from corpus dimension {vector_dim}"
                )
        docs.append(doc)
    if not docs:
        raise CorpusError("corpus is empty")
    docs.sort(key=lambda d: (d.timestamp, d.id))
    return Corpus(documents=tuple(docs))


def explanation_text(doc: Document) -> str:
    """Headline plus the first thirty whitespace-delimited body words.

    This is the canonical slice every explanation component works from.
    """
    words = doc.headline.split() + doc.body.split()[:EXPLANATION_BODY_WORDS]
    return " ".join(words)


def explanation_segments(doc: Document) -> tuple[str, str]:
    """The explanation slice split at the headline/body join, for heuristics
    that care about sentence boundaries (the join itself is one)."""
    headline = " ".join(doc.headline.split())
    body = " ".join(doc.body.split()[:EXPLANATION_BODY_WORDS])
    return headline, body


def extract_entities(doc: Document) -> list[EntitySpan]:
    """Entity spans for *doc*; provided annotations take precedence.

    Fallback heuristic: maximal runs of capitalized tokens. A leading
    sentence-initial stopword ("The Havana ...") is stripped from its run,
    and single-token runs that open a sentence are dropped because
    sentence case and proper-noun case are indistinguishable there.
    Results are deduplicated by token sequence, kind "unknown".
    """
    if doc.entities:
        return list(doc.entities)
    spans: list[EntitySpan] = []
    seen: set[tuple[str, ...]] = set()

    def flush(run: list) -> None:
        if not run or (len(run) == 1 and run[0].sentence_initial):
            return  # single sentence-initial token: case is ambiguous
        key = tuple(t.lower for t in run)
        if key not in seen:
            seen.add(key)
            spans.append(
                EntitySpan(
                    surface=" ".join(t.text for t in run),
                    tokens=key,
                    kind="unknown",
                )
            )

    for text in (doc.headline, doc.body):
        run: list = []
        for tok in cased_tokens(text):
            if tok.capitalized:
                if tok.sentence_initial and run:
                    flush(run)  # runs never cross a sentence boundary
                    run = []
                if tok.sentence_initial and tok.stop and not run:
                    continue  # sentence-case article/pronoun, not a name
                run.append(tok)
            else:
                flush(run)
                run = []
        flush(run)
    return spans
