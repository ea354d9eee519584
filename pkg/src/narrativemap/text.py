"""Tokenization primitives shared by every text-facing component.

The tokenizer is intentionally simple and fully deterministic: lowercase
tokens split on Unicode word boundaries, with apostrophes and periods kept
only when they sit between word characters ("aren't", "u.s"). Punctuation
is dropped. Stopwords are flagged rather than removed so each consumer can
decide whether to filter them.
"""
from __future__ import annotations

import re
from typing import NamedTuple

from .lexicon import stopwords

# Word runs joined by internal apostrophes or periods: "U.S.-Cuba" ->
# ["U.S", "Cuba"], "aren't" -> ["aren't"].
_TOKEN_RE = re.compile(r"\w+(?:['’.]\w+)*", re.UNICODE)

# Characters between two tokens that signal a sentence boundary.
_SENTENCE_BREAK_RE = re.compile(r"[.!?]")


class Token(NamedTuple):
    text: str
    stop: bool


class CasedToken(NamedTuple):
    """Token with original casing preserved, for entity/name heuristics."""

    text: str           # original surface form
    lower: str
    stop: bool
    sentence_initial: bool
    capitalized: bool   # first character is an uppercase letter


def tokenize(text: str, stop_set: frozenset[str] | None = None) -> list[Token]:
    """Lowercase word tokens with a stopword flag, in document order."""
    if stop_set is None:
        stop_set = stopwords()
    out = []
    for match in _TOKEN_RE.finditer(text):
        lower = match.group().lower()
        out.append(Token(lower, lower in stop_set))
    return out


def content_tokens(text: str, stop_set: frozenset[str] | None = None) -> list[str]:
    """Non-stopword tokens of *text*, lowercased, in order."""
    return [t.text for t in tokenize(text, stop_set) if not t.stop]


def cased_tokens(text: str, stop_set: frozenset[str] | None = None) -> list[CasedToken]:
    """Tokens with casing and sentence-position metadata.

    A token counts as sentence-initial when it is the first token of the
    text or the gap since the previous token contains '.', '!' or '?'.
    The rule misfires on abbreviations ("U.S. officials"); the heuristics
    built on top tolerate that.
    """
    if stop_set is None:
        stop_set = stopwords()
    out = []
    prev_end = None
    for match in _TOKEN_RE.finditer(text):
        surface = match.group()
        lower = surface.lower()
        if prev_end is None:
            initial = True
        else:
            initial = bool(_SENTENCE_BREAK_RE.search(text[prev_end : match.start()]))
        out.append(
            CasedToken(
                text=surface,
                lower=lower,
                stop=lower in stop_set,
                sentence_initial=initial,
                capitalized=surface[:1].isupper(),
            )
        )
        prev_end = match.end()
    return out
