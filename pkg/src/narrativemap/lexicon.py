"""Bundled word lists: stopwords, common nouns, adjectives, abstract terms.

All lists ship as plain-text data files so builds are deterministic and
offline. The stopword list can be overridden with a custom file path.
"""
from __future__ import annotations

from functools import lru_cache
from importlib import resources
from pathlib import Path


def _read_wordlist(text: str) -> frozenset[str]:
    words = set()
    for line in text.splitlines():
        line = line.strip().lower()
        if line and not line.startswith("#"):
            words.add(line)
    return frozenset(words)


@lru_cache(maxsize=None)
def _bundled(name: str) -> frozenset[str]:
    data = resources.files("narrativemap").joinpath("data", name).read_text("utf-8")
    return _read_wordlist(data)


def stopwords(path: str | Path | None = None) -> frozenset[str]:
    """English stopwords; pass a file path to override the bundled list."""
    if path is not None:
        return _read_wordlist(Path(path).read_text("utf-8"))
    return _bundled("stopwords.txt")


def noun_lexicon() -> frozenset[str]:
    return _bundled("nouns.txt")


def adjective_lexicon() -> frozenset[str]:
    return _bundled("adjectives.txt")


def abstract_terms() -> frozenset[str]:
    return _bundled("abstract_terms.txt")
