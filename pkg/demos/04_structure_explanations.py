#!/usr/bin/env python3
"""High-level structure explanations: storyline names and important events.

    python demos/04_structure_explanations.py
"""
from pathlib import Path

from narrativemap import ExtractionParams, important_events, load_corpus, name_storylines
from narrativemap.pipeline import PipelineConfig, analyze

CORPUS = Path(__file__).resolve().parents[1] / "tests" / "data" / "synthetic_160.jsonl"


def main() -> None:
    with open(CORPUS, "rb") as fh:
        corpus = load_corpus(fh)
    analysis = analyze(
        corpus, PipelineConfig(extraction=ExtractionParams(map_size=20, coverage=0.5))
    )

    names = name_storylines(corpus, analysis.model, analysis.narrative)
    print("storyline names (largest first pick, redundancy-penalized):")
    for n in names:
        size = len(analysis.narrative.storylines[n.index])
        tag = " [fallback]" if n.fallback else ""
        print(f"  #{n.index} ({size} events) {n.name!r}{tag}")
        print(f"      entity={n.c_entity:.0f} abstract={n.c_abstract:.0f} "
              f"coverage={n.c_coverage:.2f} overlap={n.o_overlap:.2f} "
              f"score={n.score:.2f}")

    print("\nimportant events (top-3 by content and by structure):")
    for e in important_events(corpus, analysis.vectors, analysis.narrative, n=3):
        if not (e.top_content or e.top_structure):
            continue
        badges = []
        if e.top_content:
            badges.append("content")
        if e.top_structure:
            badges.append("structure")
        if e.emphasized:
            badges.append("EMPHASIZED")
        d = corpus[e.doc_id]
        print(f"  {e.doc_id:14s} content={e.content_score:.3f} "
              f"structure={e.structure_score:.3f} [{', '.join(badges)}]")
        print(f"      {d.headline[:70]}")


if __name__ == "__main__":
    main()
