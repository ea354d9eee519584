#!/usr/bin/env python3
"""Extract a narrative map and render it as text.

Shows the user-facing extraction parameters (map size, story coverage,
temporal sensitivity) and the resulting storyline structure with the main
storyline marked.

    python demos/02_extract_map.py
"""
from pathlib import Path

from narrativemap import ExtractionParams, load_corpus
from narrativemap.pipeline import PipelineConfig, analyze

CORPUS = Path(__file__).resolve().parents[1] / "tests" / "data" / "synthetic_160.jsonl"


def main() -> None:
    with open(CORPUS, "rb") as fh:
        corpus = load_corpus(fh)

    config = PipelineConfig(
        extraction=ExtractionParams(
            map_size=20,            # K events on the map
            coverage=0.5,           # sigma: how much every major topic must appear
            temporal_sensitivity=0.3,  # 0..1 slider, decays long time gaps
        ),
        seed=0,
    )
    analysis = analyze(corpus, config)
    narrative = analysis.narrative

    print(f"map: {len(narrative.node_ids)} nodes, {len(narrative.edges)} edges, "
          f"{len(narrative.storylines)} storylines, flags={narrative.flags}")
    for idx, line in enumerate(narrative.storylines):
        marker = " <- main storyline" if idx == narrative.main_storyline else ""
        print(f"\nstoryline {idx}{marker}")
        for doc_id in line:
            d = corpus[doc_id]
            print(f"  {d.timestamp.date()} {doc_id:14s} {d.headline[:66]}")

    support = [e for e in narrative.edges if e.kind == "support"]
    print(f"\n{len(support)} cross-storyline support edges:")
    for e in support:
        print(f"  {e.source} -> {e.target}  combined={e.score.combined:.3f}")


if __name__ == "__main__":
    main()
