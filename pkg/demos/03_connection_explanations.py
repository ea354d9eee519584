#!/usr/bin/env python3
"""Explain individual connections: labels, entities, token attributions.

Picks one map edge and one unconnected pair and prints the full
explanation payloads: the Topical/Similarity label with its cluster-share
rationale, shared entities with Jaccard overlaps, and the signed Shapley
token attributions in both directions.

    python demos/03_connection_explanations.py
"""
from pathlib import Path

from narrativemap import ExtractionParams, compare_events, explain_connection, load_corpus
from narrativemap.pipeline import PipelineConfig, analyze

CORPUS = Path(__file__).resolve().parents[1] / "tests" / "data" / "synthetic_160.jsonl"


def show_attributions(attributions, side, limit=6):
    rows = [a for a in attributions if a.side == side][:limit]
    for a in rows:
        bar = "+" * int(abs(a.phi) * 40) if a.phi >= 0 else "-" * int(abs(a.phi) * 40)
        print(f"    {a.token:>14s} {a.phi:+.4f} {bar}")


def main() -> None:
    with open(CORPUS, "rb") as fh:
        corpus = load_corpus(fh)
    analysis = analyze(
        corpus, PipelineConfig(extraction=ExtractionParams(map_size=20, coverage=0.5))
    )
    narrative = analysis.narrative

    edge = next(e for e in narrative.edges if e.kind == "storyline")
    exp = explain_connection(
        analysis.corpus, analysis.vectors, analysis.model, narrative,
        edge.source, edge.target, analysis.config.attribution(),
    )
    print(f"edge {edge.source} -> {edge.target}")
    print(f"  label: {exp.label.primary}"
          f"{' + Entity' if exp.label.entity_flag else ''} "
          f"(cluster share {exp.coherence.cluster_share:.2f})")
    for overlap in exp.shared_entities:
        print(f"  shared entity: {overlap.entity_a.surface!r} ~ "
              f"{overlap.entity_b.surface!r} overlap={overlap.overlap:.2f}")
    print("  source-side token attributions:")
    show_attributions(exp.attributions, "source")

    # why two events stayed unconnected
    a, b = narrative.node_ids[0], narrative.node_ids[-1]
    comparison = compare_events(
        analysis.corpus, analysis.vectors, analysis.model, narrative,
        analysis.graph, a, b, analysis.config.attribution(),
    )
    nc = comparison.non_connection
    print(f"\ncompare {a} vs {b}")
    print(f"  combined coherence: {comparison.coherence.combined:.4f} "
          f"(threshold {narrative.params.min_edge_coherence})")
    print(f"  below threshold: {nc.below_threshold}, margin {nc.margin:+.4f}")
    if nc.top_negative:
        print("  most connection-hurting tokens:")
        for attr in nc.top_negative:
            print(f"    {attr.token:>14s} {attr.phi:+.4f} ({attr.side})")


if __name__ == "__main__":
    main()
