#!/usr/bin/env python3
"""Walk through ingestion, vectorization, and cluster explanations.

Loads the bundled synthetic Belmar corpus, clusters it, and prints each
cluster's dynamically sized keyword explanation, the kind of summary the
cluster scatter view shows in a tooltip.

Run from the repository root:

    python demos/01_corpus_and_clusters.py
"""
from pathlib import Path

from narrativemap import (
    ClusteringParams,
    cluster_documents,
    cluster_keywords,
    load_corpus,
    project_2d,
    select_top_k,
    vectorize_corpus,
)

CORPUS = Path(__file__).resolve().parents[1] / "tests" / "data" / "synthetic_160.jsonl"


def main() -> None:
    with open(CORPUS, "rb") as fh:
        corpus = load_corpus(fh)
    print(f"loaded {len(corpus)} documents "
          f"({corpus[0].timestamp.date()} .. {corpus[-1].timestamp.date()})")

    vectors = vectorize_corpus(corpus)
    print(f"vector space: {vectors.source}, dim={vectors.dim}, "
          f"{len(vectors.terms)} vocabulary terms")

    model = cluster_documents(corpus.ids, vectors.vectors, ClusteringParams())
    noise = int((model.hard_labels == -1).sum())
    print(f"\nfound {model.n_clusters} clusters ({noise} noise documents)\n")

    for c in model.cluster_ids:
        ranked = cluster_keywords(corpus, model, c)
        top = select_top_k(ranked, model.size(c))
        terms = ", ".join(f"{k.term} ({k.score:.3f})" for k in top)
        print(f"cluster {c} | {model.size(c):3d} docs | medoid {model.medoid_ids[c]}")
        print(f"  keywords: {terms}")

    coords = project_2d(vectors.vectors)
    xs, ys = coords[:, 0], coords[:, 1]
    print(f"\n2D projection bounds: x in [{xs.min():.2f}, {xs.max():.2f}], "
          f"y in [{ys.min():.2f}, {ys.max():.2f}]")


if __name__ == "__main__":
    main()
