"""Command-line interface.

Every command emits the same JSON schemas as the HTTP API; `extract`
writes a self-contained map document (map + config + corpus) so that
`explain`, `compare`, and `structure` can rebuild the analysis
deterministically from the file alone. `--seed` threads the one RNG seed
through every stochastic component.
"""
from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .clustering import ClusteringParams, cluster_documents, project_2d
from .connections import compare_events, explain_connection
from .corpus import CorpusError, load_corpus
from .extraction import ExtractionError, ExtractionParams
from .pipeline import (
    PipelineConfig,
    analyze,
    clusters_payload,
    corpus_to_jsonl,
    dumps_canonical,
    load_map_document,
    map_document,
    projection_payload,
    structure_payload,
)
from .vectorize import VectorizerConfig, vectorize_corpus


def _read_corpus(path: str):
    try:
        if path == "-":
            return load_corpus(sys.stdin)
        with open(path, "rb") as fh:
            return load_corpus(fh)
    except (CorpusError, OSError) as exc:
        raise click.ClickException(str(exc))


def _read_map_document(path: str):
    try:
        raw = sys.stdin.read() if path == "-" else Path(path).read_text("utf-8")
        return load_map_document(json.loads(raw))
    except (OSError, json.JSONDecodeError, KeyError, CorpusError) as exc:
        raise click.ClickException(f"cannot load map document {path!r}: {exc}")


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        click.echo(text, nl=False)
    else:
        Path(out).write_text(text, encoding="utf-8")


@click.group()
def main():
    """Explainable narrative map extraction."""


@main.command()
@click.argument("jsonl", type=str)
@click.option("-o", "--output", default=None, help="Output path (default stdout).")
def ingest(jsonl, output):
    """Validate and normalize a JSONL corpus."""
    corpus = _read_corpus(jsonl)
    _write(corpus_to_jsonl(corpus), output)


def _config_options(fn):
    opts = [
        click.option("-K", "--map-size", default=20, show_default=True, type=int),
        click.option("--sigma", "--coverage", "coverage", default=0.5, show_default=True, type=float),
        click.option("--temporal", "temporal_sensitivity", default=0.0, show_default=True, type=float),
        click.option("--theta-min", "min_edge_coherence", default=0.05, show_default=True, type=float),
        click.option("--cross-edge-quantile", default=0.85, show_default=True, type=float),
        click.option("--w-c", default=0.5, show_default=True, type=float),
        click.option("--min-cluster-size", default=5, show_default=True, type=int),
        click.option("--min-samples", default=3, show_default=True, type=int),
        click.option("--temperature", "softmax_temperature", default=0.2, show_default=True, type=float),
        click.option("--permutations", default=200, show_default=True, type=int),
        click.option("--seed", default=0, show_default=True, type=int),
        click.option("--projection-dim", default=None, type=int),
    ]
    for opt in reversed(opts):
        fn = opt(fn)
    return fn


def _build_config(**kw) -> PipelineConfig:
    try:
        return PipelineConfig(
            extraction=ExtractionParams(
                map_size=kw["map_size"],
                coverage=kw["coverage"],
                temporal_sensitivity=kw["temporal_sensitivity"],
                min_edge_coherence=kw["min_edge_coherence"],
                cross_edge_quantile=kw["cross_edge_quantile"],
                w_c=kw["w_c"],
            ),
            clustering=ClusteringParams(
                min_cluster_size=kw["min_cluster_size"],
                min_samples=kw["min_samples"],
                softmax_temperature=kw["softmax_temperature"],
            ),
            permutations=kw["permutations"],
            seed=kw["seed"],
            projection_dim=kw["projection_dim"],
        )
    except (ExtractionError, ValueError) as exc:
        raise click.ClickException(f"invalid parameters: {exc}")


@main.command()
@click.argument("corpus_path", metavar="CORPUS", type=str)
@_config_options
@click.option("-o", "--output", default=None, help="Output path (default stdout).")
def extract(corpus_path, output, **kw):
    """Extract a narrative map from a corpus into a map document."""
    corpus = _read_corpus(corpus_path)
    config = _build_config(**kw)
    if config.extraction.map_size > len(corpus):
        raise click.ClickException(
            f"map_size {config.extraction.map_size} exceeds corpus size {len(corpus)}"
        )
    try:
        analysis = analyze(corpus, config)
    except (ExtractionError, ValueError) as exc:
        raise click.ClickException(str(exc))
    _write(dumps_canonical(map_document(analysis)), output)


@main.group()
def explain():
    """Explanations for map elements."""


@explain.command("edge")
@click.argument("map_path", metavar="MAP", type=str)
@click.argument("source")
@click.argument("target")
def explain_edge(map_path, source, target):
    """Explain an existing map edge SOURCE -> TARGET."""
    analysis = _read_map_document(map_path)
    try:
        explanation = explain_connection(
            analysis.corpus,
            analysis.vectors,
            analysis.model,
            analysis.narrative,
            source,
            target,
            analysis.config.attribution(),
        )
    except KeyError:
        click.echo(
            f"error: the map has no edge {source} -> {target}; "
            f"use `narrativemap compare` for arbitrary pairs",
            err=True,
        )
        sys.exit(2)
    payload = explanation.to_jsonable()
    payload["schema_version"] = 1
    click.echo(dumps_canonical(payload), nl=False)


@main.command()
@click.argument("map_path", metavar="MAP", type=str)
@click.argument("a")
@click.argument("b")
def compare(map_path, a, b):
    """Explain why events A and B are or are not connected."""
    analysis = _read_map_document(map_path)
    try:
        explanation = compare_events(
            analysis.corpus,
            analysis.vectors,
            analysis.model,
            analysis.narrative,
            analysis.graph,
            a,
            b,
            analysis.config.attribution(),
        )
    except KeyError as exc:
        raise click.ClickException(f"unknown document: {exc}")
    except ValueError as exc:
        raise click.ClickException(str(exc))
    payload = explanation.to_jsonable()
    payload["schema_version"] = 1
    click.echo(dumps_canonical(payload), nl=False)


@main.command()
@click.argument("corpus_path", metavar="CORPUS", type=str)
@click.option("--min-cluster-size", default=5, show_default=True, type=int)
@click.option("--min-samples", default=3, show_default=True, type=int)
@click.option("--temperature", "softmax_temperature", default=0.2, show_default=True, type=float)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--projection-dim", default=None, type=int)
def clusters(corpus_path, min_cluster_size, min_samples, softmax_temperature, seed, projection_dim):
    """Cluster a corpus and print clusters, keywords, and the projection."""
    corpus = _read_corpus(corpus_path)
    try:
        params = ClusteringParams(min_cluster_size, min_samples, softmax_temperature)
        vectors = vectorize_corpus(corpus, VectorizerConfig(projection_dim, seed))
        model = cluster_documents(corpus.ids, vectors.vectors, params)
    except (ValueError, CorpusError) as exc:
        raise click.ClickException(str(exc))
    payload = clusters_payload(corpus, model)
    payload["projection"] = projection_payload(
        corpus, model, project_2d(vectors.vectors, [d.provided_xy for d in corpus])
    )["points"]
    click.echo(dumps_canonical(payload), nl=False)


@main.command()
@click.argument("map_path", metavar="MAP", type=str)
def structure(map_path):
    """Storyline names and important events for a map document."""
    analysis = _read_map_document(map_path)
    click.echo(dumps_canonical(structure_payload(analysis)), nl=False)


@main.command()
@click.option("--port", default=8000, show_default=True, type=int, envvar="PORT")
@click.option(
    "--data-dir", default="./narrativemap-data", show_default=True, envvar="DATA_DIR"
)
@click.option("--seed", default=0, show_default=True, type=int, envvar="DEFAULT_SEED")
@click.option("--ui-dir", default=None, help="Serve a built frontend from this directory at /ui.")
@click.option("--host", default="127.0.0.1", show_default=True)
def serve(port, data_dir, seed, ui_dir, host):
    """Run the HTTP service."""
    import uvicorn

    from .service import create_app

    app = create_app(data_dir, seed)
    if ui_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=ui_dir, html=True), name="ui")
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
