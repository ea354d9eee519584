import json

import pytest
from click.testing import CliRunner

from narrativemap.cli import main

from conftest import DATA_DIR


@pytest.fixture()
def runner():
    return CliRunner()


@pytest.fixture(scope="module")
def corpus_file():
    return str(DATA_DIR / "synthetic_160.jsonl")


def run_ok(runner, args, **kw):
    result = runner.invoke(main, args, catch_exceptions=False, **kw)
    assert result.exit_code == 0, result.output
    return result


def test_ingest_normalizes_and_validates(runner, corpus_file, tmp_path):
    out = tmp_path / "corpus.jsonl"
    run_ok(runner, ["ingest", corpus_file, "-o", str(out)])
    lines = out.read_text().strip().split("\n")
    assert len(lines) == 160
    first = json.loads(lines[0])
    assert set(first) >= {"id", "timestamp", "headline", "body"}


def test_ingest_bad_corpus_nonzero_exit(runner, tmp_path):
    bad = tmp_path / "bad.jsonl"
    bad.write_text('{"id": "a"}\n')
    result = runner.invoke(main, ["ingest", str(bad)])
    assert result.exit_code != 0
    assert "timestamp" in result.output


def test_extract_same_seed_identical_files(runner, corpus_file, tmp_path):
    out1, out2 = tmp_path / "m1.json", tmp_path / "m2.json"
    args = ["extract", corpus_file, "-K", "12", "--sigma", "0.5", "--seed", "7"]
    run_ok(runner, args + ["-o", str(out1)])
    run_ok(runner, args + ["-o", str(out2)])
    assert out1.read_bytes() == out2.read_bytes()


def test_extract_k_too_large_fails(runner, corpus_file):
    result = runner.invoke(main, ["extract", corpus_file, "-K", "500"])
    assert result.exit_code != 0
    assert "exceeds corpus size" in result.output


@pytest.fixture(scope="module")
def map_file(tmp_path_factory, corpus_file):
    path = tmp_path_factory.mktemp("cli") / "map.json"
    runner = CliRunner()
    result = runner.invoke(
        main,
        ["extract", corpus_file, "-K", "12", "--sigma", "0.5", "-o", str(path)],
        catch_exceptions=False,
    )
    assert result.exit_code == 0, result.output
    return str(path)


def test_explain_edge_happy_path(runner, map_file):
    narrative = json.loads(open(map_file).read())
    edge = narrative["edges"][0]
    result = run_ok(runner, ["explain", "edge", map_file, edge["from"], edge["to"]])
    payload = json.loads(result.output)
    assert payload["label"]["primary"] in ("Topical", "Similarity")
    assert payload["coherence"] == edge["coherence"]


def test_explain_non_edge_exit_2_suggests_compare(runner, map_file):
    narrative = json.loads(open(map_file).read())
    nodes = narrative["nodes"]
    pairs = {(e["from"], e["to"]) for e in narrative["edges"]}
    a, b = next(
        (x, y) for x in nodes for y in nodes if x != y and (x, y) not in pairs
    )
    result = runner.invoke(main, ["explain", "edge", map_file, a, b])
    assert result.exit_code == 2
    assert "compare" in result.output


def test_compare_command(runner, map_file):
    narrative = json.loads(open(map_file).read())
    a, b = narrative["nodes"][0], narrative["nodes"][-1]
    result = run_ok(runner, ["compare", map_file, a, b])
    payload = json.loads(result.output)
    assert "non_connection" in payload
    assert "margin" in payload["non_connection"]


def test_clusters_command(runner, corpus_file):
    result = run_ok(runner, ["clusters", corpus_file])
    payload = json.loads(result.output)
    assert payload["clusters"]
    assert len(payload["membership"]) == 160
    assert len(payload["projection"]) == 160


def test_structure_command(runner, map_file):
    result = run_ok(runner, ["structure", map_file])
    payload = json.loads(result.output)
    assert payload["storylines"] and payload["important"]


def test_pipe_ingest_extract_structure(runner, corpus_file, tmp_path):
    # ingest -> extract -> structure through stdin/stdout pipes
    ingested = run_ok(runner, ["ingest", corpus_file]).output
    extracted = run_ok(
        runner, ["extract", "-", "-K", "10"], input=ingested
    ).output
    structured = run_ok(runner, ["structure", "-"], input=extracted).output
    payload = json.loads(structured)
    assert len(payload["important"]) >= 1
    assert all("name" in s for s in payload["storylines"])
