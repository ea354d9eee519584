from __future__ import annotations

import io
import json
from pathlib import Path

import pytest

from narrativemap.corpus import Corpus, load_corpus

DATA_DIR = Path(__file__).parent / "data"

_ACCEPTANCE_RESULTS: list[tuple[str, str]] = []


def pytest_runtest_logreport(report):
    """Collect acceptance-criterion outcomes for the terminal summary."""
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1].replace("test_criterion_", "")
    _ACCEPTANCE_RESULTS.append((name, "PASS" if report.passed else "FAIL"))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for name, outcome in _ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"ACCEPTANCE {name}: {outcome}")


def corpus_from_dicts(docs: list[dict]) -> Corpus:
    return load_corpus(io.StringIO("\n".join(json.dumps(d) for d in docs)))


def doc(doc_id: str, day: int, headline: str, body: str = "", hour: int = 12, **extra) -> dict:
    month = 7 + (day - 1) // 28
    dom = (day - 1) % 28 + 1
    out = {
        "id": doc_id,
        "timestamp": f"2021-{month:02d}-{dom:02d}T{hour:02d}:00:00Z",
        "headline": headline,
        "body": body,
    }
    out.update(extra)
    return out


@pytest.fixture(scope="session")
def fixture_corpus_path() -> Path:
    return DATA_DIR / "synthetic_160.jsonl"


@pytest.fixture(scope="session")
def fixture_corpus(fixture_corpus_path) -> Corpus:
    with open(fixture_corpus_path, "rb") as fh:
        return load_corpus(fh)
