"""HTTP/JSON service: corpora, sessions, background extraction, explanations.

Persistence is plain JSON files under a data directory (content-addressed
corpora, one document per session), written with a write-then-rename
discipline so concurrent readers never observe partial files. Extraction
runs as a cancellable background thread per session; every other endpoint
answers from the finished analysis.
"""
from __future__ import annotations

import hashlib
import io
import json
import os
import threading
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .clustering import ClusteringParams
from .corpus import Corpus, CorpusError, load_corpus
from .extraction import ExtractionCancelled, ExtractionError, ExtractionParams
from .connections import compare_events, explain_connection
from .pipeline import (
    SCHEMA_VERSION,
    Analysis,
    PipelineConfig,
    analyze,
    clusters_payload,
    dumps_canonical,
    map_payload,
    projection_payload,
    structure_payload,
)

JOB_STATES = ("queued", "running", "done", "failed", "cancelled")


def _now() -> str:
    return datetime.now(timezone.utc).isoformat().replace("+00:00", "Z")


def atomic_write(path: Path, text: str) -> None:
    tmp = path.with_name(f".{path.name}.{uuid.uuid4().hex}.tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


@dataclass
class Job:
    id: str
    kind: str = "extract"
    state: str = "queued"
    progress: float = 0.0
    error: str | None = None
    cancel_event: threading.Event = field(default_factory=threading.Event)
    lock: threading.Lock = field(default_factory=threading.Lock)

    def to_jsonable(self) -> dict:
        with self.lock:
            return {
                "schema_version": SCHEMA_VERSION,
                "id": self.id,
                "kind": self.kind,
                "state": self.state,
                "progress": self.progress,
                "error": self.error,
            }

    def advance(self, fraction: float, state: str | None = None) -> None:
        with self.lock:
            self.progress = max(self.progress, fraction)  # monotone
            if state is not None:
                self.state = state


def parse_session_params(obj: dict, default_seed: int) -> PipelineConfig:
    """Flat parameter dict from a client into a PipelineConfig.

    Raises ExtractionError/ValueError for out-of-range values (mapped to
    400 by the caller); the K-vs-corpus-size check happens separately.
    """
    if not isinstance(obj, dict):
        raise ValueError("params must be a JSON object")
    aliases = {"K": "map_size", "sigma": "coverage"}
    obj = {aliases.get(k, k): v for k, v in obj.items()}
    extraction = ExtractionParams(
        map_size=int(obj.get("map_size", 20)),
        coverage=float(obj.get("coverage", 0.5)),
        temporal_sensitivity=float(obj.get("temporal_sensitivity", 0.0)),
        min_edge_coherence=float(obj.get("min_edge_coherence", 0.05)),
        cross_edge_quantile=float(obj.get("cross_edge_quantile", 0.85)),
        w_c=float(obj.get("w_c", 0.5)),
    )
    clustering = ClusteringParams(
        min_cluster_size=int(obj.get("min_cluster_size", 5)),
        min_samples=int(obj.get("min_samples", 3)),
        softmax_temperature=float(obj.get("softmax_temperature", 0.2)),
    )
    return PipelineConfig(
        extraction=extraction,
        clustering=clustering,
        permutations=int(obj.get("permutations", 200)),
        seed=int(obj.get("seed", default_seed)),
        projection_dim=obj.get("projection_dim"),
    )


class SessionStore:
    """Sessions, jobs, and the in-memory analysis cache."""

    def __init__(self, data_dir: Path, default_seed: int = 0):
        self.data_dir = Path(data_dir)
        (self.data_dir / "corpora").mkdir(parents=True, exist_ok=True)
        (self.data_dir / "sessions").mkdir(parents=True, exist_ok=True)
        self.default_seed = default_seed
        self.jobs: dict[str, Job] = {}
        self.session_jobs: dict[str, str] = {}
        self.analyses: dict[str, Analysis] = {}
        self.lock = threading.Lock()

    # ---------------------------------------------------------- corpora
    def corpus_path(self, corpus_id: str) -> Path:
        return self.data_dir / "corpora" / f"{corpus_id}.jsonl"

    def save_corpus(self, raw: bytes) -> tuple[str, Corpus]:
        corpus = load_corpus(io.BytesIO(raw))  # validate before persisting
        corpus_id = hashlib.sha256(raw).hexdigest()[:16]
        path = self.corpus_path(corpus_id)
        if not path.exists():
            atomic_write(path, raw.decode("utf-8"))
        return corpus_id, corpus

    def load_corpus_by_id(self, corpus_id: str) -> Corpus:
        path = self.corpus_path(corpus_id)
        if not path.exists():
            raise KeyError(corpus_id)
        with open(path, "rb") as fh:
            return load_corpus(fh)

    # ---------------------------------------------------------- sessions
    def session_path(self, session_id: str) -> Path:
        return self.data_dir / "sessions" / f"{session_id}.json"

    def load_session(self, session_id: str) -> dict:
        path = self.session_path(session_id)
        if not path.exists():
            raise KeyError(session_id)
        return json.loads(path.read_text("utf-8"))

    def save_session(self, record: dict) -> None:
        record["updated"] = _now()
        atomic_write(self.session_path(record["id"]), dumps_canonical(record))

    def create_session(self, corpus_id: str, config: PipelineConfig) -> tuple[str, str]:
        session_id = uuid.uuid4().hex
        job = Job(id=uuid.uuid4().hex)
        record = {
            "schema_version": SCHEMA_VERSION,
            "id": session_id,
            "corpus_ref": corpus_id,
            "config": config.to_jsonable(),
            "created": _now(),
            "flags": [],
            "state": "queued",
        }
        self.save_session(record)
        with self.lock:
            self.jobs[job.id] = job
            self.session_jobs[session_id] = job.id
        worker = threading.Thread(
            target=self._run_extraction, args=(session_id, job, corpus_id, config),
            daemon=True,
        )
        worker.start()
        return session_id, job.id

    def _run_extraction(
        self, session_id: str, job: Job, corpus_id: str, config: PipelineConfig
    ) -> None:
        job.advance(0.0, "running")
        try:
            corpus = self.load_corpus_by_id(corpus_id)
            analysis = analyze(
                corpus,
                config,
                progress=lambda f, stage: job.advance(f * 0.9),
                cancelled=job.cancel_event.is_set,
            )
            record = self.load_session(session_id)
            record["flags"] = list(analysis.narrative.flags)
            record["map"] = map_payload(analysis)
            record["clusters"] = clusters_payload(analysis.corpus, analysis.model)
            record["projection"] = projection_payload(
                analysis.corpus, analysis.model, analysis.projection
            )
            record["structure"] = structure_payload(analysis)
            record["state"] = "done"
            self.save_session(record)
            with self.lock:
                self.analyses[session_id] = analysis
            job.advance(1.0, "done")
        except ExtractionCancelled:
            self._mark_session(session_id, "cancelled")
            job.advance(job.progress, "cancelled")
        except Exception as exc:  # surface the failure through the job
            self._mark_session(session_id, "failed", str(exc))
            with job.lock:
                job.state = "failed"
                job.error = str(exc)

    def _mark_session(self, session_id: str, state: str, error: str | None = None):
        try:
            record = self.load_session(session_id)
        except KeyError:
            return
        record["state"] = state
        if error:
            record["error"] = error
        self.save_session(record)

    def analysis_for(self, session_id: str, record: dict) -> Analysis:
        """Analysis for a finished session, rebuilt deterministically if the
        in-memory cache was lost (e.g. after a restart)."""
        with self.lock:
            cached = self.analyses.get(session_id)
        if cached is not None:
            return cached
        corpus = self.load_corpus_by_id(record["corpus_ref"])
        config = PipelineConfig.from_jsonable(record["config"])
        analysis = analyze(corpus, config)
        with self.lock:
            self.analyses[session_id] = analysis
        return analysis


def create_app(data_dir: str | Path | None = None, default_seed: int | None = None) -> FastAPI:
    data_dir = Path(data_dir or os.environ.get("DATA_DIR", "./narrativemap-data"))
    if default_seed is None:
        default_seed = int(os.environ.get("DEFAULT_SEED", "0"))
    store = SessionStore(data_dir, default_seed)
    app = FastAPI(title="narrativemap", version="0.1.0")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    app.state.store = store

    @app.exception_handler(RequestValidationError)
    async def validation_to_400(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"error": str(exc)})

    def get_session_or_404(session_id: str) -> dict:
        try:
            return store.load_session(session_id)
        except KeyError:
            raise HTTPException(404, f"unknown session {session_id!r}")

    def finished_session(session_id: str) -> dict:
        record = get_session_or_404(session_id)
        state = record.get("state")
        if state in ("queued", "running"):
            raise HTTPException(409, "extraction still running")
        if state != "done":
            raise HTTPException(409, f"extraction {state}: {record.get('error', '')}")
        return record

    # ------------------------------------------------------------ corpora
    @app.post("/corpora")
    async def post_corpus(request: Request):
        raw = await request.body()
        if not raw:
            raise HTTPException(400, "empty corpus body")
        try:
            corpus_id, corpus = store.save_corpus(raw)
        except CorpusError as exc:
            raise HTTPException(400, str(exc))
        return {
            "schema_version": SCHEMA_VERSION,
            "corpus_id": corpus_id,
            "document_count": len(corpus),
        }

    @app.get("/corpora/{corpus_id}/summary")
    def corpus_summary(corpus_id: str):
        try:
            corpus = store.load_corpus_by_id(corpus_id)
        except KeyError:
            raise HTTPException(404, f"unknown corpus {corpus_id!r}")
        docs = corpus.documents
        return {
            "schema_version": SCHEMA_VERSION,
            "corpus_id": corpus_id,
            "document_count": len(docs),
            "start": docs[0].timestamp.isoformat().replace("+00:00", "Z"),
            "end": docs[-1].timestamp.isoformat().replace("+00:00", "Z"),
            "has_vectors": all(d.provided_vector is not None for d in docs),
            "has_xy": all(d.provided_xy is not None for d in docs),
        }

    # ------------------------------------------------------------ sessions
    @app.post("/sessions")
    async def post_session(request: Request):
        try:
            body = await request.json()
        except json.JSONDecodeError:
            raise HTTPException(400, "body must be JSON")
        if not isinstance(body, dict) or "corpus_id" not in body:
            raise HTTPException(400, "body must contain corpus_id")
        corpus_id = body["corpus_id"]
        try:
            corpus = store.load_corpus_by_id(corpus_id)
        except KeyError:
            raise HTTPException(404, f"unknown corpus {corpus_id!r}")
        try:
            config = parse_session_params(body.get("params", {}), store.default_seed)
        except (ExtractionError, ValueError, TypeError) as exc:
            raise HTTPException(400, f"invalid params: {exc}")
        if config.extraction.map_size > len(corpus):
            raise HTTPException(
                422,
                f"map_size {config.extraction.map_size} exceeds corpus size {len(corpus)}",
            )
        if config.clustering.min_cluster_size > len(corpus):
            raise HTTPException(
                422,
                f"min_cluster_size {config.clustering.min_cluster_size} exceeds "
                f"corpus size {len(corpus)}",
            )
        session_id, job_id = store.create_session(corpus_id, config)
        return {
            "schema_version": SCHEMA_VERSION,
            "session_id": session_id,
            "job_id": job_id,
        }

    @app.get("/jobs/{job_id}")
    def get_job(job_id: str):
        job = store.jobs.get(job_id)
        if job is None:
            raise HTTPException(404, f"unknown job {job_id!r}")
        return job.to_jsonable()

    @app.delete("/jobs/{job_id}")
    def cancel_job(job_id: str):
        job = store.jobs.get(job_id)
        if job is None:
            raise HTTPException(404, f"unknown job {job_id!r}")
        job.cancel_event.set()
        with job.lock:
            if job.state == "queued":
                job.state = "cancelled"
        return job.to_jsonable()

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        record = get_session_or_404(session_id)
        return {
            "schema_version": SCHEMA_VERSION,
            "id": record["id"],
            "corpus_ref": record["corpus_ref"],
            "config": record["config"],
            "state": record.get("state"),
            "flags": record.get("flags", []),
            "created": record.get("created"),
            "updated": record.get("updated"),
            "job_id": store.session_jobs.get(session_id),
        }

    @app.get("/sessions/{session_id}/map")
    def get_map(session_id: str):
        return finished_session(session_id)["map"]

    @app.get("/sessions/{session_id}/clusters")
    def get_clusters(session_id: str):
        return finished_session(session_id)["clusters"]

    @app.get("/sessions/{session_id}/projection")
    def get_projection(session_id: str):
        return finished_session(session_id)["projection"]

    @app.get("/sessions/{session_id}/structure")
    def get_structure(session_id: str):
        return finished_session(session_id)["structure"]

    @app.get("/sessions/{session_id}/edges/{source}/{target}/explanation")
    def get_edge_explanation(session_id: str, source: str, target: str):
        record = finished_session(session_id)
        analysis = store.analysis_for(session_id, record)
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
        except KeyError as exc:
            raise HTTPException(404, str(exc.args[0] if exc.args else exc))
        payload = explanation.to_jsonable()
        payload["schema_version"] = SCHEMA_VERSION
        return payload

    @app.get("/sessions/{session_id}/compare")
    def get_compare(session_id: str, a: str = "", b: str = ""):
        if not a or not b:
            raise HTTPException(400, "query params a and b are required")
        record = finished_session(session_id)
        analysis = store.analysis_for(session_id, record)
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
            raise HTTPException(404, str(exc.args[0] if exc.args else exc))
        except ValueError as exc:
            raise HTTPException(400, str(exc))
        payload = explanation.to_jsonable()
        payload["schema_version"] = SCHEMA_VERSION
        return payload

    return app
