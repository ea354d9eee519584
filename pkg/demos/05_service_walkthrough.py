#!/usr/bin/env python3
"""Drive the HTTP service end to end against a temporary data directory.

Uploads the bundled corpus, starts an extraction session, polls the job,
then fetches every analytical endpoint the UI consumes.

    python demos/05_service_walkthrough.py
"""
import tempfile
import time
from pathlib import Path

from fastapi.testclient import TestClient

from narrativemap.service import create_app

CORPUS = Path(__file__).resolve().parents[1] / "tests" / "data" / "synthetic_160.jsonl"


def main() -> None:
    with tempfile.TemporaryDirectory() as tmp:
        app = create_app(tmp, default_seed=0)
        with TestClient(app) as client:
            corpus_id = client.post("/corpora", content=CORPUS.read_bytes()).json()["corpus_id"]
            print("corpus:", client.get(f"/corpora/{corpus_id}/summary").json())

            created = client.post(
                "/sessions",
                json={"corpus_id": corpus_id,
                      "params": {"map_size": 20, "coverage": 0.5,
                                 "temporal_sensitivity": 0.2}},
            ).json()
            print("session:", created["session_id"], "job:", created["job_id"])

            while True:
                job = client.get(f"/jobs/{created['job_id']}").json()
                print(f"  job {job['state']} progress={job['progress']:.2f}")
                if job["state"] in ("done", "failed", "cancelled"):
                    break
                time.sleep(0.1)

            sid = created["session_id"]
            narrative = client.get(f"/sessions/{sid}/map").json()
            print(f"map: {len(narrative['nodes'])} nodes, "
                  f"{len(narrative['edges'])} edges, "
                  f"main storyline #{narrative['main_storyline']}")

            clusters = client.get(f"/sessions/{sid}/clusters").json()
            print("clusters:", [(c["id"], c["size"]) for c in clusters["clusters"]])

            structure = client.get(f"/sessions/{sid}/structure").json()
            print("names:", [s["name"] for s in structure["storylines"]])

            edge = narrative["edges"][0]
            explanation = client.get(
                f"/sessions/{sid}/edges/{edge['from']}/{edge['to']}/explanation"
            ).json()
            print(f"edge {edge['from']} -> {edge['to']}: "
                  f"{explanation['label']['primary']} label, "
                  f"{len(explanation['attributions'])} attributions")

            a, b = narrative["nodes"][0], narrative["nodes"][-1]
            comparison = client.get(
                f"/sessions/{sid}/compare", params={"a": a, "b": b}
            ).json()
            print(f"compare {a} vs {b}: below_threshold="
                  f"{comparison['non_connection']['below_threshold']}")


if __name__ == "__main__":
    main()
