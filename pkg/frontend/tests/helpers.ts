/** E2E harness: starts the real Python service, uploads the bundled
 * fixture corpus, and creates a finished session for the UI to render.
 */
import { spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync, readFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { dirname, join, resolve } from "node:path";
import { fileURLToPath } from "node:url";

import { ApiClient, pollJob } from "../src/api.js";
import type { SessionData } from "../src/types.js";

const REPO_ROOT = resolve(dirname(fileURLToPath(import.meta.url)), "..", "..");
const FIXTURE = join(REPO_ROOT, "tests", "data", "synthetic_160.jsonl");

export interface ServiceHandle {
  base: string;
  api: ApiClient;
  corpusId: string;
  sessionId: string;
  data: SessionData;
  stop: () => void;
}

async function waitReady(base: string, timeoutMs = 30000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  for (;;) {
    try {
      const resp = await fetch(`${base}/openapi.json`);
      if (resp.ok) return;
    } catch {
      /* not up yet */
    }
    if (Date.now() > deadline) throw new Error(`service at ${base} never came up`);
    await new Promise((r) => setTimeout(r, 150));
  }
}

export async function startService(): Promise<ServiceHandle> {
  const port = 8400 + Math.floor(Math.random() * 1000);
  const dataDir = mkdtempSync(join(tmpdir(), "nmui-"));
  const code = [
    "import uvicorn",
    "from narrativemap.service import create_app",
    `uvicorn.run(create_app(${JSON.stringify(dataDir)}), host='127.0.0.1', port=${port}, log_level='warning')`,
  ].join("; ");
  const child: ChildProcess = spawn("python3", ["-c", code], {
    stdio: ["ignore", "pipe", "pipe"],
  });
  const base = `http://127.0.0.1:${port}`;
  let stderr = "";
  child.stderr?.on("data", (chunk) => {
    stderr += String(chunk);
  });
  try {
    await waitReady(base);
  } catch (err) {
    child.kill();
    throw new Error(`${err}\nservice stderr:\n${stderr}`);
  }

  const api = new ApiClient(base);
  const corpus = readFileSync(FIXTURE, "utf-8");
  const { corpus_id: corpusId } = await api.uploadCorpus(corpus);
  const created = await api.createSession(corpusId, {
    map_size: 20,
    coverage: 0.5,
    seed: 0,
  });
  const job = await pollJob(api, created.job_id, () => undefined, 100);
  if (job.state !== "done") {
    child.kill();
    throw new Error(`fixture extraction ${job.state}: ${job.error}`);
  }
  const data = await api.sessionData(created.session_id);
  return {
    base,
    api,
    corpusId,
    sessionId: created.session_id,
    data,
    stop: () => child.kill(),
  };
}
