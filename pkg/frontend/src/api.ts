/** Thin fetch client for the narrativemap service; one base-URL setting. */
import type {
  ClustersPayload,
  CorpusCreatedPayload,
  ExplanationPayload,
  JobPayload,
  MapPayload,
  ProjectionPayload,
  SessionCreatedPayload,
  SessionData,
  StructurePayload,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
  }
}

async function parseError(resp: Response): Promise<ApiError> {
  let detail = resp.statusText;
  try {
    const body = (await resp.json()) as { detail?: string; error?: string };
    detail = body.detail ?? body.error ?? detail;
  } catch {
    /* non-JSON error body */
  }
  return new ApiError(resp.status, detail);
}

export class ApiClient {
  constructor(public baseUrl: string) {
    this.baseUrl = baseUrl.replace(/\/+$/, "");
  }

  private async getJson<T>(path: string): Promise<T> {
    const resp = await fetch(`${this.baseUrl}${path}`);
    if (!resp.ok) throw await parseError(resp);
    return (await resp.json()) as T;
  }

  async uploadCorpus(jsonl: string | Blob): Promise<CorpusCreatedPayload> {
    const resp = await fetch(`${this.baseUrl}/corpora`, {
      method: "POST",
      body: jsonl,
    });
    if (!resp.ok) throw await parseError(resp);
    return (await resp.json()) as CorpusCreatedPayload;
  }

  async createSession(
    corpusId: string,
    params: Record<string, unknown>,
  ): Promise<SessionCreatedPayload> {
    const resp = await fetch(`${this.baseUrl}/sessions`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ corpus_id: corpusId, params }),
    });
    if (!resp.ok) throw await parseError(resp);
    return (await resp.json()) as SessionCreatedPayload;
  }

  job(jobId: string): Promise<JobPayload> {
    return this.getJson(`/jobs/${jobId}`);
  }

  async cancelJob(jobId: string): Promise<JobPayload> {
    const resp = await fetch(`${this.baseUrl}/jobs/${jobId}`, { method: "DELETE" });
    if (!resp.ok) throw await parseError(resp);
    return (await resp.json()) as JobPayload;
  }

  map(sessionId: string): Promise<MapPayload> {
    return this.getJson(`/sessions/${sessionId}/map`);
  }

  clusters(sessionId: string): Promise<ClustersPayload> {
    return this.getJson(`/sessions/${sessionId}/clusters`);
  }

  projection(sessionId: string): Promise<ProjectionPayload> {
    return this.getJson(`/sessions/${sessionId}/projection`);
  }

  structure(sessionId: string): Promise<StructurePayload> {
    return this.getJson(`/sessions/${sessionId}/structure`);
  }

  edgeExplanation(
    sessionId: string,
    from: string,
    to: string,
  ): Promise<ExplanationPayload> {
    return this.getJson(
      `/sessions/${sessionId}/edges/${encodeURIComponent(from)}/${encodeURIComponent(to)}/explanation`,
    );
  }

  compare(sessionId: string, a: string, b: string): Promise<ExplanationPayload> {
    return this.getJson(
      `/sessions/${sessionId}/compare?a=${encodeURIComponent(a)}&b=${encodeURIComponent(b)}`,
    );
  }

  /** Fetch everything a finished session renders from. */
  async sessionData(sessionId: string): Promise<SessionData> {
    const [map, clusters, projection, structure] = await Promise.all([
      this.map(sessionId),
      this.clusters(sessionId),
      this.projection(sessionId),
      this.structure(sessionId),
    ]);
    return { sessionId, map, clusters, projection, structure };
  }
}

/** Poll a job once a second until it leaves the running states. */
export async function pollJob(
  api: ApiClient,
  jobId: string,
  onProgress: (job: JobPayload) => void,
  intervalMs = 1000,
): Promise<JobPayload> {
  for (;;) {
    const job = await api.job(jobId);
    onProgress(job);
    if (job.state === "done" || job.state === "failed" || job.state === "cancelled") {
      return job;
    }
    await new Promise((resolve) => setTimeout(resolve, intervalMs));
  }
}
