/** Extraction steering: parameter form, session POST, 1s job polling.
 *
 * Submitting starts a new session and polls its job; the previous map
 * stays interactive until the new one is ready. A 422 (infeasible
 * parameters, e.g. K larger than the corpus) renders inline next to the
 * offending field.
 */
import { ApiClient, ApiError, pollJob } from "./api.js";
import type { JobPayload } from "./types.js";

export interface SteerCallbacks {
  onJobUpdate?: (job: JobPayload) => void;
  onDone: (sessionId: string) => void;
  onError?: (message: string) => void;
}

interface FieldSpec {
  name: string;
  label: string;
  min: number;
  max: number;
  step: number;
  value: number;
}

const FIELDS: FieldSpec[] = [
  { name: "map_size", label: "map size (K)", min: 2, max: 200, step: 1, value: 20 },
  { name: "coverage", label: "story coverage (sigma)", min: 0, max: 1, step: 0.05, value: 0.5 },
  {
    name: "temporal_sensitivity",
    label: "temporal sensitivity",
    min: 0,
    max: 1,
    step: 0.05,
    value: 0,
  },
];

export class SteerControls {
  readonly form: HTMLFormElement;
  private readonly progress: HTMLElement;
  private readonly inputs = new Map<string, HTMLInputElement>();
  private readonly errors = new Map<string, HTMLElement>();
  private polling = false;

  constructor(
    private readonly api: ApiClient,
    private corpusId: string,
    private readonly callbacks: SteerCallbacks,
  ) {
    this.form = document.createElement("form");
    this.form.className = "steer-form";
    for (const field of FIELDS) {
      const row = document.createElement("label");
      row.className = "steer-field";
      const caption = document.createElement("span");
      caption.textContent = field.label;
      const input = document.createElement("input");
      input.type = "number";
      input.name = field.name;
      input.min = String(field.min);
      input.max = String(field.max);
      input.step = String(field.step);
      input.value = String(field.value);
      const error = document.createElement("span");
      error.className = "field-error";
      error.style.display = "none";
      row.append(caption, input, error);
      this.inputs.set(field.name, input);
      this.errors.set(field.name, error);
      this.form.appendChild(row);
    }
    const submit = document.createElement("button");
    submit.type = "submit";
    submit.textContent = "Extract map";
    submit.className = "steer-submit";
    this.form.appendChild(submit);

    this.progress = document.createElement("div");
    this.progress.className = "job-progress";
    this.form.appendChild(this.progress);

    this.form.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.submit();
    });
  }

  setCorpus(corpusId: string): void {
    this.corpusId = corpusId;
  }

  params(): Record<string, number> {
    const out: Record<string, number> = {};
    for (const [name, input] of this.inputs) out[name] = Number(input.value);
    return out;
  }

  setParams(values: Record<string, number>): void {
    for (const [name, value] of Object.entries(values)) {
      const input = this.inputs.get(name);
      if (input) input.value = String(value);
    }
  }

  private clearFieldErrors(): void {
    for (const error of this.errors.values()) {
      error.textContent = "";
      error.style.display = "none";
    }
  }

  private showFieldError(message: string): void {
    // attribute the error to the field it names; fall back to map_size
    const lower = message.toLowerCase();
    let target = "map_size";
    for (const name of this.inputs.keys()) {
      if (lower.includes(name)) target = name;
    }
    const error = this.errors.get(target);
    if (error) {
      error.textContent = message;
      error.style.display = "inline";
    }
  }

  async submit(): Promise<void> {
    if (this.polling) return;
    this.clearFieldErrors();
    this.progress.textContent = "";
    let created;
    try {
      created = await this.api.createSession(this.corpusId, this.params());
    } catch (err) {
      if (err instanceof ApiError && (err.status === 422 || err.status === 400)) {
        this.showFieldError(err.detail);
      } else {
        this.callbacks.onError?.(String(err));
      }
      return;
    }
    this.polling = true;
    this.form.dataset.jobId = created.job_id;
    this.form.dataset.sessionId = created.session_id;
    try {
      const job = await pollJob(this.api, created.job_id, (update) => {
        this.progress.textContent = `job ${update.state} — ${(update.progress * 100).toFixed(0)}%`;
        this.callbacks.onJobUpdate?.(update);
      });
      if (job.state === "done") {
        this.progress.textContent = "done";
        this.callbacks.onDone(created.session_id);
      } else {
        this.progress.textContent = `job ${job.state}${job.error ? `: ${job.error}` : ""}`;
        this.callbacks.onError?.(job.error ?? job.state);
      }
    } finally {
      this.polling = false;
    }
  }
}
