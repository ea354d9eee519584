/** Single-page app shell: corpus upload, extraction steering, and the
 * map / clusters / explanation / compare panels. Pure client of the
 * service JSON API; the base URL is the one configuration setting.
 */
import { ApiClient } from "./api.js";
import { SteerControls } from "./controls.js";
import { renderClusterView } from "./clusterView.js";
import { renderExplanation, showErrorToast } from "./explanationPanel.js";
import { renderMapView } from "./mapView.js";
import type { SessionData } from "./types.js";

type PanelName = "map" | "clusters" | "explanation" | "compare";

export class App {
  api: ApiClient;
  data: SessionData | null = null;
  corpusId: string | null = null;
  compareSelection: string[] = [];
  compareMode = false;

  private readonly panels = new Map<PanelName, HTMLElement>();
  private controls: SteerControls | null = null;
  private readonly root: HTMLElement;

  constructor(root: HTMLElement, baseUrl: string) {
    this.root = root;
    this.api = new ApiClient(baseUrl);
    root.textContent = "";
    root.classList.add("app");

    const toolbar = document.createElement("div");
    toolbar.className = "toolbar";
    root.appendChild(toolbar);

    const upload = document.createElement("input");
    upload.type = "file";
    upload.accept = ".jsonl,application/jsonl,text/plain";
    upload.className = "corpus-upload";
    upload.addEventListener("change", () => {
      const file = upload.files?.[0];
      if (file) void this.uploadCorpus(file);
    });
    toolbar.appendChild(upload);

    const compareToggle = document.createElement("button");
    compareToggle.className = "compare-toggle";
    compareToggle.textContent = "compare mode";
    compareToggle.addEventListener("click", () => {
      this.compareMode = !this.compareMode;
      this.compareSelection = [];
      compareToggle.classList.toggle("active", this.compareMode);
    });
    toolbar.appendChild(compareToggle);

    const tabs = document.createElement("div");
    tabs.className = "tabs";
    root.appendChild(tabs);
    const panelHost = document.createElement("div");
    panelHost.className = "panels";
    root.appendChild(panelHost);

    for (const name of ["map", "clusters", "explanation", "compare"] as const) {
      const tab = document.createElement("button");
      tab.textContent = name;
      tab.dataset.panel = name;
      tab.addEventListener("click", () => this.showPanel(name));
      tabs.appendChild(tab);
      const panel = document.createElement("section");
      panel.className = `panel panel-${name}`;
      panel.style.display = "none";
      panelHost.appendChild(panel);
      this.panels.set(name, panel);
    }
    this.showPanel("map");
  }

  panel(name: PanelName): HTMLElement {
    const panel = this.panels.get(name);
    if (!panel) throw new Error(`no panel ${name}`);
    return panel;
  }

  showPanel(name: PanelName): void {
    for (const [panelName, panel] of this.panels) {
      panel.style.display = panelName === name ? "block" : "none";
    }
    for (const tab of this.root.querySelectorAll<HTMLButtonElement>(".tabs button")) {
      tab.classList.toggle("active", tab.dataset.panel === name);
    }
  }

  async uploadCorpus(file: Blob): Promise<void> {
    const created = await this.api.uploadCorpus(file);
    this.attachCorpus(created.corpus_id);
  }

  attachCorpus(corpusId: string): void {
    this.corpusId = corpusId;
    if (!this.controls) {
      this.controls = new SteerControls(this.api, corpusId, {
        onDone: (sessionId) => void this.loadSession(sessionId),
        onError: (message) => showErrorToast(this.root, message),
      });
      this.root.querySelector(".toolbar")?.appendChild(this.controls.form);
    } else {
      this.controls.setCorpus(corpusId);
    }
  }

  get steerControls(): SteerControls {
    if (!this.controls) throw new Error("no corpus attached yet");
    return this.controls;
  }

  /** Fetch all payloads for a finished session and re-render the views. */
  async loadSession(sessionId: string): Promise<void> {
    this.data = await this.api.sessionData(sessionId);
    this.renderStatic();
  }

  private renderStatic(): void {
    if (!this.data) return;
    renderMapView(this.panel("map"), this.data.map, this.data.clusters, this.data.structure, {
      onEdgeSelect: (from, to) => void this.selectEdge(from, to),
      onNodeSelect: (id) => void this.selectNode(id),
    });
    renderClusterView(
      this.panel("clusters"),
      this.data.clusters,
      this.data.projection,
      this.data.map,
    );
  }

  async selectEdge(from: string, to: string): Promise<void> {
    if (!this.data) return;
    const panel = this.panel("explanation");
    try {
      const payload = await this.api.edgeExplanation(this.data.sessionId, from, to);
      renderExplanation(panel, payload, `${from} → ${to}`);
      this.showPanel("explanation");
    } catch (err) {
      showErrorToast(panel, `could not load explanation: ${err}`);
    }
  }

  /** In compare mode, two node clicks trigger a comparison. */
  async selectNode(id: string): Promise<void> {
    if (!this.compareMode || !this.data) return;
    if (this.compareSelection.includes(id)) return;
    this.compareSelection.push(id);
    if (this.compareSelection.length < 2) return;
    const [a, b] = this.compareSelection;
    this.compareSelection = [];
    const panel = this.panel("compare");
    try {
      const payload = await this.api.compare(this.data.sessionId, a, b);
      renderExplanation(panel, payload, `${a} vs ${b}`);
      this.showPanel("compare");
    } catch (err) {
      showErrorToast(panel, `could not compare: ${err}`);
    }
  }
}

/** Browser entry point. */
export function mount(): void {
  const root = document.getElementById("app");
  if (!root) return;
  const base =
    new URLSearchParams(window.location.search).get("api") ??
    window.localStorage.getItem("narrativemap.api") ??
    "http://127.0.0.1:8000";
  window.localStorage.setItem("narrativemap.api", base);
  new App(root, base);
}

if (typeof window !== "undefined" && typeof document !== "undefined" && document.getElementById("app")) {
  mount();
}
