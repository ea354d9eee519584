/** Edge explanation panel: label chips, per-event topics, shared entities,
 * and a signed horizontal bar chart of token attributions (positive bars
 * grow right, negative left), with the two directions toggleable. The
 * compare variant adds the non-connection verdict and margin.
 *
 * Every rendered figure is a field of the fetched payload; nothing is
 * recomputed client-side.
 */
import type { AttributionPayload, ExplanationPayload } from "./types.js";

function el(tag: string, className?: string, text?: string): HTMLElement {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function chipRow(payload: ExplanationPayload): HTMLElement {
  const row = el("div", "chip-row");
  row.appendChild(el("span", `chip primary ${payload.label.primary.toLowerCase()}`, payload.label.primary));
  if (payload.label.entity) {
    row.appendChild(el("span", "chip entity", "Entity"));
  }
  row.appendChild(
    el("span", "chip coherence", `coherence ${payload.coherence.combined.toFixed(3)}`),
  );
  row.appendChild(
    el(
      "span",
      "chip share",
      `cluster share ${(payload.coherence.cluster_share * 100).toFixed(0)}%`,
    ),
  );
  return row;
}

function topicsSection(payload: ExplanationPayload): HTMLElement {
  const section = el("div", "topics-section");
  section.appendChild(el("h3", undefined, "Topics"));
  for (const topic of payload.topics) {
    const block = el("div", `topic ${topic.side}`);
    const title =
      topic.cluster < 0
        ? `${topic.doc} (${topic.side}) — unclustered`
        : `${topic.doc} (${topic.side}) — cluster ${topic.cluster}`;
    block.appendChild(el("div", "topic-title", title));
    if (topic.keywords.length > 0) {
      block.appendChild(
        el("div", "topic-keywords", topic.keywords.map((k) => k.term).join(", ")),
      );
    }
    section.appendChild(block);
  }
  return section;
}

function entitiesSection(payload: ExplanationPayload): HTMLElement | null {
  if (!payload.label.entity || payload.entities.length === 0) return null;
  const section = el("div", "entities-section");
  section.appendChild(el("h3", undefined, "Shared entities"));
  const list = el("ul", "entity-list");
  for (const overlap of payload.entities) {
    list.appendChild(
      el(
        "li",
        "entity-overlap",
        `${overlap.a} ~ ${overlap.b} (overlap ${overlap.overlap.toFixed(2)})`,
      ),
    );
  }
  section.appendChild(list);
  return section;
}

function attributionChart(
  attributions: AttributionPayload[],
  side: "source" | "target",
): HTMLElement {
  const chart = el("div", "attribution-chart");
  const rows = attributions.filter((a) => a.side === side);
  const maxAbs = Math.max(...rows.map((a) => Math.abs(a.phi)), 1e-12);
  for (const attr of rows) {
    const row = el("div", "attribution-row");
    row.dataset.token = attr.token;
    row.appendChild(el("span", "attr-token", attr.token));
    const track = el("div", "attr-track");
    const bar = el(
      "div",
      attr.phi >= 0 ? "attr-bar positive" : "attr-bar negative",
    );
    const pct = (Math.abs(attr.phi) / maxAbs) * 50;
    bar.style.width = `${pct}%`;
    if (attr.phi >= 0) {
      bar.style.marginLeft = "50%";
    } else {
      bar.style.marginLeft = `${50 - pct}%`;
    }
    track.appendChild(bar);
    row.appendChild(track);
    row.appendChild(el("span", "attr-phi", attr.phi.toFixed(4)));
    chart.appendChild(row);
  }
  return chart;
}

function attributionsSection(payload: ExplanationPayload): HTMLElement {
  const section = el("div", "attributions-section");
  section.appendChild(el("h3", undefined, "Token contributions"));
  const toggles = el("div", "side-toggle");
  const chartHolder = el("div", "chart-holder");
  let active: "source" | "target" = "source";

  const render = () => {
    chartHolder.textContent = "";
    chartHolder.appendChild(attributionChart(payload.attributions, active));
    for (const button of toggles.querySelectorAll("button")) {
      button.classList.toggle("active", button.dataset.side === active);
    }
  };
  for (const side of ["source", "target"] as const) {
    const button = el("button", "toggle", side) as HTMLButtonElement;
    button.dataset.side = side;
    button.addEventListener("click", () => {
      active = side;
      render();
    });
    toggles.appendChild(button);
  }
  section.appendChild(toggles);
  section.appendChild(chartHolder);
  render();
  return section;
}

function nonConnectionSection(payload: ExplanationPayload): HTMLElement | null {
  const nc = payload.non_connection;
  if (!nc) return null;
  const section = el("div", "non-connection-section");
  section.appendChild(el("h3", undefined, "Connection verdict"));
  const verdict = el(
    "div",
    nc.below_threshold ? "verdict below" : "verdict above",
    nc.below_threshold
      ? `Not connected: coherence falls short of the threshold by ${nc.margin.toFixed(4)}`
      : `Above the connection threshold (margin ${nc.margin.toFixed(4)})`,
  );
  verdict.dataset.margin = String(nc.margin);
  verdict.dataset.belowThreshold = String(nc.below_threshold);
  section.appendChild(verdict);
  if (nc.top_negative.length > 0) {
    section.appendChild(el("div", "neg-title", "Most connection-hurting tokens"));
    const list = el("ul", "neg-list");
    for (const attr of nc.top_negative) {
      list.appendChild(
        el("li", "neg-token", `${attr.token} (${attr.phi.toFixed(4)}, ${attr.side})`),
      );
    }
    section.appendChild(list);
  }
  return section;
}

export function renderExplanation(
  container: HTMLElement,
  payload: ExplanationPayload,
  heading: string,
): void {
  container.textContent = "";
  container.classList.add("explanation-panel");
  container.appendChild(el("h2", "panel-heading", heading));
  container.appendChild(chipRow(payload));
  const entities = entitiesSection(payload);
  if (entities) container.appendChild(entities);
  if (payload.label.primary === "Topical" || payload.topics.length > 0) {
    container.appendChild(topicsSection(payload));
  }
  container.appendChild(attributionsSection(payload));
  const nonConnection = nonConnectionSection(payload);
  if (nonConnection) container.appendChild(nonConnection);
}

/** Error toast that leaves the previous panel content untouched. */
export function showErrorToast(host: HTMLElement, message: string): void {
  const toast = el("div", "toast error", message);
  host.appendChild(toast);
  setTimeout(() => toast.remove(), 4000);
}
