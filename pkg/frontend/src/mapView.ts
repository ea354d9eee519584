/** Narrative map view: storyline lanes over a shared temporal axis.
 *
 * Lanes are ordered by storyline size (largest on top), nodes by their
 * temporal rank in the corpus, storyline edges solid, support edges
 * dashed. Node fill encodes the hard cluster; important events carry a
 * star badge and emphasized events a double ring. Lane headers show the
 * assigned storyline names. All numbers come straight from the fetched
 * payloads.
 */
import { clusterColor } from "./colors.js";
import type { ClustersPayload, MapPayload, StructurePayload } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface MapViewOptions {
  onEdgeSelect?: (from: string, to: string) => void;
  onNodeSelect?: (id: string) => void;
}

interface NodePosition {
  x: number;
  y: number;
  lane: number;
}

const LANE_HEIGHT = 86;
const NODE_STEP = 92;
const LEFT_PAD = 180;
const NODE_RADIUS = 11;

function svgEl<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | number> = {},
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [k, v] of Object.entries(attrs)) el.setAttribute(k, String(v));
  return el;
}

/** Lane order: by size descending, then original storyline index. */
export function laneOrder(map: MapPayload): number[] {
  return map.storylines
    .map((line, idx) => ({ idx, size: line.length }))
    .sort((a, b) => b.size - a.size || a.idx - b.idx)
    .map((s) => s.idx);
}

export function renderMapView(
  container: HTMLElement,
  map: MapPayload,
  clusters: ClustersPayload,
  structure: StructurePayload,
  options: MapViewOptions = {},
): void {
  container.textContent = "";
  container.classList.add("map-view");

  const temporalRank = new Map(clusters.docs.map((id, i) => [id, i]));
  const labelOf = new Map(clusters.docs.map((id, i) => [id, clusters.labels[i]]));
  const nameOf = new Map(structure.storylines.map((s) => [s.index, s]));
  const importantOf = new Map(structure.important.map((e) => [e.id, e]));

  // x positions: evenly spaced by temporal rank among the map's nodes
  const ordered = [...map.nodes].sort(
    (a, b) => (temporalRank.get(a) ?? 0) - (temporalRank.get(b) ?? 0),
  );
  const xOf = new Map(ordered.map((id, i) => [id, LEFT_PAD + i * NODE_STEP]));

  const lanes = laneOrder(map);
  const positions = new Map<string, NodePosition>();
  lanes.forEach((storylineIdx, laneIdx) => {
    for (const id of map.storylines[storylineIdx]) {
      positions.set(id, {
        x: xOf.get(id) ?? LEFT_PAD,
        y: LANE_HEIGHT * laneIdx + LANE_HEIGHT / 2,
        lane: laneIdx,
      });
    }
  });

  const width = LEFT_PAD + ordered.length * NODE_STEP;
  const height = LANE_HEIGHT * lanes.length;
  const svg = svgEl("svg", {
    width,
    height,
    viewBox: `0 0 ${width} ${height}`,
    class: "map-svg",
  });

  // lane backgrounds and headers
  lanes.forEach((storylineIdx, laneIdx) => {
    const group = svgEl("g", { class: "lane", "data-storyline": storylineIdx });
    group.appendChild(
      svgEl("rect", {
        x: 0,
        y: laneIdx * LANE_HEIGHT,
        width,
        height: LANE_HEIGHT,
        class: laneIdx % 2 ? "lane-bg odd" : "lane-bg even",
      }),
    );
    const name = nameOf.get(storylineIdx);
    const label = svgEl("text", {
      x: 8,
      y: laneIdx * LANE_HEIGHT + 20,
      class: "lane-header",
    });
    const isMain = storylineIdx === map.main_storyline;
    label.textContent =
      (isMain ? "★ " : "") + (name ? name.name : `storyline ${storylineIdx}`) +
      (name?.fallback ? " (fallback)" : "");
    group.appendChild(label);
    svg.appendChild(group);
  });

  // edges under nodes
  for (const edge of map.edges) {
    const a = positions.get(edge.from);
    const b = positions.get(edge.to);
    if (!a || !b) continue;
    const path = svgEl("path", {
      d:
        a.lane === b.lane
          ? `M ${a.x} ${a.y} L ${b.x} ${b.y}`
          : `M ${a.x} ${a.y} C ${(a.x + b.x) / 2} ${a.y}, ${(a.x + b.x) / 2} ${b.y}, ${b.x} ${b.y}`,
      class: `edge ${edge.kind}`,
      fill: "none",
      "data-edge": `${edge.from}->${edge.to}`,
      "data-kind": edge.kind,
    });
    if (edge.kind === "support") path.setAttribute("stroke-dasharray", "6 4");
    path.addEventListener("click", () => options.onEdgeSelect?.(edge.from, edge.to));
    const title = svgEl("title");
    title.textContent = `${edge.from} -> ${edge.to} (${edge.kind}), coherence ${edge.coherence.combined.toFixed(3)}`;
    path.appendChild(title);
    svg.appendChild(path);
  }

  // nodes with badges
  for (const id of map.nodes) {
    const pos = positions.get(id);
    if (!pos) continue;
    const group = svgEl("g", { class: "node", "data-node-id": id });
    const important = importantOf.get(id);
    if (important?.emphasized) {
      group.appendChild(
        svgEl("circle", {
          cx: pos.x,
          cy: pos.y,
          r: NODE_RADIUS + 5,
          class: "emphasis-ring",
          fill: "none",
        }),
      );
      group.classList.add("emphasized");
    }
    group.appendChild(
      svgEl("circle", {
        cx: pos.x,
        cy: pos.y,
        r: NODE_RADIUS,
        fill: clusterColor(labelOf.get(id) ?? -1),
        class: "node-dot",
      }),
    );
    if (important && (important.top_content || important.top_structure)) {
      const star = svgEl("text", {
        x: pos.x,
        y: pos.y - NODE_RADIUS - 6,
        class: "badge star",
        "text-anchor": "middle",
      });
      star.textContent = "★";
      group.appendChild(star);
      group.classList.add("important");
    }
    const idLabel = svgEl("text", {
      x: pos.x,
      y: pos.y + NODE_RADIUS + 14,
      class: "node-label",
      "text-anchor": "middle",
    });
    idLabel.textContent = id;
    group.appendChild(idLabel);
    group.addEventListener("click", () => options.onNodeSelect?.(id));
    svg.appendChild(group);
  }

  container.appendChild(svg);

  if (map.flags.length > 0) {
    const flags = document.createElement("div");
    flags.className = "map-flags";
    flags.textContent = `flags: ${map.flags.join(", ")}`;
    container.appendChild(flags);
  }
}
