/** Cluster scatter view: one point per document, colored by hard cluster
 * (noise in gray), hover tooltips with the cluster's keywords, and a
 * polyline overlay visiting the main storyline's events in time order.
 */
import { clusterColor, NOISE_COLOR } from "./colors.js";
import type { ClustersPayload, MapPayload, ProjectionPayload } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const WIDTH = 640;
const HEIGHT = 460;
const PAD = 28;

function svgEl<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | number> = {},
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [k, v] of Object.entries(attrs)) el.setAttribute(k, String(v));
  return el;
}

export function renderClusterView(
  container: HTMLElement,
  clusters: ClustersPayload,
  projection: ProjectionPayload,
  map: MapPayload | null = null,
): void {
  container.textContent = "";
  container.classList.add("cluster-view");

  const points = projection.points;
  const xs = points.map((p) => p.x);
  const ys = points.map((p) => p.y);
  const xMin = Math.min(...xs);
  const xMax = Math.max(...xs);
  const yMin = Math.min(...ys);
  const yMax = Math.max(...ys);
  const sx = (x: number) =>
    PAD + ((x - xMin) / (xMax - xMin || 1)) * (WIDTH - 2 * PAD);
  const sy = (y: number) =>
    HEIGHT - PAD - ((y - yMin) / (yMax - yMin || 1)) * (HEIGHT - 2 * PAD);

  const svg = svgEl("svg", {
    width: WIDTH,
    height: HEIGHT,
    viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    class: "cluster-svg",
  });

  const tooltip = document.createElement("div");
  tooltip.className = "tooltip";
  tooltip.style.display = "none";

  const keywordsOf = new Map(
    clusters.clusters.map((c) => [c.id, c.keywords.map((k) => k.term)]),
  );

  // main storyline overlay first, under the points
  if (map && map.storylines.length > 0) {
    const coords = new Map(points.map((p) => [p.id, p]));
    const main = map.storylines[map.main_storyline] ?? [];
    const positioned = main
      .map((id) => coords.get(id))
      .filter((p): p is NonNullable<typeof p> => p != null);
    if (positioned.length >= 2) {
      svg.appendChild(
        svgEl("polyline", {
          points: positioned.map((p) => `${sx(p.x)},${sy(p.y)}`).join(" "),
          class: "main-storyline-overlay",
          fill: "none",
        }),
      );
    }
  }

  for (const point of points) {
    const circle = svgEl("circle", {
      cx: sx(point.x),
      cy: sy(point.y),
      r: 5,
      fill: point.cluster < 0 ? NOISE_COLOR : clusterColor(point.cluster),
      class: point.cluster < 0 ? "point noise" : "point",
      "data-doc-id": point.id,
      "data-cluster": point.cluster,
    });
    circle.addEventListener("mouseenter", (event) => {
      const terms = keywordsOf.get(point.cluster);
      tooltip.innerHTML = "";
      const head = document.createElement("div");
      head.className = "tooltip-title";
      head.textContent =
        point.cluster < 0 ? `${point.id} — unclustered` : `${point.id} — cluster ${point.cluster}`;
      tooltip.appendChild(head);
      if (terms && terms.length > 0) {
        const list = document.createElement("div");
        list.className = "tooltip-keywords";
        list.textContent = terms.join(", ");
        tooltip.appendChild(list);
      }
      tooltip.style.display = "block";
      const me = event as MouseEvent;
      tooltip.style.left = `${me.pageX + 12}px`;
      tooltip.style.top = `${me.pageY + 12}px`;
    });
    circle.addEventListener("mouseleave", () => {
      tooltip.style.display = "none";
    });
    svg.appendChild(circle);
  }

  container.appendChild(svg);
  container.appendChild(tooltip);
}
