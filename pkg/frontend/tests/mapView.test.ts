// E2E: the map view rendered from live service payloads.
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { laneOrder, renderMapView } from "../src/mapView.js";
import { startService, type ServiceHandle } from "./helpers.js";

let service: ServiceHandle;

beforeAll(async () => {
  service = await startService();
}, 120000);

afterAll(() => service?.stop());

function render(onEdge?: (f: string, t: string) => void, onNode?: (id: string) => void) {
  const host = document.createElement("div");
  document.body.appendChild(host);
  renderMapView(host, service.data.map, service.data.clusters, service.data.structure, {
    onEdgeSelect: onEdge,
    onNodeSelect: onNode,
  });
  return host;
}

describe("map view", () => {
  it("renders one lane per storyline, ordered by size", () => {
    const host = render();
    const lanes = host.querySelectorAll(".lane");
    expect(lanes.length).toBe(service.data.map.storylines.length);
    const order = [...lanes].map((lane) => Number(lane.getAttribute("data-storyline")));
    const sizes = order.map((idx) => service.data.map.storylines[idx].length);
    for (let i = 1; i < sizes.length; i++) {
      expect(sizes[i - 1]).toBeGreaterThanOrEqual(sizes[i]);
    }
    expect(order).toEqual(laneOrder(service.data.map));
  });

  it("renders every node with its hard-cluster color and every edge with its kind", () => {
    const host = render();
    const nodes = host.querySelectorAll(".node");
    expect(nodes.length).toBe(service.data.map.nodes.length);

    const edges = host.querySelectorAll(".edge");
    expect(edges.length).toBe(service.data.map.edges.length);
    const dashedKinds = new Set(
      [...edges]
        .filter((e) => e.hasAttribute("stroke-dasharray"))
        .map((e) => e.getAttribute("data-kind")),
    );
    const solidKinds = new Set(
      [...edges]
        .filter((e) => !e.hasAttribute("stroke-dasharray"))
        .map((e) => e.getAttribute("data-kind")),
    );
    if (dashedKinds.size > 0) expect([...dashedKinds]).toEqual(["support"]);
    expect([...solidKinds]).toEqual(["storyline"]);
  });

  it("orders nodes within a lane by corpus temporal rank", () => {
    const host = render();
    const rank = new Map(service.data.clusters.docs.map((id, i) => [id, i]));
    for (const line of service.data.map.storylines) {
      const xs = line.map((id) => {
        const dot = host.querySelector(`.node[data-node-id="${id}"] .node-dot`);
        return Number(dot?.getAttribute("cx"));
      });
      const ranks = line.map((id) => rank.get(id) ?? -1);
      const sortedByRank = [...xs].sort((a, b) => a - b);
      expect(ranks).toEqual([...ranks].sort((a, b) => a - b));
      expect(xs).toEqual(sortedByRank);
    }
  });

  it("stars important events and double-rings emphasized ones", () => {
    const host = render();
    const important = service.data.structure.important.filter(
      (e) => e.top_content || e.top_structure,
    );
    expect(important.length).toBeGreaterThan(0);
    for (const event of important) {
      const group = host.querySelector(`.node[data-node-id="${event.id}"]`);
      expect(group, event.id).not.toBeNull();
      expect(group!.querySelector(".badge.star")).not.toBeNull();
      const ring = group!.querySelector(".emphasis-ring");
      if (event.emphasized) {
        expect(ring).not.toBeNull();
      } else {
        expect(ring).toBeNull();
      }
    }
    // non-important nodes carry no star
    const importantIds = new Set(important.map((e) => e.id));
    for (const id of service.data.map.nodes) {
      if (!importantIds.has(id)) {
        const group = host.querySelector(`.node[data-node-id="${id}"]`);
        expect(group!.querySelector(".badge.star")).toBeNull();
      }
    }
  });

  it("shows assigned storyline names in lane headers, marking the main one", () => {
    const host = render();
    const headers = [...host.querySelectorAll(".lane-header")].map((h) => h.textContent);
    for (const name of service.data.structure.storylines) {
      expect(headers.some((h) => h?.includes(name.name))).toBe(true);
    }
    const main = service.data.structure.storylines[service.data.map.main_storyline];
    expect(headers.some((h) => h?.startsWith("★") && h.includes(main.name))).toBe(true);
  });

  it("click on an edge reports its endpoints", () => {
    let selected: [string, string] | null = null;
    const host = render((from, to) => {
      selected = [from, to];
    });
    const edge = host.querySelector<SVGPathElement>(".edge");
    expect(edge).not.toBeNull();
    edge!.dispatchEvent(new MouseEvent("click", { bubbles: true }));
    const expected = edge!.getAttribute("data-edge")!.split("->");
    expect(selected).toEqual(expected);
  });
});
