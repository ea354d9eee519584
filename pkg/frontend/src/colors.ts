/** Cluster color palette; noise is always gray. */

const PALETTE = [
  "#4e79a7",
  "#f28e2b",
  "#59a14f",
  "#e15759",
  "#b07aa1",
  "#76b7b2",
  "#edc948",
  "#ff9da7",
  "#9c755f",
  "#bab0ac",
];

export const NOISE_COLOR = "#999999";

export function clusterColor(cluster: number): string {
  if (cluster < 0) return NOISE_COLOR;
  return PALETTE[cluster % PALETTE.length];
}
