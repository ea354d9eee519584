"""Density-based hierarchical clustering over a precomputed distance matrix.

Implements the classic HDBSCAN pipeline in plain numpy:

1. core distances (distance to the k-th nearest neighbor, self included),
2. mutual-reachability distances max(core_i, core_j, d_ij),
3. minimum spanning tree of the mutual-reachability graph (Prim),
4. single-linkage hierarchy from the sorted MST edges,
5. condensed cluster tree for a minimum cluster size,
6. stability-based (excess-of-mass) flat cluster selection.

Everything is deterministic: ties in the MST and the hierarchy resolve to
the lowest point index. When the condensed tree offers no cluster besides
the root (all points merge as one dense group), the root itself is used as
a single cluster instead of labelling everything noise.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

# Lambda (1/distance) cap standing in for "infinite density" at distance 0.
LAMBDA_MAX = 1e12

NOISE = -1


def core_distances(dist: np.ndarray, min_samples: int) -> np.ndarray:
    """Distance to the min_samples-th nearest neighbor, counting the point
    itself as its own first neighbor (so min_samples=1 gives 0)."""
    n = dist.shape[0]
    k = min(min_samples, n)
    return np.sort(dist, axis=1)[:, k - 1]


def mutual_reachability(dist: np.ndarray, min_samples: int) -> np.ndarray:
    core = core_distances(dist, min_samples)
    mreach = np.maximum(dist, np.maximum(core[:, None], core[None, :]))
    np.fill_diagonal(mreach, 0.0)
    return mreach


def prim_mst(weights: np.ndarray) -> np.ndarray:
    """MST edge list (u, v, w) of a dense weighted graph, rooted at node 0.

    Ties on the frontier resolve to the lowest node index, which makes the
    tree (and everything downstream) independent of float noise ordering.
    """
    n = weights.shape[0]
    edges = np.empty((n - 1, 3))
    in_tree = np.zeros(n, dtype=bool)
    in_tree[0] = True
    best = weights[0].copy()
    best[0] = np.inf
    parent = np.zeros(n, dtype=np.int64)
    for i in range(n - 1):
        j = int(np.argmin(best))
        edges[i] = (parent[j], j, best[j])
        in_tree[j] = True
        best[j] = np.inf
        closer = (weights[j] < best) & ~in_tree
        best[closer] = weights[j][closer]
        parent[closer] = j
    return edges


def single_linkage(mst_edges: np.ndarray, n: int) -> np.ndarray:
    """Hierarchy rows (left, right, distance, size); merged node i has id n+i."""
    order = np.lexsort((mst_edges[:, 1], mst_edges[:, 0], mst_edges[:, 2]))
    parent = np.arange(2 * n - 1, dtype=np.int64)
    size = np.ones(2 * n - 1, dtype=np.int64)

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    hierarchy = np.empty((n - 1, 4))
    for row, idx in enumerate(order):
        u, v, w = mst_edges[idx]
        ru, rv = find(int(u)), find(int(v))
        new = n + row
        hierarchy[row] = (ru, rv, w, size[ru] + size[rv])
        size[new] = size[ru] + size[rv]
        parent[ru] = parent[rv] = new
    return hierarchy


@dataclass
class CondensedTree:
    """Condensed cluster tree: per-cluster birth lambdas and exit records.

    point_cluster[p] is the cluster a point finally fell out of;
    point_lambda[p] the lambda at which it fell. Cluster 0 is the root.
    """

    births: dict[int, float]
    sizes: dict[int, int]
    children: dict[int, list[int]]
    parent: dict[int, int]
    point_cluster: np.ndarray
    point_lambda: np.ndarray
    cluster_birth_records: list[tuple[int, int, float, int]]  # parent, child, lam, size


def condense_tree(hierarchy: np.ndarray, n: int, min_cluster_size: int) -> CondensedTree:
    root_node = 2 * n - 2

    def node_size(node: int) -> int:
        return 1 if node < n else int(hierarchy[node - n, 3])

    def node_points(node: int) -> list[int]:
        stack, pts = [node], []
        while stack:
            x = stack.pop()
            if x < n:
                pts.append(x)
            else:
                stack.append(int(hierarchy[x - n, 0]))
                stack.append(int(hierarchy[x - n, 1]))
        return pts

    births = {0: 0.0}
    sizes = {0: n}
    children: dict[int, list[int]] = {0: []}
    parent_map: dict[int, int] = {}
    point_cluster = np.zeros(n, dtype=np.int64)
    point_lambda = np.zeros(n)
    birth_records: list[tuple[int, int, float, int]] = []
    next_cluster = 1

    queue = deque([(root_node, 0)])
    while queue:
        node, cluster = queue.popleft()
        left, right, dist, _ = hierarchy[node - n]
        left, right = int(left), int(right)
        lam = LAMBDA_MAX if dist <= 0 else min(1.0 / dist, LAMBDA_MAX)
        big = [c for c in (left, right) if node_size(c) >= min_cluster_size]
        small = [c for c in (left, right) if node_size(c) < min_cluster_size]
        if len(big) == 2:
            for child in sorted(big):
                cid = next_cluster
                next_cluster += 1
                births[cid] = lam
                sizes[cid] = node_size(child)
                children[cid] = []
                children[cluster].append(cid)
                parent_map[cid] = cluster
                birth_records.append((cluster, cid, lam, node_size(child)))
                queue.append((child, cid))
        elif len(big) == 1:
            for p in node_points(small[0]):
                point_cluster[p] = cluster
                point_lambda[p] = lam
            queue.append((big[0], cluster))
        else:
            for c in (left, right):
                for p in node_points(c):
                    point_cluster[p] = cluster
                    point_lambda[p] = lam

    return CondensedTree(
        births=births,
        sizes=sizes,
        children=children,
        parent=parent_map,
        point_cluster=point_cluster,
        point_lambda=point_lambda,
        cluster_birth_records=birth_records,
    )


def cluster_stability(tree: CondensedTree) -> dict[int, float]:
    """Excess of mass: sum over exits of (exit lambda - birth lambda)."""
    stability = {c: 0.0 for c in tree.births}
    for p, cluster in enumerate(tree.point_cluster):
        stability[int(cluster)] += tree.point_lambda[p] - tree.births[int(cluster)]
    for parent, _child, lam, size in tree.cluster_birth_records:
        stability[parent] += (lam - tree.births[parent]) * size
    return stability


def select_clusters_eom(tree: CondensedTree) -> list[int]:
    """Flat clusters maximizing total stability, root excluded.

    Returns selected cluster ids in increasing id order; empty when the
    condensed tree has no cluster besides the root.
    """
    stability = cluster_stability(tree)
    ids = sorted(c for c in tree.births if c != 0)
    subtree: dict[int, float] = {}
    wins: dict[int, bool] = {}
    for c in reversed(ids):
        kids = tree.children.get(c, [])
        child_sum = sum(subtree[k] for k in kids)
        if not kids or stability[c] >= child_sum:
            wins[c] = True
            subtree[c] = stability[c]
        else:
            wins[c] = False
            subtree[c] = child_sum
    selected: list[int] = []
    stack = sorted(tree.children.get(0, []), reverse=True)
    while stack:
        c = stack.pop()
        if wins[c]:
            selected.append(c)
        else:
            stack.extend(sorted(tree.children.get(c, []), reverse=True))
    return sorted(selected)


def density_cluster_labels(dist: np.ndarray, min_cluster_size: int, min_samples: int) -> np.ndarray:
    """Flat cluster labels from the full density pipeline.

    Returns an int array with NOISE (-1) for unclustered points; clusters
    are renumbered 0..k-1 by their lowest member index. Falls back to a
    single all-points cluster when the condensed tree never splits.
    """
    n = dist.shape[0]
    if n < min_cluster_size:
        raise ValueError(
            f"need at least min_cluster_size={min_cluster_size} points, got {n}"
        )
    mreach = mutual_reachability(dist, min_samples)
    mst = prim_mst(mreach)
    hierarchy = single_linkage(mst, n)
    tree = condense_tree(hierarchy, n, min_cluster_size)
    selected = select_clusters_eom(tree)

    labels = np.full(n, NOISE, dtype=np.int64)
    if not selected:
        labels[:] = 0
        return labels
    selected_set = set(selected)
    for p in range(n):
        c: int | None = int(tree.point_cluster[p])
        while c is not None:
            if c in selected_set:
                labels[p] = c
                break
            c = tree.parent.get(c)

    # renumber by first member index
    remap: dict[int, int] = {}
    for p in range(n):
        c = int(labels[p])
        if c != NOISE and c not in remap:
            remap[c] = len(remap)
    for p in range(n):
        if labels[p] != NOISE:
            labels[p] = remap[int(labels[p])]
    return labels
