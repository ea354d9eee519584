"""Independent brute-force oracles used to pin expected test values.

Everything here is written from definitions, deliberately avoiding the
library's own code paths: plain-Python Shapley from the subset formula,
iterative edge-removal transitive reduction, exhaustive path-cover
enumeration, and a threshold-sweep density clustering that rebuilds the
cluster tree by scanning connected components at every distance level.
"""
from __future__ import annotations

import itertools
import math
from collections import defaultdict

import numpy as np


# ---------------------------------------------------------------- Shapley
def shapley_by_subsets(n_players: int, value_fn) -> list[float]:
    """phi_i = sum over S not containing i of |S|!(n-|S|-1)!/n! * gain."""
    players = list(range(n_players))
    phi = [0.0] * n_players
    n_fact = math.factorial(n_players)
    for i in players:
        others = [p for p in players if p != i]
        for r in range(len(others) + 1):
            for combo in itertools.combinations(others, r):
                weight = math.factorial(r) * math.factorial(n_players - r - 1) / n_fact
                gain = value_fn(set(combo) | {i}) - value_fn(set(combo))
                phi[i] += weight * gain
    return phi


def cosine_game_value(subset: set[int], weights, target_components, target_norm) -> float:
    """v(S) for the token-cosine game, computed longhand."""
    dot = sum(weights[i] * target_components[i] for i in subset)
    norm = math.sqrt(sum(weights[i] ** 2 for i in subset))
    if norm == 0 or target_norm == 0:
        return 0.0
    return max(0.0, dot / (norm * target_norm))


# ------------------------------------------------------- graph reductions
def reachable_without(edges: set[tuple[int, int]], banned: tuple[int, int], src, dst) -> bool:
    adj = defaultdict(set)
    for u, v in edges:
        if (u, v) != banned:
            adj[u].add(v)
    stack, seen = [src], set()
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v == dst:
                return True
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return False


def reduction_by_removal(edges: set[tuple[int, int]]) -> set[tuple[int, int]]:
    """Remove edges one at a time while reachability survives.

    For DAGs the minimum equivalent graph is unique, so order does not
    matter; iterating to a fixed point is a valid (slow) oracle.
    """
    current = set(edges)
    changed = True
    while changed:
        changed = False
        for e in sorted(current):
            if reachable_without(current, e, e[0], e[1]):
                current.remove(e)
                changed = True
                break
    return current


def all_path_covers_best_weight(n: int, weighted_edges: dict[tuple[int, int], float]) -> float:
    """Max total weight over every vertex-disjoint path cover of n nodes.

    Enumerates every subset of edges forming a matching in the split
    bipartite view (out-degree <= 1 and in-degree <= 1), which is exactly
    the set of path covers of a DAG.
    """
    edges = sorted(weighted_edges)
    best = 0.0
    for r in range(len(edges) + 1):
        for combo in itertools.combinations(edges, r):
            outs = [u for u, _ in combo]
            ins = [v for _, v in combo]
            if len(set(outs)) != len(outs) or len(set(ins)) != len(ins):
                continue
            best = max(best, sum(weighted_edges[e] for e in combo))
    return best


# --------------------------------------------------- density clustering
def sweep_density_clustering(dist: np.ndarray, min_cluster_size: int, min_samples: int):
    """Density clustering rebuilt by scanning every distance threshold.

    Returns labels (-1 noise). Builds candidate clusters as connected
    components of the mutual-reachability graph at each threshold, scores
    their excess of mass, and picks the best antichain bottom-up -- the
    same semantics as the condensed-tree algorithm, derived independently.
    """
    n = dist.shape[0]
    k = min(min_samples, n)
    core = np.sort(dist, axis=1)[:, k - 1]
    mreach = np.maximum(dist, np.maximum(core[:, None], core[None, :]))
    np.fill_diagonal(mreach, 0.0)

    levels = sorted({float(mreach[i, j]) for i in range(n) for j in range(i + 1, n)})

    def components_below(threshold: float) -> list[frozenset[int]]:
        """Connected components using only edges strictly below threshold."""
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i in range(n):
            for j in range(i + 1, n):
                if mreach[i, j] < threshold:
                    parent[find(i)] = find(j)
        groups = defaultdict(set)
        for i in range(n):
            groups[find(i)].add(i)
        return [frozenset(g) for g in groups.values()]

    lam_max = 1e12

    def lam(d: float) -> float:
        return lam_max if d <= 0 else min(1.0 / d, lam_max)

    # Walk thresholds downward; a "cluster" is a component of size >=
    # min_cluster_size at its birth level. Track per-cluster point exits.
    clusters: dict[int, dict] = {}
    next_id = 0
    top = levels[-1] if levels else 0.0
    root_members = frozenset(range(n))
    clusters[next_id] = {
        "members": root_members,
        "birth": 0.0,
        "parent": None,
        "children": [],
        "exits": {},
    }
    active = {root_members: 0}
    next_id += 1

    for level in reversed(levels):
        comps = components_below(level)
        new_active: dict[frozenset, int] = {}
        for members, cid in active.items():
            inside = [c for c in comps if c <= members]
            big = sorted(
                (c for c in inside if len(c) >= min_cluster_size), key=sorted
            )
            small_points = set(members) - set().union(*big) if big else set(members)
            if len(big) >= 2:
                for child in big:
                    clusters[next_id] = {
                        "members": child,
                        "birth": lam(level),
                        "parent": cid,
                        "children": [],
                        "exits": {},
                    }
                    clusters[cid]["children"].append(next_id)
                    new_active[child] = next_id
                    next_id += 1
                for p in small_points:
                    clusters[cid]["exits"][p] = lam(level)
            elif len(big) == 1:
                for p in small_points:
                    clusters[cid]["exits"][p] = lam(level)
                new_active[big[0]] = cid
            else:
                for p in members:
                    clusters[cid]["exits"][p] = lam(level)
        active = new_active

    for members, cid in active.items():  # everything left exits at the end
        for p in members:
            clusters[cid]["exits"].setdefault(p, lam_max)

    def stability(cid: int) -> float:
        c = clusters[cid]
        total = sum(l - c["birth"] for l in c["exits"].values())
        for ch in c["children"]:
            total += (clusters[ch]["birth"] - c["birth"]) * len(clusters[ch]["members"])
        return total

    chosen: dict[int, bool] = {}
    subtree: dict[int, float] = {}
    for cid in sorted(clusters, reverse=True):
        if cid == 0:
            continue
        kids = clusters[cid]["children"]
        child_sum = sum(subtree[k] for k in kids)
        if not kids or stability(cid) >= child_sum:
            chosen[cid] = True
            subtree[cid] = stability(cid)
        else:
            chosen[cid] = False
            subtree[cid] = child_sum

    selected: list[int] = []
    stack = list(clusters[0]["children"])
    while stack:
        cid = stack.pop()
        if chosen[cid]:
            selected.append(cid)
        else:
            stack.extend(clusters[cid]["children"])

    labels = np.full(n, -1, dtype=int)
    if not selected:
        labels[:] = 0
        return labels
    for cid in selected:  # members at birth == every point below the cluster
        for p in clusters[cid]["members"]:
            labels[p] = cid
    # renumber by first member
    remap: dict[int, int] = {}
    for p in range(n):
        c = labels[p]
        if c != -1 and c not in remap:
            remap[c] = len(remap)
    for p in range(n):
        if labels[p] != -1:
            labels[p] = remap[labels[p]]
    return labels


# ----------------------------------------------------------- TF-IDF maths
def tfidf_weight(tf: int, n_docs: int, df: int) -> float:
    return math.log(1 + tf) * math.log(n_docs / df)


def eq1_score(term_count, cluster_total, n_docs, df, n_clusters, cf) -> float:
    tf = term_count / cluster_total
    return tf * math.log(n_docs / df) * math.log(n_clusters / cf)
