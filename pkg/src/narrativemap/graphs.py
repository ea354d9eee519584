"""Graph primitives for map construction: matching and transitive reduction."""
from __future__ import annotations

import numpy as np
from scipy.optimize import linear_sum_assignment


def max_weight_matching(weights: np.ndarray) -> list[tuple[int, int]]:
    """Maximum-weight bipartite matching on a dense nonneg weight matrix.

    Entries <= 0 mark inadmissible pairs. Solved as an assignment problem:
    zero-padding lets the solver leave nodes effectively unmatched, and
    because every admissible weight is strictly positive the assignment's
    positive entries form the maximum-weight matching.

    Returned pairs are sorted by (row, col). A microscopic bonus favoring
    low (row, col) indices breaks ties between equal-weight matchings
    deterministically without disturbing genuinely different optima.
    """
    w = np.asarray(weights, dtype=float)
    n, m = w.shape
    if n == 0 or m == 0:
        return []
    padded = np.where(w > 0, w, 0.0)
    rows = np.arange(n)[:, None]
    cols = np.arange(m)[None, :]
    denom = max(n, m) + 1.0
    bonus = 1e-11 * ((denom - rows) / denom + (denom - cols) / denom**2)
    padded = np.where(padded > 0, padded + bonus, 0.0)
    row_ind, col_ind = linear_sum_assignment(padded, maximize=True)
    pairs = [
        (int(r), int(c)) for r, c in zip(row_ind, col_ind) if w[r, c] > 0
    ]
    pairs.sort()
    return pairs


def reachable(adjacency: dict[int, set[int]], src: int, dst: int) -> bool:
    """Is there a directed path (length >= 1) from src to dst?"""
    stack = [src]
    seen = set()
    while stack:
        u = stack.pop()
        for v in adjacency.get(u, ()):
            if v == dst:
                return True
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return False


def transitive_closure(nodes: list[int], edges: set[tuple[int, int]]) -> dict[int, set[int]]:
    """node -> set of nodes reachable by paths of length >= 1 (DAG input)."""
    adjacency: dict[int, set[int]] = {u: set() for u in nodes}
    for u, v in edges:
        adjacency[u].add(v)
    closure: dict[int, set[int]] = {}

    def visit(u: int) -> set[int]:
        if u in closure:
            return closure[u]
        out: set[int] = set()
        closure[u] = out  # DAG: no back-edges, safe to publish early
        for v in adjacency[u]:
            out.add(v)
            out |= visit(v)
        return out

    for u in nodes:
        visit(u)
    return closure


def transitive_reduction(nodes: list[int], edges: set[tuple[int, int]]) -> set[tuple[int, int]]:
    """Unique minimal edge set of a DAG with the same reachability.

    An edge (u, v) is redundant exactly when some other successor of u
    already reaches v; for DAGs removing all redundant edges at once is
    sound and yields the minimum equivalent graph.
    """
    closure = transitive_closure(nodes, edges)
    adjacency: dict[int, set[int]] = {u: set() for u in nodes}
    for u, v in edges:
        adjacency[u].add(v)
    kept = set()
    for u, v in edges:
        implied = any(v in closure[w] for w in adjacency[u] if w != v)
        if not implied:
            kept.add((u, v))
    return kept


def implied_edges(nodes: list[int], edges: set[tuple[int, int]]) -> set[tuple[int, int]]:
    """Edges (u, v) for which a u->v path of length >= 2 exists."""
    return edges - transitive_reduction(nodes, edges)
