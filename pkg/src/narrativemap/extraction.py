"""Narrative map extraction.

Stages, each exactly testable on its own:

1. build_candidate_graph -- all forward-in-time pairs above the coherence
   floor, fan-out capped per node;
2. select_nodes          -- greedy-with-swap node selection maximizing
   representativeness under a per-cluster coverage constraint;
3. link_storylines       -- maximum-weight bipartite matching turning the
   induced subgraph into vertex-disjoint temporal paths;
4. finalize_map          -- main-storyline choice, cross-storyline support
   edges, and redundancy removal via transitive reduction.

`extract` composes the four and is fully deterministic for fixed inputs.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .clustering import ClusterModel
from .coherence import CoherenceParams, CoherenceScore, coherence_components, decay_rate
from .corpus import Corpus
from .graphs import implied_edges, max_weight_matching
from .vectorize import CorpusVectors, cosine

FANOUT_CAP = 30
MAJOR_CLUSTER_MASS = 0.05
MATCH_WEIGHT_EPS = 1e-9
_SWAP_TOL = 1e-12
_MAX_SWAP_ROUNDS = 500


class ExtractionError(ValueError):
    pass


class MapInvariantError(RuntimeError):
    """An extracted map violated its own structural invariants (a bug)."""


class ExtractionCancelled(RuntimeError):
    pass


@dataclass(frozen=True)
class ExtractionParams:
    map_size: int = 20                 # K, number of selected events
    coverage: float = 0.5              # sigma in [0, 1]
    temporal_sensitivity: float = 0.0  # user slider in [0, 1]
    min_edge_coherence: float = 0.05   # theta_min
    cross_edge_quantile: float = 0.85
    w_c: float = 0.5

    def __post_init__(self):
        if self.map_size < 2:
            raise ExtractionError("map_size must be >= 2")
        if not 0.0 <= self.coverage <= 1.0:
            raise ExtractionError("coverage must lie in [0, 1]")
        if not 0.0 <= self.temporal_sensitivity <= 1.0:
            raise ExtractionError("temporal_sensitivity must lie in [0, 1]")
        if not 0.0 <= self.min_edge_coherence <= 1.0:
            raise ExtractionError("min_edge_coherence must lie in [0, 1]")
        if not 0.0 < self.cross_edge_quantile < 1.0:
            raise ExtractionError("cross_edge_quantile must lie in (0, 1)")

    def coherence_params(self) -> CoherenceParams:
        return CoherenceParams(w_c=self.w_c, lambda_t=decay_rate(self.temporal_sensitivity))

    def to_jsonable(self) -> dict:
        return {
            "map_size": self.map_size,
            "coverage": self.coverage,
            "temporal_sensitivity": self.temporal_sensitivity,
            "min_edge_coherence": self.min_edge_coherence,
            "cross_edge_quantile": self.cross_edge_quantile,
            "w_c": self.w_c,
        }

    @classmethod
    def from_jsonable(cls, obj: dict) -> "ExtractionParams":
        return cls(**{k: obj[k] for k in cls().to_jsonable() if k in obj})


@dataclass
class CandidateGraph:
    """Dense candidate edge structure over the whole corpus."""

    admissible: np.ndarray   # (N, N) bool, forward in time only
    combined: np.ndarray
    text: np.ndarray
    cluster: np.ndarray
    temporal: np.ndarray
    share: np.ndarray
    timestamps: np.ndarray = field(repr=False)

    def score(self, i: int, j: int) -> CoherenceScore:
        return CoherenceScore(
            text_sim=float(self.text[i, j]),
            cluster_sim=float(self.cluster[i, j]),
            temporal_factor=float(self.temporal[i, j]),
            combined=float(self.combined[i, j]),
            cluster_share=float(self.share[i, j]),
        )

    def successors(self, i: int) -> np.ndarray:
        return np.flatnonzero(self.admissible[i])


@dataclass
class MapEdge:
    source: str
    target: str
    kind: str  # "storyline" | "support"
    score: CoherenceScore

    def to_jsonable(self) -> dict:
        return {
            "from": self.source,
            "to": self.target,
            "kind": self.kind,
            "coherence": self.score.to_jsonable(),
        }


@dataclass
class NarrativeMap:
    node_ids: list[str]
    edges: list[MapEdge]
    storylines: list[list[str]]
    main_storyline: int
    params: ExtractionParams
    flags: list[str] = field(default_factory=list)

    def edge(self, source: str, target: str) -> MapEdge | None:
        for e in self.edges:
            if e.source == source and e.target == target:
                return e
        return None

    def storyline_of(self, doc_id: str) -> int:
        for idx, line in enumerate(self.storylines):
            if doc_id in line:
                return idx
        raise KeyError(f"document {doc_id!r} is not a map node")

    def to_jsonable(self) -> dict:
        return {
            "schema_version": 1,
            "nodes": list(self.node_ids),
            "edges": [e.to_jsonable() for e in self.edges],
            "storylines": [list(line) for line in self.storylines],
            "main_storyline": self.main_storyline,
            "params": self.params.to_jsonable(),
            "flags": list(self.flags),
        }

    @classmethod
    def from_jsonable(cls, obj: dict) -> "NarrativeMap":
        edges = [
            MapEdge(
                source=e["from"],
                target=e["to"],
                kind=e["kind"],
                score=CoherenceScore(**e["coherence"]),
            )
            for e in obj["edges"]
        ]
        return cls(
            node_ids=list(obj["nodes"]),
            edges=edges,
            storylines=[list(line) for line in obj["storylines"]],
            main_storyline=int(obj["main_storyline"]),
            params=ExtractionParams.from_jsonable(obj.get("params", {})),
            flags=list(obj.get("flags", [])),
        )


def build_candidate_graph(
    corpus: Corpus,
    vectors: CorpusVectors,
    model: ClusterModel,
    params: ExtractionParams,
) -> CandidateGraph:
    """Forward-in-time pairs with combined coherence >= the floor, keeping
    at most FANOUT_CAP successors per node (highest coherence first)."""
    timestamps = np.array([d.timestamp.timestamp() for d in corpus])
    parts = coherence_components(vectors, model, timestamps, params.coherence_params())
    forward = timestamps[:, None] < timestamps[None, :]
    admissible = forward & (parts["combined"] >= params.min_edge_coherence)

    n = len(corpus)
    for i in range(n):
        succ = np.flatnonzero(admissible[i])
        if len(succ) > FANOUT_CAP:
            order = sorted(succ, key=lambda j: (-parts["combined"][i, j], j))
            admissible[i, order[FANOUT_CAP:]] = False

    return CandidateGraph(
        admissible=admissible,
        combined=parts["combined"],
        text=parts["text"],
        cluster=parts["cluster"],
        temporal=parts["temporal"],
        share=parts["share"],
        timestamps=timestamps,
    )


def representativeness(vectors: CorpusVectors, model: ClusterModel) -> np.ndarray:
    """rep(i) = cosine to the corpus centroid + best cluster membership."""
    centroid = vectors.vectors.mean(axis=0)
    n = vectors.vectors.shape[0]
    rep = np.array([cosine(vectors.vectors[i], centroid) for i in range(n)])
    return rep + model.membership.max(axis=1)


def _coverage_state(model: ClusterModel, params: ExtractionParams):
    n = len(model.doc_ids)
    majors = []
    required = []
    for c in model.cluster_ids:
        mass = model.size(c) / n
        if mass >= MAJOR_CLUSTER_MASS:
            req = params.coverage * params.map_size * mass
            if req > 0:
                majors.append(c)
                required.append(req)
    return majors, np.array(required)


def select_nodes(
    vectors: CorpusVectors, model: ClusterModel, params: ExtractionParams
) -> tuple[list[int], list[str]]:
    """Greedy-with-swap selection of K nodes under the coverage constraint.

    Start from the top-K by representativeness; swap toward feasibility
    (maximizing the worst covered-mass ratio), then swap for objective
    while staying feasible. When the constraint cannot be met the demand
    is uniformly scaled down by the best reachable ratio and the map is
    flagged "coverage_relaxed".
    """
    n = vectors.vectors.shape[0]
    K = params.map_size
    if K > n:
        raise ExtractionError(f"map_size {K} exceeds corpus size {n}")
    rep = representativeness(vectors, model)
    order = np.lexsort((np.arange(n), -rep))
    selected = [int(i) for i in order[:K]]
    flags: list[str] = []

    majors, required = _coverage_state(model, params)
    if len(majors) == 0:
        return sorted(selected), flags

    mem = model.membership[:, [model.cluster_ids.index(c) for c in majors]]
    mass = mem[selected].sum(axis=0)

    def ratio(masses: np.ndarray) -> float:
        return float(np.min(masses / required))

    in_set = np.zeros(n, dtype=bool)
    in_set[selected] = True

    # repair phase: raise the bottleneck covered-mass ratio toward 1
    for _ in range(_MAX_SWAP_ROUNDS):
        current = ratio(mass)
        if current >= 1.0:
            break
        best = None
        for i in selected:
            for j in range(n):
                if in_set[j]:
                    continue
                cand = mass - mem[i] + mem[j]
                r = ratio(cand)
                key = (r, rep[j] - rep[i], -j, -i)
                if best is None or key > best[0]:
                    best = (key, i, j, cand)
        if best is None or best[0][0] <= current + _SWAP_TOL:
            break
        _, i, j, cand = best
        selected.remove(i)
        selected.append(int(j))
        in_set[i] = False
        in_set[j] = True
        mass = cand

    feasible_ratio = min(1.0, ratio(mass))
    if feasible_ratio < 1.0 - 1e-9:
        flags.append(f"coverage_relaxed factor={feasible_ratio:.6f}")
    floor = feasible_ratio - 1e-9

    # improvement phase: raise total representativeness without dropping
    # below the achieved coverage level
    for _ in range(_MAX_SWAP_ROUNDS):
        best = None
        for i in selected:
            for j in range(n):
                if in_set[j]:
                    continue
                gain = rep[j] - rep[i]
                if gain <= _SWAP_TOL:
                    continue
                cand = mass - mem[i] + mem[j]
                if ratio(cand) < floor:
                    continue
                key = (gain, -j, -i)
                if best is None or key > best[0]:
                    best = (key, i, j, cand)
        if best is None:
            break
        _, i, j, cand = best
        selected.remove(i)
        selected.append(int(j))
        in_set[i] = False
        in_set[j] = True
        mass = cand

    return sorted(selected), flags


def link_storylines(nodes: list[int], graph: CandidateGraph) -> list[list[int]]:
    """Vertex-disjoint temporal paths over *nodes* via max-weight matching.

    Each node contributes an out-copy and an in-copy to a bipartite graph;
    an admissible candidate edge (i, j) becomes a pair with weight
    ln(coherence + eps) - ln(eps), strictly positive and monotone in
    coherence, so the matching prefers more links first and stronger links
    second. Isolated nodes become singleton storylines.
    """
    nodes = sorted(nodes)
    k = len(nodes)
    weights = np.zeros((k, k))
    for a, i in enumerate(nodes):
        for b, j in enumerate(nodes):
            if graph.admissible[i, j]:
                c = graph.combined[i, j]
                w = np.log(c + MATCH_WEIGHT_EPS) - np.log(MATCH_WEIGHT_EPS)
                weights[a, b] = max(w, 0.0)
    pairs = max_weight_matching(weights)

    succ: dict[int, int] = {}
    has_pred: set[int] = set()
    for a, b in pairs:
        succ[nodes[a]] = nodes[b]
        has_pred.add(nodes[b])

    storylines = []
    for start in nodes:
        if start in has_pred:
            continue
        path = [start]
        while path[-1] in succ:
            path.append(succ[path[-1]])
        storylines.append(path)
    storylines.sort(key=lambda p: p[0])  # corpus order == (timestamp, id)
    return storylines


def _storyline_edges(storylines: list[list[int]]) -> list[tuple[int, int]]:
    out = []
    for line in storylines:
        out.extend(zip(line, line[1:]))
    return out


def finalize_map(
    corpus: Corpus,
    graph: CandidateGraph,
    storylines: list[list[int]],
    params: ExtractionParams,
    flags: list[str] | None = None,
) -> NarrativeMap:
    """Support edges, redundancy removal, and main-storyline choice.

    Support candidates are induced admissible non-storyline pairs at or
    above the cross-edge quantile of all induced pair coherences. The
    transitive reduction never removes storyline edges; when a kept
    storyline edge is itself implied by a support path, the weakest
    support edge on that path is dropped instead until nothing redundant
    remains.
    """
    nodes = sorted({i for line in storylines for i in line})
    story_edges = _storyline_edges(storylines)
    story_set = set(story_edges)

    induced = [
        (i, j)
        for i in nodes
        for j in nodes
        if graph.admissible[i, j]
    ]
    support: set[tuple[int, int]] = set()
    if induced:
        values = np.array([graph.combined[i, j] for (i, j) in induced])
        threshold = float(np.quantile(values, params.cross_edge_quantile))
        support = {
            (i, j)
            for (i, j) in induced
            if (i, j) not in story_set and graph.combined[i, j] >= threshold
        }

    support -= implied_edges(nodes, story_set | support)
    while True:
        all_edges = story_set | support
        implied = implied_edges(nodes, all_edges)
        implied_story = sorted(e for e in implied if e in story_set)
        if not implied_story:
            break
        u, v = implied_story[0]
        path = _find_path(nodes, all_edges - {(u, v)}, u, v)
        on_path = [e for e in zip(path, path[1:]) if e in support]
        victim = min(on_path, key=lambda e: (graph.combined[e[0], e[1]], e))
        support.remove(victim)

    def edge_obj(i: int, j: int, kind: str) -> MapEdge:
        return MapEdge(
            source=corpus[i].id, target=corpus[j].id, kind=kind, score=graph.score(i, j)
        )

    edges = [edge_obj(i, j, "storyline") for (i, j) in story_edges]
    edges.extend(edge_obj(i, j, "support") for (i, j) in sorted(support))
    edges.sort(key=lambda e: (e.source, e.target))

    def storyline_rank(idx_line: tuple[int, list[int]]):
        _, line = idx_line
        total = sum(graph.combined[i, j] for i, j in zip(line, line[1:]))
        return (-len(line), -total, graph.timestamps[line[0]], line[0])

    main_idx = min(enumerate(storylines), key=storyline_rank)[0]

    narrative = NarrativeMap(
        node_ids=[corpus[i].id for i in nodes],
        edges=edges,
        storylines=[[corpus[i].id for i in line] for line in storylines],
        main_storyline=main_idx,
        params=params,
        flags=list(flags or []),
    )
    validate_map(narrative, corpus)
    return narrative


def _find_path(
    nodes: list[int], edges: set[tuple[int, int]], src: int, dst: int
) -> list[int]:
    adjacency: dict[int, list[int]] = {u: [] for u in nodes}
    for u, v in sorted(edges):
        adjacency[u].append(v)
    stack = [(src, [src])]
    while stack:
        u, path = stack.pop()
        for v in reversed(adjacency[u]):
            if v == dst:
                return path + [v]
            stack.append((v, path + [v]))
    raise MapInvariantError(f"no implying path from {src} to {dst}")


def validate_map(narrative: NarrativeMap, corpus: Corpus) -> None:
    """Check every structural invariant; raises MapInvariantError."""
    ids = narrative.node_ids
    id_set = set(ids)
    if len(ids) != len(id_set):
        raise MapInvariantError("duplicate map nodes")
    if len(ids) != narrative.params.map_size:
        raise MapInvariantError(
            f"map has {len(ids)} nodes, expected map_size={narrative.params.map_size}"
        )
    times = {i: corpus[i].timestamp for i in ids}
    for e in narrative.edges:
        if e.source not in id_set or e.target not in id_set:
            raise MapInvariantError(f"edge {e.source}->{e.target} leaves the node set")
        if times[e.source] >= times[e.target]:
            raise MapInvariantError(
                f"edge {e.source}->{e.target} does not go forward in time"
            )

    covered: set[str] = set()
    story_pairs = set()
    for line in narrative.storylines:
        if not line:
            raise MapInvariantError("empty storyline")
        for doc_id in line:
            if doc_id in covered:
                raise MapInvariantError(f"node {doc_id} appears in two storylines")
            covered.add(doc_id)
        story_pairs.update(zip(line, line[1:]))
    if covered != id_set:
        raise MapInvariantError("storylines do not partition the node set")
    edge_pairs = {(e.source, e.target): e.kind for e in narrative.edges}
    for pair in story_pairs:
        if edge_pairs.get(pair) != "storyline":
            raise MapInvariantError(f"storyline pair {pair} missing from edge list")
    for pair, kind in edge_pairs.items():
        if kind == "storyline" and pair not in story_pairs:
            raise MapInvariantError(f"storyline edge {pair} not on any storyline")

    index = {doc_id: k for k, doc_id in enumerate(ids)}
    int_edges = {(index[a], index[b]) for (a, b) in edge_pairs}
    redundant = implied_edges(list(index.values()), int_edges)
    if redundant:
        raise MapInvariantError(f"{len(redundant)} transitively implied edges remain")
    if not 0 <= narrative.main_storyline < len(narrative.storylines):
        raise MapInvariantError("main_storyline index out of range")


ProgressFn = Callable[[float, str], None]
CancelFn = Callable[[], bool]


def extract(
    corpus: Corpus,
    vectors: CorpusVectors,
    model: ClusterModel,
    params: ExtractionParams,
    progress: ProgressFn | None = None,
    cancelled: CancelFn | None = None,
) -> NarrativeMap:
    """Full extraction pipeline; deterministic for fixed inputs."""

    def step(fraction: float, stage: str):
        if cancelled is not None and cancelled():
            raise ExtractionCancelled(stage)
        if progress is not None:
            progress(fraction, stage)

    step(0.05, "candidate graph")
    graph = build_candidate_graph(corpus, vectors, model, params)
    step(0.35, "node selection")
    nodes, flags = select_nodes(vectors, model, params)
    step(0.65, "storyline linking")
    storylines = link_storylines(nodes, graph)
    step(0.85, "post-processing")
    narrative = finalize_map(corpus, graph, storylines, params, flags)
    step(1.0, "done")
    return narrative
