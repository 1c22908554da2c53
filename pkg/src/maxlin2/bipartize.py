"""Undirected multigraphs and minimum edge deletion to bipartiteness.

The exact engine uses iterative compression: edges are inserted one at a
time while a minimum deletion set for the processed prefix is maintained.
When an insertion breaks 2-colorability, the routine looks for a deletion
set one smaller than the inflated one by enumerating, for each edge of the
current set, which way round its endpoints are colored in the sought
solution, and solving a unit-capacity minimum cut for every guess. The
overall work is within O(2^k M^2) flow steps for budget k and M edges.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

from .core import CapacityError, MaxLin2Error


class GraphError(MaxLin2Error):
    """Invalid graph construction or an unsupported graph shape."""


@dataclass(frozen=True)
class Edge:
    """Undirected edge; parallel edges are distinct, self-loops are rejected."""

    u: int
    v: int
    weight: int = 1
    label: object = None

    def __post_init__(self) -> None:
        if self.u == self.v:
            raise GraphError(f"self-loop at vertex {self.u} is not allowed")
        if self.weight < 1:
            raise GraphError(f"edge weight must be >= 1, got {self.weight}")

    def endpoints(self) -> tuple[int, int]:
        return (self.u, self.v)


@dataclass(frozen=True)
class Graph:
    num_vertices: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", tuple(self.edges))
        for e in self.edges:
            if not (0 <= e.u < self.num_vertices and 0 <= e.v < self.num_vertices):
                raise GraphError(f"edge {e} out of vertex range")

    @classmethod
    def from_pairs(cls, num_vertices: int, pairs, weights=None) -> "Graph":
        edges = []
        for i, (u, v) in enumerate(pairs):
            w = 1 if weights is None else weights[i]
            edges.append(Edge(u, v, w))
        return cls(num_vertices, tuple(edges))

    def is_unweighted(self) -> bool:
        return all(e.weight == 1 for e in self.edges)

    def total_weight(self) -> int:
        return sum(e.weight for e in self.edges)


@dataclass(frozen=True)
class Bipartition:
    """A 2-coloring valid for all edges outside deleted_edges."""

    side: tuple[int, ...]
    deleted_edges: frozenset[int] = frozenset()


@dataclass(frozen=True)
class OddCycle:
    """Witness of non-bipartiteness: edge ids forming an odd closed walk."""

    edges: tuple[int, ...]


@dataclass
class SearchStats:
    """Work counters for the compression search (used by runtime smoke checks)."""

    compressions: int = 0
    guesses: int = 0
    flow_augmentations: int = 0


def expand_weighted_edges(g: Graph) -> tuple[Graph, dict[int, tuple[int, int]]]:
    """Replace each weight-w edge by w disjoint 3-edge paths via fresh vertices.

    An intact path forces its endpoints onto opposite sides, and breaking a
    path costs one deletion, so minimum deletions in the result equal the
    minimum total weight of deleted edges in the input. Returns the expanded
    unit-weight graph and a map from new edge id to (original edge id, path).
    """
    next_vertex = g.num_vertices
    edges: list[Edge] = []
    provenance: dict[int, tuple[int, int]] = {}
    for orig_id, e in enumerate(g.edges):
        for path in range(e.weight):
            a, b = next_vertex, next_vertex + 1
            next_vertex += 2
            for u, v in ((e.u, a), (a, b), (b, e.v)):
                provenance[len(edges)] = (orig_id, path)
                edges.append(Edge(u, v, 1, label=(orig_id, path)))
    return Graph(next_vertex, tuple(edges)), provenance


def _two_coloring(num_vertices: int, adjacency, with_witness: bool):
    """BFS 2-coloring; returns (side, None) or (None, OddCycle)."""
    side = [-1] * num_vertices
    parent_edge = [-1] * num_vertices
    parent_vertex = [-1] * num_vertices
    depth = [0] * num_vertices
    for root in range(num_vertices):
        if side[root] != -1:
            continue
        side[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v, eid in adjacency[u]:
                if side[v] == -1:
                    side[v] = side[u] ^ 1
                    parent_vertex[v] = u
                    parent_edge[v] = eid
                    depth[v] = depth[u] + 1
                    queue.append(v)
                elif side[v] == side[u]:
                    if not with_witness:
                        return None, OddCycle(())
                    walk_u, walk_v = [], []
                    a, b = u, v
                    while depth[a] > depth[b]:
                        walk_u.append(parent_edge[a])
                        a = parent_vertex[a]
                    while depth[b] > depth[a]:
                        walk_v.append(parent_edge[b])
                        b = parent_vertex[b]
                    while a != b:
                        walk_u.append(parent_edge[a])
                        a = parent_vertex[a]
                        walk_v.append(parent_edge[b])
                        b = parent_vertex[b]
                    cycle = walk_u + [eid] + list(reversed(walk_v))
                    return None, OddCycle(tuple(cycle))
    return tuple(side), None


def _adjacency(g: Graph, edge_ids) -> list[list[tuple[int, int]]]:
    adjacency: list[list[tuple[int, int]]] = [[] for _ in range(g.num_vertices)]
    for eid in edge_ids:
        e = g.edges[eid]
        adjacency[e.u].append((e.v, eid))
        adjacency[e.v].append((e.u, eid))
    return adjacency


def is_bipartite(g: Graph):
    """Return a Bipartition, or an OddCycle witness when none exists."""
    side, cycle = _two_coloring(g.num_vertices, _adjacency(g, range(len(g.edges))), True)
    if side is None:
        return cycle
    return Bipartition(side=side)


def _min_cut(num_vertices, edges, sources, sinks, bound, stats):
    """Minimum edge cut separating sources from sinks, or None if above bound.

    edges is a list of (a, b, payload) undirected unit-capacity edges.
    Standard Edmonds-Karp with antisymmetric flow on each undirected edge;
    source/sink attachments are implicit and uncapacitated.
    """
    adjacency: list[list[tuple[int, int, int]]] = [[] for _ in range(num_vertices)]
    for j, (a, b, _) in enumerate(edges):
        adjacency[a].append((b, j, 1))
        adjacency[b].append((a, j, -1))
    flow = [0] * len(edges)
    sink_set = set(sinks)
    value = 0
    while True:
        parent: dict[int, tuple[int, int, int] | None] = {s: None for s in sources}
        queue = deque(sources)
        reached = None
        while queue and reached is None:
            u = queue.popleft()
            for v, j, sign in adjacency[u]:
                if v in parent or sign * flow[j] >= 1:
                    continue
                parent[v] = (u, j, sign)
                if v in sink_set:
                    reached = v
                    break
                queue.append(v)
        if reached is None:
            break
        value += 1
        if stats is not None:
            stats.flow_augmentations += 1
        if value > bound:
            return None
        node = reached
        while parent[node] is not None:
            u, j, sign = parent[node]
            flow[j] += sign
            node = u
    reachable = set(sources)
    queue = deque(sources)
    while queue:
        u = queue.popleft()
        for v, j, sign in adjacency[u]:
            if v not in reachable and sign * flow[j] < 1:
                reachable.add(v)
                queue.append(v)
    cut = [
        payload for a, b, payload in edges if (a in reachable) != (b in reachable)
    ]
    assert len(cut) == value, "max-flow/min-cut mismatch"
    return cut


def _compress(g: Graph, active, solution_edges, stats):
    """Find a deletion set for the active subgraph smaller than the given one.

    Each solution edge uv is detached into pendants u-p and q-v (the middle
    p-q edge is the guessed one), which makes the host graph bipartite. A
    guess fixes the colors of every p and q; a deletion set compatible with
    the guess is exactly an edge cut between the pendant vertices that must
    flip their color and those that must keep it.
    """
    if stats is not None:
        stats.compressions += 1
    bound = len(solution_edges) - 1
    if bound < 0:
        return None
    in_solution = set(solution_edges)
    num_vertices = g.num_vertices + 2 * len(solution_edges)
    host_edges: list[tuple[int, int, int]] = []
    terminals: list[tuple[int, int]] = []
    for eid in active:
        if eid not in in_solution:
            e = g.edges[eid]
            host_edges.append((e.u, e.v, eid))
    for i, eid in enumerate(solution_edges):
        p = g.num_vertices + 2 * i
        q = p + 1
        e = g.edges[eid]
        host_edges.append((e.u, p, eid))
        host_edges.append((q, e.v, eid))
        terminals.append((p, q))
    adjacency: list[list[tuple[int, int]]] = [[] for _ in range(num_vertices)]
    for j, (a, b, _) in enumerate(host_edges):
        adjacency[a].append((b, j))
        adjacency[b].append((a, j))
    phi, _ = _two_coloring(num_vertices, adjacency, False)
    assert phi is not None, "host graph of a valid solution must be bipartite"
    for guess in range(1 << len(solution_edges)):
        if stats is not None:
            stats.guesses += 1
        must_flip: list[int] = []
        must_keep: list[int] = []
        for i, (p, q) in enumerate(terminals):
            p_color = (guess >> i) & 1
            (must_flip if p_color != phi[p] else must_keep).append(p)
            (must_flip if (p_color ^ 1) != phi[q] else must_keep).append(q)
        cut = _min_cut(num_vertices, host_edges, must_flip, must_keep, bound, stats)
        if cut is not None:
            return sorted(set(cut))
    return None


def edge_bipartization(g: Graph, k: int, stats: SearchStats | None = None):
    """Minimum edge deletion set making g bipartite, if its size is <= k.

    Requires a unit-weight graph. Returns a Bipartition whose deleted_edges
    is a minimum deletion set, or None when every deletion set has more than
    k edges. Deterministic: edges are inserted in input order and the first
    improving guess is taken.
    """
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    if not g.is_unweighted():
        raise GraphError("edge_bipartization requires unit weights; expand first")
    solution: list[int] = []
    active: list[int] = []
    for eid in range(len(g.edges)):
        active.append(eid)
        removed = set(solution)
        kept = [i for i in active if i not in removed]
        side, _ = _two_coloring(g.num_vertices, _adjacency(g, kept), False)
        if side is not None:
            continue
        candidate = solution + [eid]
        improved = _compress(g, active, candidate, stats)
        solution = improved if improved is not None else candidate
        if len(solution) > k:
            return None
    removed = set(solution)
    kept = [i for i in range(len(g.edges)) if i not in removed]
    side, _ = _two_coloring(g.num_vertices, _adjacency(g, kept), False)
    assert side is not None, "final deletion set must leave a bipartite graph"
    return Bipartition(side=side, deleted_edges=frozenset(solution))


def brute_force_bipartization(g: Graph, k: int, edge_limit: int = 20):
    """Oracle: try all edge subsets of size 0..k in lexicographic order."""
    if len(g.edges) > edge_limit:
        raise CapacityError(
            f"{len(g.edges)} edges exceed the brute-force limit {edge_limit}"
        )
    if not g.is_unweighted():
        raise GraphError("brute_force_bipartization requires unit weights")
    all_ids = range(len(g.edges))
    for size in range(min(k, len(g.edges)) + 1):
        for combo in itertools.combinations(all_ids, size):
            kept = [i for i in all_ids if i not in combo]
            side, _ = _two_coloring(g.num_vertices, _adjacency(g, kept), False)
            if side is not None:
                return Bipartition(side=side, deleted_edges=frozenset(combo))
    return None
