"""Multigraph core: immutable graphs with dense integer vertex and edge ids.

Vertices are ``0 .. n-1``.  Edges are identified by their position in the
edge sequence, so parallel edges are distinct objects.  Loops are stripped
silently at construction; ``loops_stripped`` counts them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import StructuralInputError

VertexId = int
EdgeId = int


class Graph:
    """An immutable undirected multigraph."""

    __slots__ = ("n", "edges", "loops_stripped", "_adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]) -> None:
        if n < 0:
            raise StructuralInputError(f"vertex count must be >= 0, got {n}")
        kept: list[tuple[int, int]] = []
        loops = 0
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise StructuralInputError(
                    f"edge ({u}, {v}) out of range for {n} vertices")
            if u == v:
                loops += 1
                continue
            kept.append((u, v))
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(kept)
        self.loops_stripped = loops
        adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for e, (u, v) in enumerate(self.edges):
            adj[u].append((v, e))
            adj[v].append((u, e))
        # Sorted incidence lists make every traversal in the package
        # deterministic without per-call sorting.
        self._adj: tuple[tuple[tuple[int, int], ...], ...] = tuple(
            tuple(sorted(a)) for a in adj)

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def endpoints(self, e: EdgeId) -> tuple[int, int]:
        return self.edges[e]

    def incident(self, v: VertexId) -> tuple[tuple[int, int], ...]:
        """Pairs ``(neighbor, edge_id)`` sorted by (neighbor, edge_id)."""
        return self._adj[v]

    def degree(self, v: VertexId) -> int:
        return len(self._adj[v])

    def other_end(self, e: EdgeId, v: VertexId) -> VertexId:
        u, w = self.edges[e]
        if v == u:
            return w
        if v == w:
            return u
        raise StructuralInputError(f"vertex {v} is not an end of edge {e}")

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Graph)
                and self.n == other.n and self.edges == other.edges)

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def connected_components(
    graph: Graph,
    vertex_set: Iterable[int] | None = None,
    removed_edges: Iterable[int] | None = None,
) -> tuple[frozenset[int], ...]:
    """Components of the subgraph induced on ``vertex_set`` (default: all
    vertices) after deleting ``removed_edges``, ordered by smallest member."""
    if vertex_set is None:
        inside = [True] * graph.n
        verts: Iterable[int] = graph.vertices()
    else:
        inside = [False] * graph.n
        verts = sorted(set(vertex_set))
        for v in verts:
            if not (0 <= v < graph.n):
                raise StructuralInputError(f"vertex {v} out of range")
            inside[v] = True
    removed = frozenset(removed_edges) if removed_edges is not None else frozenset()
    seen = [False] * graph.n
    out: list[frozenset[int]] = []
    for s in verts:
        if seen[s] or not inside[s]:
            continue
        stack = [s]
        seen[s] = True
        comp = [s]
        while stack:
            u = stack.pop()
            for w, e in graph.incident(u):
                if inside[w] and not seen[w] and e not in removed:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        out.append(frozenset(comp))
    return tuple(out)


def cut(graph: Graph, vertex_set: Iterable[int]) -> frozenset[int]:
    """Edge ids with exactly one endpoint in ``vertex_set``."""
    xs = set(vertex_set)
    for v in xs:
        if not (0 <= v < graph.n):
            raise StructuralInputError(f"vertex {v} out of range")
    return frozenset(
        e for e, (u, v) in enumerate(graph.edges) if (u in xs) != (v in xs))


@dataclass(frozen=True)
class Contraction:
    """Result of contracting a family of vertex sets.

    ``vertex_map`` sends every old vertex to its new id; ``edge_map`` sends
    every surviving old edge id to its new id (edges inside a part vanish),
    which lets callers translate joins and terminal sets.
    """

    graph: Graph
    vertex_map: dict[int, int]
    edge_map: dict[int, int]


def contract(graph: Graph, family: Iterable[Iterable[int]]) -> Contraction:
    """Collapse each member of ``family`` (disjoint vertex sets) to a single
    new vertex.  Parallel edges between parts are retained; edges inside a
    part disappear.  Untouched vertices come first in ascending order, then
    one vertex per part in order of smallest member."""
    parts = [sorted(set(p)) for p in family]
    part_of = [-1] * graph.n
    for i, p in enumerate(parts):
        if not p:
            raise StructuralInputError("cannot contract an empty part")
        for v in p:
            if not (0 <= v < graph.n):
                raise StructuralInputError(f"vertex {v} out of range")
            if part_of[v] != -1:
                raise StructuralInputError(
                    f"vertex {v} appears in two contraction parts")
            part_of[v] = i
    parts_order = sorted(range(len(parts)), key=lambda i: parts[i][0])
    vertex_map: dict[int, int] = {}
    nxt = 0
    for v in range(graph.n):
        if part_of[v] == -1:
            vertex_map[v] = nxt
            nxt += 1
    for i in parts_order:
        for v in parts[i]:
            vertex_map[v] = nxt
        nxt += 1
    new_edges: list[tuple[int, int]] = []
    edge_map: dict[int, int] = {}
    for e, (u, v) in enumerate(graph.edges):
        nu, nv = vertex_map[u], vertex_map[v]
        if nu == nv:
            continue
        edge_map[e] = len(new_edges)
        new_edges.append((nu, nv))
    return Contraction(Graph(nxt, new_edges), vertex_map, edge_map)


def iter_edge_set(graph: Graph, edge_ids: Iterable[int]) -> Iterator[tuple[int, int]]:
    for e in edge_ids:
        yield graph.edges[e]
