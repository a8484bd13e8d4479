"""Grafts and minimum T-joins via the classical matching reduction.

A graft pairs a multigraph with a terminal set that has even size in every
connected component.  A join is an edge set whose degree is odd exactly at
the terminals; ``minimum_join`` computes one of minimum cardinality by
matching terminals along shortest hop paths and taking the symmetric
difference of the realized paths.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .errors import InternalError, NoJoinError, StructuralInputError
from .graph_core import Contraction, Graph, connected_components, contract
from .matching import min_weight_perfect_matching, min_weight_perfect_matching_value

__all__ = [
    "Graft",
    "SubGraft",
    "validate_graft",
    "is_join",
    "minimum_join",
    "nu",
    "min_weight_perfect_matching",
    "induced_graft",
    "induced_graft_from_join",
    "contract_graft",
]


@dataclass(frozen=True)
class Graft:
    """A multigraph with a designated terminal set."""

    graph: Graph
    terminals: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "terminals", frozenset(self.terminals))
        for v in self.terminals:
            if not (0 <= v < self.graph.n):
                raise StructuralInputError(f"terminal {v} is not a vertex")

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def m(self) -> int:
        return self.graph.m


def validate_graft(graph: Graph, terminals: Iterable[int]) -> Graft:
    """Build a graft, insisting every component holds evenly many terminals.

    An odd component makes a join impossible (handshake parity), so the
    offending component is reported by its smallest vertex.
    """
    g = Graft(graph, frozenset(terminals))
    for comp in connected_components(graph):
        if len(g.terminals & comp) % 2 != 0:
            raise NoJoinError(
                f"component containing vertex {min(comp)} has an odd number "
                f"of terminals ({len(g.terminals & comp)})")
    return g


def is_join(graft: Graft, edges: Iterable[int]) -> bool:
    """True iff ``edges`` has odd degree exactly at the terminal vertices."""
    odd: set[int] = set()
    for e in set(edges):
        u, v = graft.graph.endpoints(e)
        odd ^= {u, v}
    return odd == set(graft.terminals)


def _hop_distances(graph: Graph, source: int) -> list[int | None]:
    dist: list[int | None] = [None] * graph.n
    dist[source] = 0
    q = deque([source])
    while q:
        v = q.popleft()
        for u, _ in graph.incident(v):
            if dist[u] is None:
                dist[u] = dist[v] + 1
                q.append(u)
    return dist


def _shortest_path_edges(graph: Graph, a: int, b: int) -> frozenset[int]:
    """Edge set of the canonical shortest a–b path.

    Walking back from b, each step takes the smallest (vertex, edge) pair
    one BFS layer closer to a, so equal inputs trace equal paths.
    """
    dist = _hop_distances(graph, a)
    if dist[b] is None:
        raise InternalError(f"no path between matched terminals {a} and {b}")
    path: set[int] = set()
    v = b
    while v != a:
        d = dist[v]
        for u, e in graph.incident(v):  # sorted by (u, e): first hit is minimal
            if dist[u] == d - 1:
                path.add(e)
                v = u
                break
        else:
            raise InternalError("BFS layering broke during path realization")
    return frozenset(path)


def minimum_join(graft: Graft) -> frozenset[int]:
    """A minimum join of the graft, deterministic for fixed input.

    Per component: pair up the terminals by a minimum-weight perfect
    matching under hop distance, realize each pair as a canonical shortest
    path, and XOR the paths.  The XOR is a join of size at most the matching
    total, and no join can be smaller, so the result is exactly minimum.
    """
    validate_graft(graft.graph, graft.terminals)
    result: set[int] = set()
    expected = 0
    for comp in connected_components(graft.graph):
        pts = sorted(graft.terminals & comp)
        if not pts:
            continue
        hop: dict[int, list[int | None]] = {
            s: _hop_distances(graft.graph, s) for s in pts}

        def weight(x: int, y: int, hop=hop) -> int:
            d = hop[x][y]
            if d is None:
                raise InternalError("terminals in one component must connect")
            return d

        for a, b in min_weight_perfect_matching(pts, weight):
            expected += weight(a, b)
            result ^= _shortest_path_edges(graft.graph, a, b)
    if len(result) != expected or not is_join(graft, result):
        raise InternalError("matching reduction produced a non-minimum join")
    return frozenset(result)


def nu(graft: Graft) -> int:
    """Size of a minimum join."""
    return len(minimum_join(graft))


def _nu_component_value(graph: Graph, pts: list[int]) -> int:
    """Minimum join size for terminals ``pts`` known to share a component."""
    if not pts:
        return 0
    hop = {s: _hop_distances(graph, s) for s in pts}

    def weight(x: int, y: int) -> int:
        d = hop[x][y]
        if d is None:
            raise InternalError("terminals in one component must connect")
        return d

    return min_weight_perfect_matching_value(pts, weight)


@dataclass(frozen=True)
class SubGraft:
    """An induced sub-graft together with the relabeling maps."""

    graft: Graft
    to_sub_vertex: dict[int, int] = field(repr=False)
    to_parent_vertex: tuple[int, ...] = field(repr=False)
    to_sub_edge: dict[int, int] = field(repr=False)
    to_parent_edge: tuple[int, ...] = field(repr=False)

    def map_vertices(self, vertices: Iterable[int]) -> frozenset[int]:
        return frozenset(self.to_sub_vertex[v] for v in vertices)

    def map_edges(self, edges: Iterable[int]) -> frozenset[int]:
        """Parent edge ids → sub edge ids; edges not inside are dropped."""
        return frozenset(
            self.to_sub_edge[e] for e in edges if e in self.to_sub_edge)

    def unmap_edges(self, edges: Iterable[int]) -> frozenset[int]:
        return frozenset(self.to_parent_edge[e] for e in edges)


def _induced(graph: Graph, vertices: Iterable[int]) -> tuple[Graph, dict, tuple, dict, tuple]:
    inside = sorted(set(vertices))
    for v in inside:
        if not (0 <= v < graph.n):
            raise StructuralInputError(f"vertex {v} is not in the graph")
    vmap = {v: i for i, v in enumerate(inside)}
    emap: dict[int, int] = {}
    eback: list[int] = []
    sub_edges: list[tuple[int, int]] = []
    for e in range(graph.m):
        u, v = graph.endpoints(e)
        if u in vmap and v in vmap:
            emap[e] = len(sub_edges)
            eback.append(e)
            sub_edges.append((vmap[u], vmap[v]))
    return Graph(len(inside), sub_edges), vmap, tuple(inside), emap, tuple(eback)


def induced_graft(graft: Graft, vertices: Iterable[int]) -> SubGraft:
    """Sub-graft on ``vertices`` keeping the terminals that fall inside."""
    g, vmap, vback, emap, eback = _induced(graft.graph, vertices)
    t = frozenset(vmap[v] for v in graft.terminals if v in vmap)
    return SubGraft(Graft(g, t), vmap, vback, emap, eback)


def induced_graft_from_join(
    graft: Graft, join: Iterable[int], vertices: Iterable[int],
) -> SubGraft:
    """Sub-graft on ``vertices`` whose terminals are the vertices with odd
    degree in the restriction of ``join`` — the terminal set under which the
    restricted join has correct parity."""
    g, vmap, vback, emap, eback = _induced(graft.graph, vertices)
    odd: set[int] = set()
    for e in set(join):
        if e in emap:
            u, v = g.endpoints(emap[e])
            odd ^= {u, v}
    return SubGraft(Graft(g, frozenset(odd)), vmap, vback, emap, eback)


def contract_graft(
    graft: Graft, family: Iterable[Iterable[int]],
) -> tuple[Graft, Contraction]:
    """Contract each family member; a contracted blob is a terminal iff it
    swallowed an odd number of terminals (parity of joins is preserved)."""
    parts = [frozenset(p) for p in family]
    contraction = contract(graft.graph, parts)
    swallowed: set[int] = set()
    new_t: set[int] = set()
    for part in parts:
        blob = contraction.vertex_map[min(part)]
        swallowed.update(part)
        if len(graft.terminals & part) % 2 != 0:
            new_t.add(blob)
    for v in graft.terminals:
        if v not in swallowed:
            new_t.add(contraction.vertex_map[v])
    return Graft(contraction.graph, frozenset(new_t)), contraction
