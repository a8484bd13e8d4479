"""Distance decomposition: levels, layer and Q components, beams, roots.

Vertices are stratified by their distance from the root.  For each level i,
the subgraph on vertices at distance <= i splits into *layer components*;
deferring the edges internal to level i splits them further into
*Q components*.  Every component not containing the root is left by exactly
one join edge (its *beam*), whose inner endpoint (the component's *join
root*) sits on the component's top level.

``verify_decomposition`` re-derives the structural claims — beam counts,
minimality and distance projection of the restricted join, factor-critical
level contractions carrying a near-perfect matching, and strong-comb depth
contractions with tooth degree one — and reports violations instead of
trusting the construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import (InternalError, NoJoinError, NotMinimumJoinError,
                     StructuralInputError, TheoremViolationError)
from .graph_core import Graph, connected_components
from .distances import DistanceMap, f_distances
from .matching import max_weight_matching
from .tjoin import (Graft, SubGraft, contract_graft, induced_graft_from_join,
                    is_join, minimum_join, nu)

__all__ = [
    "Component",
    "DistanceDecomposition",
    "DecompositionReport",
    "Violation",
    "distance_decomposition",
    "verify_decomposition",
    "is_factor_critical",
    "is_strong_comb",
    "has_perfect_matching",
]

LAYER = "layer"
Q = "q"


@dataclass(frozen=True)
class Component:
    id: int
    level: int
    kind: str  # LAYER or Q
    vertices: frozenset[int]
    a_set: frozenset[int]  # vertices exactly at `level`
    d_set: frozenset[int]  # vertices strictly below
    is_cap: bool  # contains the decomposition root
    beam: int | None  # the unique join edge leaving a non-cap component
    f_root: int | None  # the beam's endpoint inside the component
    q_children: tuple[int, ...]  # same-level Q components (LAYER kind only)
    d_children: tuple[int, ...]  # layer components one level down

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "level": self.level,
            "kind": self.kind,
            "vertices": sorted(self.vertices),
            "a_set": sorted(self.a_set),
            "d_set": sorted(self.d_set),
            "is_cap": self.is_cap,
            "beam": self.beam,
            "f_root": self.f_root,
            "q_children": list(self.q_children),
            "d_children": list(self.d_children),
        }


@dataclass(frozen=True)
class DistanceDecomposition:
    root: int
    distance_map: DistanceMap
    interval: range
    components: tuple[Component, ...]
    initial_id: int
    detached: tuple[frozenset[int], ...]  # components not holding the root

    def component(self, cid: int) -> Component:
        return self.components[cid]

    @property
    def initial(self) -> Component:
        return self.components[self.initial_id]

    def layer_components(self, level: int | None = None) -> Iterator[Component]:
        for c in self.components:
            if c.kind == LAYER and (level is None or c.level == level):
                yield c

    def q_components(self, level: int | None = None) -> Iterator[Component]:
        for c in self.components:
            if c.kind == Q and (level is None or c.level == level):
                yield c

    def to_json(self) -> dict:
        return {
            "root": self.root,
            "interval": list(self.interval),
            "components": [c.to_json() for c in self.components],
        }


class _DSU:
    __slots__ = ("parent", "size")

    def __init__(self, n: int) -> None:
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, v: int) -> int:
        root = v
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[v] != root:
            self.parent[v], v = root, self.parent[v]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]


def _groups(dsu: _DSU, present: list[int]) -> list[list[int]]:
    by_root: dict[int, list[int]] = {}
    for v in present:
        by_root.setdefault(dsu.find(v), []).append(v)
    return sorted(by_root.values(), key=min)


def distance_decomposition(graft: Graft, join: Iterable[int], root: int) -> DistanceDecomposition:
    """Build the decomposition of the root's component under a minimum join.

    Levels are swept upward with an incremental union-find: cross edges into
    level i are merged first (snapshot: Q components), the edges internal to
    level i after (snapshot: layer components).
    """
    join = frozenset(join)
    dm = f_distances(graft, join, root)  # also asserts the join is minimum
    graph = graft.graph
    interval = dm.interval()
    levels = dm.level_sets()

    dsu = _DSU(graph.n)
    present: list[int] = []
    # (level, kind, vertices) in discovery order; ids assigned after sorting.
    raw: list[tuple[int, str, frozenset[int]]] = []
    for i in interval:
        newcomers = sorted(levels[i])
        present.extend(newcomers)
        deferred: list[tuple[int, int]] = []
        for v in newcomers:
            for u, _ in graph.incident(v):
                du = dm[u]
                if du is None or du > i:
                    continue
                if du == i:
                    if u < v:  # one direction is enough for level-internal edges
                        deferred.append((u, v))
                else:
                    dsu.union(u, v)
        for grp in _groups(dsu, present):
            raw.append((i, Q, frozenset(grp)))
        for u, v in deferred:
            dsu.union(u, v)
        for grp in _groups(dsu, present):
            raw.append((i, LAYER, frozenset(grp)))

    raw.sort(key=lambda t: (t[0], min(t[2]), t[1] != LAYER))
    index: dict[tuple[int, str, int], int] = {}
    for cid, (level, kind, verts) in enumerate(raw):
        for v in verts:
            index[(level, kind, v)] = cid

    beams: dict[int, tuple[int, int]] = {}
    for cid, (level, kind, verts) in enumerate(raw):
        if root in verts:
            continue
        crossing = [e for e in join
                    if (graph.endpoints(e)[0] in verts)
                    != (graph.endpoints(e)[1] in verts)]
        if len(crossing) != 1:
            raise TheoremViolationError(
                f"component at level {level} (smallest vertex {min(verts)}) "
                f"is left by {len(crossing)} join edges instead of 1")
        e = crossing[0]
        u, v = graph.endpoints(e)
        beams[cid] = (e, u if u in verts else v)

    components: list[Component] = []
    initial_id: int | None = None
    for cid, (level, kind, verts) in enumerate(raw):
        a = frozenset(v for v in verts if dm[v] == level)
        if not a:
            raise InternalError("every component meets its own level")
        is_cap = root in verts
        beam, f_root = beams.get(cid, (None, None))
        if f_root is not None and f_root not in a:
            raise TheoremViolationError(
                f"join root {f_root} lies below the top level of its component")
        q_children = tuple(
            sorted({index[(level, Q, v)] for v in verts})) if kind == LAYER else ()
        # Layer components one level down partition V(<= level-1), so every
        # d_set vertex resolves to exactly one child there.
        d_children = tuple(sorted(
            {index[(level - 1, LAYER, v)] for v in verts if dm[v] < level}))
        components.append(Component(
            id=cid, level=level, kind=kind, vertices=verts, a_set=a,
            d_set=verts - a, is_cap=is_cap, beam=beam, f_root=f_root,
            q_children=q_children, d_children=d_children))
        if kind == LAYER and level == 0 and is_cap:
            initial_id = cid
    if initial_id is None:
        raise InternalError("no initial component found at level 0")

    detached = tuple(c for c in connected_components(graph)
                     if root not in c)
    return DistanceDecomposition(
        root=root, distance_map=dm, interval=interval,
        components=tuple(components), initial_id=initial_id,
        detached=detached)


def has_perfect_matching(graph: Graph) -> bool:
    if graph.n % 2 != 0:
        return False
    mate = max_weight_matching(graph.n, [(u, v, 1) for u, v in graph.edges])
    return all(p != -1 for p in mate)


def is_factor_critical(graph: Graph) -> bool:
    """True iff deleting any single vertex leaves a perfectly matchable graph."""
    if graph.n % 2 == 0 and graph.n > 0:
        return False
    for v in range(graph.n):
        keep = [u for u in range(graph.n) if u != v]
        relabel = {u: i for i, u in enumerate(keep)}
        edges = [(relabel[a], relabel[b]) for a, b in graph.edges
                 if a != v and b != v]
        if not has_perfect_matching(Graph(graph.n - 1, edges)):
            return False
    return True


def is_strong_comb(graft: Graft, root: int, teeth: Iterable[int]) -> bool:
    """Distance profile -1 on a stable dominating tooth set, 0 elsewhere."""
    graph = graft.graph
    teeth = frozenset(teeth)
    for v in teeth:
        if not (0 <= v < graph.n):
            raise StructuralInputError(f"tooth {v} is not a vertex")
    if not (0 <= root < graph.n):
        raise StructuralInputError(f"root {root} is not a vertex")
    if root in teeth or not teeth:
        return False
    outside = frozenset(range(graph.n)) - teeth
    dominated: set[int] = set()
    for b in teeth:
        for u, _ in graph.incident(b):
            if u in teeth:  # stability
                return False
            dominated.add(u)
    if dominated != outside:
        return False
    try:
        join = minimum_join(graft)
    except NoJoinError:
        return False
    dm = f_distances(graft, join, root)
    return all(
        dm[v] == (-1 if v in teeth else 0) for v in range(graph.n))


@dataclass(frozen=True)
class Violation:
    component_id: int | None
    check: str
    message: str


@dataclass(frozen=True)
class DecompositionReport:
    violations: tuple[Violation, ...]
    components_checked: int

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "components_checked": self.components_checked,
            "violations": [
                {"component_id": v.component_id, "check": v.check,
                 "message": v.message}
                for v in self.violations],
        }


def _restricted_join(graph: Graph, join: frozenset[int], verts: frozenset[int]) -> frozenset[int]:
    return frozenset(e for e in join
                     if graph.endpoints(e)[0] in verts
                     and graph.endpoints(e)[1] in verts)


def verify_decomposition(
    graft: Graft, join: Iterable[int], dd: DistanceDecomposition,
) -> DecompositionReport:
    """Re-check the structural theorems behind ``dd`` against ``join``.

    The decomposition is taken as given (its distance map is canonical), so
    feeding a corrupted join here reports violations rather than raising.
    """
    join = frozenset(join)
    graph = graft.graph
    out: list[Violation] = []

    def bad(cid: int | None, check: str, message: str) -> None:
        out.append(Violation(cid, check, message))

    for comp in dd.components:
        crossing = [e for e in join
                    if (graph.endpoints(e)[0] in comp.vertices)
                    != (graph.endpoints(e)[1] in comp.vertices)]
        want = 0 if comp.is_cap else 1
        if len(crossing) != want:
            bad(comp.id, "beam-count",
                f"{len(crossing)} join edges leave the component, expected {want}")

    for comp in dd.layer_components():
        if comp.is_cap:
            continue
        sub = induced_graft_from_join(graft, join, comp.vertices)
        inner_join = sub.map_edges(join)
        try:
            inner_nu = nu(sub.graft)
        except NotMinimumJoinError as exc:
            bad(comp.id, "induced-join-minimality", str(exc))
            continue
        if len(inner_join) != inner_nu:
            bad(comp.id, "induced-join-minimality",
                f"restriction has {len(inner_join)} edges, minimum is {inner_nu}")
            continue
        if comp.f_root is None:
            continue
        inner_dm = f_distances(
            sub.graft, inner_join, sub.to_sub_vertex[comp.f_root])
        offset = dd.distance_map[comp.f_root]
        for v in comp.vertices:
            inner = inner_dm[sub.to_sub_vertex[v]]
            if inner is None or dd.distance_map[v] != offset + inner:
                bad(comp.id, "distance-projection",
                    f"vertex {v}: outer {dd.distance_map[v]} != "
                    f"{offset} + inner {inner}")
                break

    for comp in dd.layer_components():
        if not (comp.is_cap and comp.level != 0):
            _check_level_contraction(graft, join, dd, comp, bad)

    for comp in dd.q_components():
        if not comp.is_cap and comp.d_set:
            _check_depth_contraction(graft, join, dd, comp, bad)

    return DecompositionReport(tuple(out), len(dd.components))


def _blob_map(sub: SubGraft, dd: DistanceDecomposition,
              child_ids: tuple[int, ...]):
    """Contract the (sub-relabeled) children inside an induced sub-graft."""
    parts = [sub.map_vertices(dd.component(c).vertices) for c in child_ids]
    contracted, contraction = contract_graft(sub.graft, parts)
    blobs = tuple(contraction.vertex_map[min(p)] for p in parts)
    return contracted, contraction, blobs


def _check_level_contraction(graft, join, dd, comp, bad) -> None:
    """Collapsing each same-level Q component of a layer component must give
    a factor-critical graft rooted at the join root's blob, on which the
    join's top-level edges form a near-perfect matching."""
    anchor = dd.root if comp.is_cap else comp.f_root
    sub = induced_graft_from_join(graft, join, comp.vertices)
    contracted, contraction, blobs = _blob_map(sub, dd, comp.q_children)
    root_blob = contraction.vertex_map[sub.to_sub_vertex[anchor]]
    if not is_factor_critical(contracted.graph):
        bad(comp.id, "factor-critical-contraction",
            "level contraction is not factor-critical")
        return
    if contracted.terminals != frozenset(range(contracted.graph.n)) - {root_blob}:
        bad(comp.id, "factor-critical-contraction",
            "level contraction terminals differ from all-but-root")
        return
    top_edges = [e for e in join
                 if graft.graph.endpoints(e)[0] in comp.a_set
                 and graft.graph.endpoints(e)[1] in comp.a_set]
    matched: set[int] = set()
    ok = True
    for e in top_edges:
        se = sub.to_sub_edge[e]
        ce = contraction.edge_map.get(se)
        if ce is None:
            ok = False  # edge vanished inside one blob
            break
        u, v = contracted.graph.endpoints(ce)
        if u in matched or v in matched:
            ok = False
            break
        matched.update((u, v))
    if not (ok and matched == frozenset(range(contracted.graph.n)) - {root_blob}):
        bad(comp.id, "near-perfect-matching",
            "top-level join edges do not match all non-root blobs exactly once")


def _check_depth_contraction(graft, join, dd, comp, bad) -> None:
    """Collapsing each child of a non-cap Q component must give a strong comb
    rooted at the join root, whose minimum join is the set of child beams,
    with every tooth met exactly once."""
    sub = induced_graft_from_join(graft, join, comp.vertices)
    contracted, contraction, blobs = _blob_map(sub, dd, comp.d_children)
    root_blob = contraction.vertex_map[sub.to_sub_vertex[comp.f_root]]
    child_beams = [e for e in join
                   if (graft.graph.endpoints(e)[0] in comp.d_set)
                   != (graft.graph.endpoints(e)[1] in comp.d_set)]
    if any(e not in sub.to_sub_edge for e in child_beams):
        bad(comp.id, "comb-join",
            "a join edge leaves the depth set without staying inside "
            "the component")
        return
    mapped = frozenset(
        contraction.edge_map[sub.to_sub_edge[e]] for e in child_beams
        if sub.to_sub_edge[e] in contraction.edge_map)
    if len(mapped) != len(child_beams):
        bad(comp.id, "comb-join", "a child beam vanished under contraction")
        return
    if not is_strong_comb(contracted, root_blob, blobs):
        bad(comp.id, "strong-comb",
            "depth contraction is not a strong comb")
        return
    if not (is_join(contracted, mapped) and len(mapped) == nu(contracted)):
        bad(comp.id, "comb-join",
            "child beams are not a minimum join of the depth contraction")
        return
    degree: dict[int, int] = {b: 0 for b in blobs}
    for e in mapped:
        for v in contracted.graph.endpoints(e):
            if v in degree:
                degree[v] += 1
    if any(d != 1 for d in degree.values()):
        bad(comp.id, "tooth-degree",
            "a tooth is met by a number of join edges other than one")
