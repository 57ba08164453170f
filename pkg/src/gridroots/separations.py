"""Separations, tangles, and vertex-disjoint path / cut machinery.

A separation of a graph is an ordered pair of subgraphs covering the
graph with no shared edges; its order is the number of shared vertices.
Tangles are explicit separation sets checked against the three tangle
axioms at desk scale.  ``menger`` is a deterministic vertex-capacity
max-flow: it returns either ``k`` vertex-disjoint source-target paths or
a cut of fewer than ``k`` vertices together with the separation that cut
induces.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import isqrt
from typing import Iterable, Sequence

from .errors import InternalInvariantBroken, MalformedInput
from .graph import Graph, Subgraph, reachable_from
from .grid import row_vertices
from .models import Pseudomodel, image_of_vertices
from .validation import ValidationReport

_INF = 10 ** 9


class Separation:
    """Ordered pair (A, B) of subgraphs with A union B = G, E(A^B) empty."""

    __slots__ = ("a", "b", "_hash")

    def __init__(self, a: Subgraph, b: Subgraph):
        if a.host != b.host:
            raise ValueError("separation sides live in different hosts")
        host = a.host
        if a.vertices | b.vertices != host.vertices or a.edge_ids | b.edge_ids != host.edge_ids:
            raise ValueError("separation sides do not cover the host graph")
        if a.edge_ids & b.edge_ids:
            raise ValueError("separation sides share edges")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "_hash", hash((a, b)))

    def __setattr__(self, name, value):
        raise AttributeError("Separation is immutable")

    @property
    def host(self) -> Graph:
        return self.a.host

    @property
    def separator(self) -> frozenset[int]:
        return self.a.vertices & self.b.vertices

    @property
    def order(self) -> int:
        return len(self.separator)

    def flipped(self) -> "Separation":
        return Separation(self.b, self.a)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Separation):
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Separation(order={self.order}, |V(A)|={len(self.a.vertices)}, |V(B)|={len(self.b.vertices)})"


def separation_order(s: Separation) -> int:
    """Number of vertices shared by the two sides."""
    return s.order


def separation_sort_key(s: Separation):
    """Deterministic ordering key for separation sequences."""
    return (
        sorted(s.a.vertices),
        sorted(s.a.edge_ids),
        sorted(s.b.vertices),
        sorted(s.b.edge_ids),
    )


@dataclass(frozen=True)
class Tangle:
    """An explicit tangle: all member separations listed outright."""

    host: Graph
    order: int
    members: tuple[Separation, ...]

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("tangle order must be at least 1")


@dataclass(frozen=True)
class CutResult:
    """Outcome of a Menger run: disjoint paths, or a cut with its separation."""

    paths: tuple[tuple[int, ...], ...] | None
    cut: frozenset[int] | None
    separation: Separation | None

    @property
    def found_paths(self) -> bool:
        return self.paths is not None


def _trim_path(path: Sequence[int], sources: frozenset[int], targets: frozenset[int]) -> tuple[int, ...]:
    """Cut at the first target, then start from the last source before it."""
    stop = next(i for i, v in enumerate(path) if v in targets)
    head = path[: stop + 1]
    start = max(i for i, v in enumerate(head) if v in sources)
    return tuple(head[start:])


def menger(
    g: Graph,
    sources: Iterable[int],
    targets: Iterable[int],
    k: int,
    forbidden: Iterable[int] = (),
) -> CutResult:
    """Find k vertex-disjoint source-target paths or a smaller vertex cut.

    Vertex capacities (every vertex cuttable, sources and targets
    included) are realized by the standard vertex-splitting max-flow.
    Augmenting-path search is breadth-first with ties broken by
    ascending node identifier, so results are deterministic.  Paths are
    trimmed to meet the targets only at their final vertex and the
    sources only at their first; a source that is also a target yields a
    single-vertex path.  In the cut case the cut is the sink-side
    minimum cut and the returned separation puts the cut plus everything
    reachable from the sources on the A side.
    """
    src = frozenset(sources)
    tgt = frozenset(targets)
    fbd = frozenset(forbidden)
    problems = []
    if k < 1:
        problems.append(f"k must be positive, got {k}")
    if not src:
        problems.append("empty source set")
    if not tgt:
        problems.append("empty target set")
    if src & fbd or tgt & fbd:
        problems.append("sources and targets must be disjoint from forbidden vertices")
    if not src <= g.vertices or not tgt <= g.vertices:
        problems.append("sources and targets must be vertices of the graph")
    if problems:
        raise MalformedInput("bad menger query", problems)

    searched = g.remove_vertices(fbd) if fbd else g
    verts = sorted(searched.vertices)
    index = {v: i for i, v in enumerate(verts)}
    nv = len(verts)
    s_node, t_node = 2 * nv, 2 * nv + 1

    cap: dict[tuple[int, int], int] = {}
    adj: list[set[int]] = [set() for _ in range(2 * nv + 2)]

    def add_arc(u: int, w: int, c: int) -> None:
        cap[(u, w)] = cap.get((u, w), 0) + c
        cap.setdefault((w, u), 0)
        adj[u].add(w)
        adj[w].add(u)

    for v in verts:
        add_arc(2 * index[v], 2 * index[v] + 1, 1)
    for e in sorted(searched.edge_ids):
        x, y = searched.endpoints(e)
        if x == y:
            continue
        add_arc(2 * index[x] + 1, 2 * index[y], _INF)
        add_arc(2 * index[y] + 1, 2 * index[x], _INF)
    for z in sorted(src):
        add_arc(s_node, 2 * index[z], _INF)
    for t in sorted(tgt):
        add_arc(2 * index[t] + 1, t_node, _INF)
    neighbors = [sorted(s) for s in adj]

    flow: dict[tuple[int, int], int] = {}

    def residual(u: int, w: int) -> int:
        return cap.get((u, w), 0) - flow.get((u, w), 0)

    total = 0
    while total < k:
        parent: dict[int, int] = {s_node: -1}
        queue: deque[int] = deque([s_node])
        while queue and t_node not in parent:
            u = queue.popleft()
            for w in neighbors[u]:
                if w not in parent and residual(u, w) > 0:
                    parent[w] = u
                    if w == t_node:
                        break
                    queue.append(w)
        if t_node not in parent:
            break
        hops = []
        u = t_node
        while u != s_node:
            hops.append((parent[u], u))
            u = parent[u]
        hops.reverse()
        push = min(residual(u, w) for u, w in hops)
        for u, w in hops:
            flow[(u, w)] = flow.get((u, w), 0) + push
            flow[(w, u)] = flow.get((w, u), 0) - push
        total += push

    if total >= k:
        remaining = {arc: f for arc, f in flow.items() if f > 0 and cap.get(arc, 0) > 0}
        paths = []
        for _ in range(k):
            node_path = [s_node]
            while node_path[-1] != t_node:
                u = node_path[-1]
                w = next(w for w in neighbors[u] if remaining.get((u, w), 0) > 0)
                remaining[(u, w)] -= 1
                node_path.append(w)
            vertex_path = [verts[node // 2] for node in node_path[1:-1] if node % 2 == 0]
            paths.append(_trim_path(vertex_path, src, tgt))
        return CutResult(paths=tuple(paths), cut=None, separation=None)

    reach_t = {t_node}
    queue = deque([t_node])
    while queue:
        w = queue.popleft()
        for u in neighbors[w]:
            if u not in reach_t and residual(u, w) > 0:
                reach_t.add(u)
                queue.append(u)
    cut = frozenset(verts[i] for i in range(nv) if 2 * i + 1 in reach_t and 2 * i not in reach_t)
    if len(cut) != total:
        raise InternalInvariantBroken(
            f"min-cut extraction produced {len(cut)} vertices for flow {total}",
            payload={"cut": sorted(cut)},
        )
    separation = _cut_separation(searched, cut, src)
    return CutResult(paths=None, cut=cut, separation=separation)


def _cut_separation(g: Graph, cut: frozenset[int], sources: frozenset[int]) -> Separation:
    """Separation induced by a cut: A = cut plus the source-reachable part."""
    reach_a = frozenset(reachable_from(g, sorted(sources), cut))
    a_verts = reach_a | cut
    b_only = g.vertices - a_verts
    b_verts = b_only | cut
    a_edges, b_edges = set(), set()
    for e in g.edge_ids:
        x, y = g.endpoints(e)
        if x in reach_a or y in reach_a:
            a_edges.add(e)
        elif x in b_only or y in b_only:
            b_edges.add(e)
        else:
            a_edges.add(e)
    return Separation(Subgraph(g, a_verts, a_edges), Subgraph(g, b_verts, b_edges))


def blocking_separation(
    g: Graph,
    cut: frozenset[int],
    sources: frozenset[int],
    targets: frozenset[int],
) -> Separation:
    """Largest-A-side separation over a cut between sources and targets.

    Components of g minus the cut that contain a source, or contain
    neither a source nor a target, go to the A side; components with a
    target go to the B side; edges inside the cut go to A.  This makes
    B as small as possible, which is what the reducibility test needs.
    """
    a_extra: set[int] = set()
    b_extra: set[int] = set()
    seen: set[int] = set(cut)
    for start in sorted(g.vertices - cut):
        if start in seen:
            continue
        comp = reachable_from(g, [start], cut)
        seen |= comp
        if comp & targets and not comp & sources:
            b_extra |= comp
        else:
            a_extra |= comp
    a_verts = a_extra | cut
    b_verts = b_extra | cut
    a_edges, b_edges = set(), set()
    for e in g.edge_ids:
        x, y = g.endpoints(e)
        if x in a_extra or y in a_extra:
            a_edges.add(e)
        elif x in b_extra or y in b_extra:
            b_edges.add(e)
        else:
            a_edges.add(e)
    return Separation(Subgraph(g, a_verts, a_edges), Subgraph(g, b_verts, b_edges))


@dataclass(frozen=True)
class RowBlock:
    """A separation blocking the roots from one row's image."""

    separation: Separation
    row: tuple[int, ...]
    kind: str  # "strict" (order < k) or "reducible" (order = k, B != G)


def find_row_blocking_separation(
    g: Graph,
    roots: Iterable[int],
    p: Pseudomodel,
    rows: Sequence[Sequence[int]],
    max_order: int,
) -> RowBlock | None:
    """Scan rows for a separation pinching the roots off from a row image.

    For each row (in the order given) this asks for ``max_order + 1``
    disjoint paths from the roots to the row's branch image.  A cut of
    fewer than ``max_order`` vertices is a strict blocker (the
    root-connectivity hypothesis fails).  A cut of exactly ``max_order``
    vertices blocks reducibly when the induced separation can be
    arranged with B a proper subgraph; cuts whose every arrangement has
    B = G are not blockers.  Returns the first blocker or None.
    """
    root_set = frozenset(roots)
    for row in rows:
        targets = image_of_vertices(p, row)
        result = menger(g, root_set, targets, max_order + 1)
        if result.found_paths:
            continue
        if len(result.cut) < max_order:
            return RowBlock(result.separation, tuple(row), "strict")
        extended = blocking_separation(g, result.cut, root_set, targets)
        if extended.b.vertices != g.vertices or extended.b.edge_ids != g.edge_ids:
            return RowBlock(extended, tuple(row), "reducible")
    return None


def check_tangle_axioms(t: Tangle, all_separations: Sequence[Separation]) -> ValidationReport:
    """Check the three tangle axioms against a full separation list.

    ``all_separations`` must contain every separation of the host of
    order below the tangle's order (oracle-enumerated at desk scale).
    Codes: ``tangle-member-host``, ``tangle-member-order``,
    ``tangle-completeness``, ``tangle-cover``, ``tangle-avoid-full``.
    """
    report = ValidationReport()
    host = t.host
    members = list(t.members)
    for i, s in enumerate(members):
        if s.host != host:
            report.add("tangle-member-host", f"member {i} lives in a different host")
            return report
        if s.order >= t.order:
            report.add("tangle-member-order", f"member {i} has order {s.order} >= {t.order}")
    member_set = set(members)
    for s in all_separations:
        if s.order >= t.order:
            continue
        if s not in member_set and s.flipped() not in member_set:
            report.add(
                "tangle-completeness",
                f"neither orientation of a separation of order {s.order} "
                f"(A vertices {sorted(s.a.vertices)}) is a member",
            )
    vbit = {v: i for i, v in enumerate(sorted(host.vertices))}
    ebit = {e: i + len(vbit) for i, e in enumerate(sorted(host.edge_ids))}
    full = (1 << (len(vbit) + len(ebit))) - 1
    masks = []
    for s in members:
        m = 0
        for v in s.a.vertices:
            m |= 1 << vbit[v]
        for e in s.a.edge_ids:
            m |= 1 << ebit[e]
        masks.append(m)
    for i, s in enumerate(members):
        if len(s.a.vertices) == len(host.vertices):
            report.add("tangle-avoid-full", f"member {i} has V(A) = V(G)")
    n = len(members)
    for i in range(n):
        mi = masks[i]
        for j in range(i, n):
            mij = mi | masks[j]
            for l in range(j, n):
                if mij | masks[l] == full:
                    report.add(
                        "tangle-cover",
                        f"small sides of members {i}, {j}, {l} cover the host",
                    )
    return report


def grid_tangle_member(p: Pseudomodel, s: Separation) -> Separation:
    """Orient a low-order separation by the grid model's row images.

    Returns the orientation (A, B) whose A side contains no complete
    row image.  For a valid grid model and order below the grid side
    exactly one orientation qualifies; anything else raises ValueError.
    """
    count = p.pattern.num_vertices
    n = isqrt(count)
    if n * n != count:
        raise ValueError("pattern is not a square grid")
    if s.order >= n:
        raise ValueError(f"separation order {s.order} is not below the grid side {n}")
    row_images = [image_of_vertices(p, row_vertices(n, i)) for i in range(1, n + 1)]
    first = not any(img <= s.a.vertices for img in row_images)
    second = not any(img <= s.b.vertices for img in row_images)
    if first and not second:
        return s
    if second and not first:
        return s.flipped()
    raise ValueError("ambiguous row orientation; model or order out of contract")
