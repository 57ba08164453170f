"""Immutable finite multigraphs and the subgraph algebra built on them.

Graphs are multigraphs: every edge has a distinct integer id, endpoints
may coincide (loops), and parallel edges are allowed.  Both arise
naturally under edge contraction, which this package performs a lot of,
so they are first class rather than an error.

A :class:`Subgraph` is an incidence-closed selection of vertices and
edge ids from a fixed host graph.  The null subgraph (no vertices, no
edges) is legal; branch maps use it as the "nothing left" value.
"""
from __future__ import annotations

from typing import Iterable, Iterator


class Graph:
    """An immutable undirected multigraph with integer vertex and edge ids.

    Edges are triples ``(eid, u, v)``; endpoints are normalised to
    ``(min, max)`` internally so edge identity never depends on the order
    they were supplied in.  ``u == v`` is a loop.
    """

    __slots__ = ("_vertices", "_edges", "_incidence", "_hash")

    def __init__(self, vertices: Iterable[int], edges: Iterable[tuple[int, int, int]] = ()):
        vset = frozenset(int(v) for v in vertices)
        emap: dict[int, tuple[int, int]] = {}
        for eid, u, v in edges:
            eid, u, v = int(eid), int(u), int(v)
            if eid in emap:
                raise ValueError(f"duplicate edge id {eid}")
            if u not in vset or v not in vset:
                raise ValueError(f"edge {eid} has an endpoint outside the vertex set")
            emap[eid] = (min(u, v), max(u, v))
        incidence: dict[int, list[int]] = {v: [] for v in vset}
        for eid in sorted(emap):
            u, v = emap[eid]
            incidence[u].append(eid)
            if v != u:
                incidence[v].append(eid)
        object.__setattr__(self, "_vertices", vset)
        object.__setattr__(self, "_edges", emap)
        object.__setattr__(
            self, "_incidence", {v: tuple(lst) for v, lst in incidence.items()}
        )
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    # -- basic queries -------------------------------------------------

    @property
    def vertices(self) -> frozenset[int]:
        return self._vertices

    @property
    def edge_ids(self) -> frozenset[int]:
        return frozenset(self._edges)

    def edges(self) -> Iterator[tuple[int, int, int]]:
        """Yield ``(eid, u, v)`` triples in ascending edge id order."""
        for eid in sorted(self._edges):
            u, v = self._edges[eid]
            yield eid, u, v

    def endpoints(self, eid: int) -> tuple[int, int]:
        return self._edges[eid]

    def has_edge_id(self, eid: int) -> bool:
        return eid in self._edges

    def is_loop(self, eid: int) -> bool:
        u, v = self._edges[eid]
        return u == v

    def incident_edges(self, v: int) -> tuple[int, ...]:
        """Edge ids incident to ``v`` (loops listed once), ascending."""
        return self._incidence[v]

    def neighbors(self, v: int) -> list[int]:
        """Distinct neighbours of ``v`` other than ``v`` itself, ascending."""
        seen = set()
        for eid in self._incidence[v]:
            u, w = self._edges[eid]
            other = w if u == v else u
            if other != v:
                seen.add(other)
        return sorted(seen)

    def degree(self, v: int) -> int:
        """Edge-endpoint count at ``v``; a loop contributes two."""
        d = 0
        for eid in self._incidence[v]:
            u, w = self._edges[eid]
            d += 2 if u == w else 1
        return d

    @property
    def num_vertices(self) -> int:
        return len(self._vertices)

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    @property
    def measure(self) -> int:
        """The induction measure ``|V| + |E|`` used by the extraction loop."""
        return len(self._vertices) + len(self._edges)

    def is_null(self) -> bool:
        return not self._vertices

    # -- equality ------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self._vertices, frozenset(self._edges.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self) -> str:
        return f"Graph(|V|={self.num_vertices}, |E|={self.num_edges})"

    # -- derived graphs ------------------------------------------------

    def induced(self, vertices: Iterable[int]) -> "Graph":
        """Subgraph induced by ``vertices`` (which must all belong to self)."""
        vset = set(int(v) for v in vertices)
        missing = vset - self._vertices
        if missing:
            raise ValueError(f"vertices not in graph: {sorted(missing)}")
        edges = [
            (eid, u, v)
            for eid, (u, v) in self._edges.items()
            if u in vset and v in vset
        ]
        return Graph(vset, edges)

    def remove_vertices(self, vertices: Iterable[int]) -> "Graph":
        drop = set(int(v) for v in vertices)
        return self.induced(self._vertices - drop)

    def delete_edge(self, eid: int) -> "Graph":
        if eid not in self._edges:
            raise ValueError(f"no edge with id {eid}")
        edges = [(e, u, v) for e, (u, v) in self._edges.items() if e != eid]
        return Graph(self._vertices, edges)

    def contract_edge(self, eid: int) -> tuple["Graph", dict[int, int]]:
        """Contract non-loop edge ``eid``; survivor is the smaller endpoint.

        Returns the contracted graph and a total rename map from old
        vertices to new ones (identity away from the contracted edge).
        Other edges between the two endpoints become loops at the
        survivor; parallel edges elsewhere are retained.
        """
        if eid not in self._edges:
            raise ValueError(f"no edge with id {eid}")
        u, v = self._edges[eid]
        if u == v:
            raise ValueError(f"edge {eid} is a loop and cannot be contracted")
        survivor, gone = (u, v) if u < v else (v, u)
        rename = {w: w for w in self._vertices}
        rename[gone] = survivor
        edges = [
            (e, rename[a], rename[b])
            for e, (a, b) in self._edges.items()
            if e != eid
        ]
        return Graph(self._vertices - {gone}, edges), rename


class Subgraph:
    """A subgraph of a fixed host graph, given by vertex and edge id sets.

    Every selected edge must have all endpoints selected.  The empty
    selection is the null subgraph.
    """

    __slots__ = ("host", "vertices", "edge_ids")

    def __init__(self, host: Graph, vertices: Iterable[int], edge_ids: Iterable[int] = ()):
        vset = frozenset(int(v) for v in vertices)
        eset = frozenset(int(e) for e in edge_ids)
        if not vset <= host.vertices:
            raise ValueError("subgraph vertices not contained in host")
        for eid in eset:
            if not host.has_edge_id(eid):
                raise ValueError(f"subgraph edge {eid} not in host")
            u, v = host.endpoints(eid)
            if u not in vset or v not in vset:
                raise ValueError(f"subgraph edge {eid} has an endpoint outside it")
        object.__setattr__(self, "host", host)
        object.__setattr__(self, "vertices", vset)
        object.__setattr__(self, "edge_ids", eset)

    def __setattr__(self, name, value):
        raise AttributeError("Subgraph is immutable")

    def is_null(self) -> bool:
        return not self.vertices and not self.edge_ids

    def to_graph(self) -> Graph:
        return Graph(
            self.vertices,
            [(e, *self.host.endpoints(e)) for e in self.edge_ids],
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgraph):
            return NotImplemented
        return (
            self.host == other.host
            and self.vertices == other.vertices
            and self.edge_ids == other.edge_ids
        )

    def __hash__(self) -> int:
        return hash((self.vertices, self.edge_ids))

    def __repr__(self) -> str:
        return f"Subgraph(|V|={len(self.vertices)}, |E|={len(self.edge_ids)})"


def whole_subgraph(g: Graph) -> Subgraph:
    return Subgraph(g, g.vertices, g.edge_ids)


def null_subgraph(g: Graph) -> Subgraph:
    return Subgraph(g, (), ())


# -- subgraph algebra ------------------------------------------------------


def _require_same_host(a: Subgraph, b: Subgraph) -> Graph:
    if a.host != b.host:
        raise ValueError("subgraph operation across different hosts")
    return a.host


def union(a: Subgraph, b: Subgraph) -> Subgraph:
    """Componentwise union of two subgraphs of the same host."""
    host = _require_same_host(a, b)
    return Subgraph(host, a.vertices | b.vertices, a.edge_ids | b.edge_ids)


def intersection(a: Subgraph, b: Subgraph) -> Subgraph:
    """Componentwise intersection of two subgraphs of the same host."""
    host = _require_same_host(a, b)
    return Subgraph(host, a.vertices & b.vertices, a.edge_ids & b.edge_ids)


def subgraph_components(h: Subgraph) -> list[Subgraph]:
    """Maximal connected pieces of ``h``, sorted by least vertex id.

    The pieces partition ``h``: they are pairwise disjoint and their
    union is ``h``.  The null subgraph yields an empty sequence.
    """
    host = h.host
    adj: dict[int, set[int]] = {v: set() for v in h.vertices}
    for eid in h.edge_ids:
        u, v = host.endpoints(eid)
        if u != v:
            adj[u].add(v)
            adj[v].add(u)
    seen: set[int] = set()
    out: list[Subgraph] = []
    for start in sorted(h.vertices):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        eids = [
            e for e in h.edge_ids
            if host.endpoints(e)[0] in comp and host.endpoints(e)[1] in comp
        ]
        out.append(Subgraph(host, comp, eids))
    return out


def subgraph_is_connected(h: Subgraph) -> bool:
    """True when ``h`` has exactly one component (null counts as not)."""
    return len(subgraph_components(h)) == 1


def boundary(g: Graph, h: Subgraph) -> frozenset[int]:
    """Vertices of ``h`` incident with an edge of ``g`` outside ``h``."""
    if h.host != g:
        raise ValueError("subgraph not hosted by the given graph")
    out = set()
    for v in h.vertices:
        for eid in g.incident_edges(v):
            if eid not in h.edge_ids:
                out.add(v)
                break
    return frozenset(out)


# -- whole-graph helpers ---------------------------------------------------


def components(g: Graph) -> list[frozenset[int]]:
    """Connected components as vertex sets, sorted by least vertex."""
    seen: set[int] = set()
    out: list[frozenset[int]] = []
    for start in sorted(g.vertices):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in g.neighbors(v):
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        out.append(frozenset(comp))
    return out


def is_connected(g: Graph) -> bool:
    return len(components(g)) == 1


def reachable_from(g: Graph, starts: Iterable[int], forbidden: Iterable[int] = ()) -> set[int]:
    """Vertices reachable from ``starts`` without entering ``forbidden``.

    Start vertices that are themselves forbidden are skipped entirely.
    """
    block = set(forbidden)
    seen: set[int] = set()
    stack = [s for s in starts if s in g.vertices and s not in block]
    seen.update(stack)
    while stack:
        v = stack.pop()
        for w in g.neighbors(v):
            if w not in seen and w not in block:
                seen.add(w)
                stack.append(w)
    return seen


def edge_ids_between(g: Graph, xs: Iterable[int], ys: Iterable[int]) -> list[int]:
    """Ids of non-loop edges with one endpoint in ``xs``, the other in ``ys``."""
    xset, yset = set(xs), set(ys)
    out = []
    for eid, u, v in g.edges():
        if u == v:
            continue
        if (u in xset and v in yset) or (u in yset and v in xset):
            out.append(eid)
    return out
