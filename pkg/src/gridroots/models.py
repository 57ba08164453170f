"""Pseudomodels and models of a pattern graph inside a host graph.

A pseudomodel assigns to every pattern vertex a non-null branch subgraph
of the host (all branches pairwise vertex-disjoint) and to every pattern
edge a distinct host edge whose endpoints land in the branches of the
pattern edge's ends.  A model is a pseudomodel whose branches are all
connected; it witnesses minor containment.

The augmentation types at the bottom describe the target shape of the
extraction pipeline: a grid model whose first ``k`` first-column
branches have been enlarged to capture prescribed root vertices, with
everything else untouched.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .graph import Graph, Subgraph, subgraph_is_connected
from .grid import grid_graph, vertex_id
from .validation import ValidationReport


class Pseudomodel:
    """A branch/edge-image assignment, not validated at construction.

    Validation is a separate, report-producing step so that broken
    inputs can be diagnosed in full rather than rejected piecemeal.
    Structural requirements (branches are subgraphs of the host, maps
    are keyed by integers) are still enforced here.
    """

    __slots__ = ("host", "pattern", "branches", "edge_images")

    def __init__(
        self,
        host: Graph,
        pattern: Graph,
        branches: Mapping[int, Subgraph],
        edge_images: Mapping[int, int],
    ):
        for v, br in branches.items():
            if br.host != host:
                raise ValueError(f"branch of pattern vertex {v} lives in a different host")
        object.__setattr__(self, "host", host)
        object.__setattr__(self, "pattern", pattern)
        object.__setattr__(self, "branches", dict(branches))
        object.__setattr__(self, "edge_images", {int(e): int(f) for e, f in edge_images.items()})

    def __setattr__(self, name, value):
        raise AttributeError("Pseudomodel is immutable")

    def branch(self, v: int) -> Subgraph:
        return self.branches[v]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Pseudomodel):
            return NotImplemented
        return (
            self.host == other.host
            and self.pattern == other.pattern
            and self.branches == other.branches
            and self.edge_images == other.edge_images
        )

    def __repr__(self) -> str:
        return (
            f"Pseudomodel(pattern |V|={self.pattern.num_vertices}, "
            f"|branches|={len(self.branches)})"
        )


def validate_pseudomodel(p: Pseudomodel) -> ValidationReport:
    """Check every pseudomodel requirement, reporting all violations.

    Codes: ``branch-missing``, ``branch-unknown``, ``branch-null``,
    ``branch-overlap``, ``edge-image-missing``, ``edge-image-unknown``,
    ``edge-image-absent``, ``edge-image-duplicate``,
    ``edge-image-in-branch``, ``edge-ends``.
    """
    report = ValidationReport()
    pattern = p.pattern
    for v in sorted(pattern.vertices):
        if v not in p.branches:
            report.add("branch-missing", f"pattern vertex {v} has no branch")
    for v in sorted(p.branches):
        if v not in pattern.vertices:
            report.add("branch-unknown", f"branch key {v} is not a pattern vertex")
        elif p.branches[v].is_null():
            report.add("branch-null", f"branch of pattern vertex {v} is null")
    keys = sorted(v for v in p.branches if v in pattern.vertices)
    for idx, v in enumerate(keys):
        bv = p.branches[v].vertices
        for w in keys[idx + 1:]:
            shared = bv & p.branches[w].vertices
            if shared:
                report.add(
                    "branch-overlap",
                    f"branches of {v} and {w} share vertices {sorted(shared)}",
                )
    seen_hosts: dict[int, int] = {}
    for e in sorted(pattern.edge_ids):
        if e not in p.edge_images:
            report.add("edge-image-missing", f"pattern edge {e} has no host edge")
    for e in sorted(p.edge_images):
        if e not in pattern.edge_ids:
            report.add("edge-image-unknown", f"edge image key {e} is not a pattern edge")
            continue
        f = p.edge_images[e]
        if not p.host.has_edge_id(f):
            report.add("edge-image-absent", f"host edge {f} for pattern edge {e} does not exist")
            continue
        if f in seen_hosts:
            report.add(
                "edge-image-duplicate",
                f"host edge {f} images both pattern edges {seen_hosts[f]} and {e}",
            )
        else:
            seen_hosts[f] = e
        for v, br in p.branches.items():
            if f in br.edge_ids:
                report.add(
                    "edge-image-in-branch",
                    f"host edge {f} (image of pattern edge {e}) lies inside branch {v}",
                )
        u, v = pattern.endpoints(e)
        x, y = p.host.endpoints(f)
        bu = p.branches.get(u)
        bv = p.branches.get(v)
        if bu is None or bv is None:
            continue
        if u == v:
            if not (x in bu.vertices and y in bu.vertices):
                report.add(
                    "edge-ends",
                    f"loop image {f} of pattern edge {e} has an end outside branch {u}",
                )
        elif not (
            (x in bu.vertices and y in bv.vertices)
            or (x in bv.vertices and y in bu.vertices)
        ):
            report.add(
                "edge-ends",
                f"host edge {f} does not join the branches of pattern edge {e}={u}~{v}",
            )
    return report


def validate_model(p: Pseudomodel) -> ValidationReport:
    """Pseudomodel validation plus per-branch connectivity."""
    report = validate_pseudomodel(p)
    for v in sorted(p.branches):
        if v in p.pattern.vertices and not p.branches[v].is_null():
            if not subgraph_is_connected(p.branches[v]):
                report.add("branch-disconnected", f"branch of pattern vertex {v} is disconnected")
    return report


def image_of_vertices(p: Pseudomodel, vertices: Iterable[int]) -> frozenset[int]:
    """Union of the branch vertex sets over a pattern vertex set."""
    out: set[int] = set()
    for v in vertices:
        if v not in p.branches:
            raise KeyError(f"unknown pattern vertex {v}")
        out |= p.branches[v].vertices
    return frozenset(out)


def image_of_subgraph(p: Pseudomodel, f: Subgraph) -> Subgraph:
    """Host subgraph formed by branch subgraphs and edge images over ``f``."""
    if f.host != p.pattern:
        raise ValueError("pattern subgraph does not live in the model's pattern")
    verts: set[int] = set()
    eids: set[int] = set()
    for v in f.vertices:
        if v not in p.branches:
            raise KeyError(f"unknown pattern vertex {v}")
        verts |= p.branches[v].vertices
        eids |= p.branches[v].edge_ids
    for e in f.edge_ids:
        if e not in p.edge_images:
            raise KeyError(f"unknown pattern edge {e}")
        host_edge = p.edge_images[e]
        x, y = p.host.endpoints(host_edge)
        verts.update((x, y))
        eids.add(host_edge)
    return Subgraph(p.host, verts, eids)


def restrict(p: Pseudomodel, h: Subgraph) -> Pseudomodel:
    """Restriction of ``p`` to a subgraph of its pattern."""
    if h.host != p.pattern:
        raise ValueError("restriction target is not a subgraph of the pattern")
    pattern = h.to_graph()
    branches = {v: p.branches[v] for v in pattern.vertices if v in p.branches}
    images = {e: p.edge_images[e] for e in pattern.edge_ids if e in p.edge_images}
    return Pseudomodel(p.host, pattern, branches, images)


def identity_grid_model(n: int) -> Pseudomodel:
    """The identity model of the ``n x n`` grid in itself."""
    g = grid_graph(n)
    branches = {v: Subgraph(g, {v}) for v in g.vertices}
    images = {e: e for e in g.edge_ids}
    return Pseudomodel(g, g, branches, images)


# -- augmentation ----------------------------------------------------------


@dataclass(frozen=True)
class GridLabeling:
    """Identifies a ``g x g`` block of the big grid with the standard grid.

    Standard grid vertex ``(a, b)`` (1-based) corresponds to the big-grid
    vertex at row ``i0 + a - 1``, column ``j0 + b - 1``.
    """

    n: int
    i0: int
    j0: int
    g: int

    def big_vertex(self, a: int, b: int) -> int:
        if not (1 <= a <= self.g and 1 <= b <= self.g):
            raise ValueError(f"({a},{b}) outside the {self.g}x{self.g} block")
        return vertex_id(self.n, self.i0 + a - 1, self.j0 + b - 1)

    def small_vertex(self, a: int, b: int) -> int:
        if not (1 <= a <= self.g and 1 <= b <= self.g):
            raise ValueError(f"({a},{b}) outside the {self.g}x{self.g} block")
        return vertex_id(self.g, a, b)


@dataclass(frozen=True)
class AugmentationWitness:
    """A claimed root augmentation of a grid model.

    ``base`` and ``augmented`` are pseudomodels of the standard
    ``g x g`` grid in the same host; ``roots`` is the vertex set the
    first ``len(roots)`` first-column branches must capture.
    """

    base: Pseudomodel
    augmented: Pseudomodel
    roots: frozenset[int]
    labeling: GridLabeling


def apply_augmentation(
    base: Pseudomodel,
    paths: Sequence[Sequence[int]],
    roots: Iterable[int],
    labeling: GridLabeling,
) -> Pseudomodel:
    """Graft root-to-grid paths onto the first-column branches.

    ``paths[i]`` must start at a root, end at a vertex of the branch of
    first-column vertex ``(i + 1, 1)``, touch that branch only at its
    final vertex, avoid every other branch of ``base`` entirely, and be
    vertex-disjoint from the other paths.  Length-0 paths (a root
    already inside the branch) are legal.  Violations raise ValueError
    with the offending path index.
    """
    root_set = frozenset(roots)
    k = len(root_set)
    if len(paths) != k:
        raise ValueError(f"expected {k} paths, got {len(paths)}")
    host = base.host
    branch_vertices = {
        v: base.branches[v].vertices for v in base.branches if v in base.pattern.vertices
    }
    seen: set[int] = set()
    for i, path in enumerate(paths):
        if not path:
            raise ValueError(f"path {i} is empty")
        if path[0] not in root_set:
            raise ValueError(f"path {i} does not start at a root")
        target_branch = labeling.small_vertex(i + 1, 1)
        tv = branch_vertices[target_branch]
        if path[-1] not in tv:
            raise ValueError(f"path {i} does not end in the branch of column-1 vertex {i + 1}")
        for v in path[:-1]:
            for w, bv in branch_vertices.items():
                if v in bv:
                    raise ValueError(f"path {i} passes through branch {w} before its end")
        overlap = set(path) & seen
        if overlap:
            raise ValueError(f"path {i} shares vertices {sorted(overlap)} with another path")
        seen |= set(path)
    branches = dict(base.branches)
    for i, path in enumerate(paths):
        key = labeling.small_vertex(i + 1, 1)
        extra_edges = []
        for a, b in zip(path, path[1:]):
            eids = [
                e for e in host.incident_edges(a)
                if not host.is_loop(e) and b in host.endpoints(e)
            ]
            if not eids:
                raise ValueError(f"path {i} uses a non-edge {a}~{b}")
            extra_edges.append(min(eids))
        branches[key] = Subgraph(
            host,
            branches[key].vertices | set(path),
            branches[key].edge_ids | set(extra_edges),
        )
    return Pseudomodel(host, base.pattern, branches, dict(base.edge_images))


def check_augmentation(w: AugmentationWitness) -> ValidationReport:
    """Verify every requirement the augmented model must satisfy.

    Codes: ``aug-pattern``, ``aug-branch-changed``, ``aug-branch-shrunk``,
    ``aug-root-missing``, ``aug-edge-image`` plus everything
    :func:`validate_model` can emit for the augmented model.
    """
    report = ValidationReport()
    g = w.labeling.g
    k = len(w.roots)
    std = grid_graph(g)
    if w.base.pattern != std or w.augmented.pattern != std:
        report.add("aug-pattern", f"witness patterns must both be the standard {g}x{g} grid")
        return report
    if w.base.host != w.augmented.host:
        report.add("aug-pattern", "base and augmented models live in different hosts")
        return report
    for a in range(1, g + 1):
        for b in range(1, g + 1):
            v = w.labeling.small_vertex(a, b)
            base_br = w.base.branches.get(v)
            aug_br = w.augmented.branches.get(v)
            if base_br is None or aug_br is None:
                report.add("aug-branch-changed", f"branch of ({a},{b}) missing from a side")
                continue
            if b >= 2 or a > k:
                if base_br != aug_br:
                    report.add(
                        "aug-branch-changed",
                        f"branch of ({a},{b}) differs but must be untouched",
                    )
            else:
                if not (
                    base_br.vertices <= aug_br.vertices
                    and base_br.edge_ids <= aug_br.edge_ids
                ):
                    report.add(
                        "aug-branch-shrunk",
                        f"augmented branch of ({a},1) does not contain the base branch",
                    )
                if not (aug_br.vertices & w.roots):
                    report.add(
                        "aug-root-missing",
                        f"augmented branch of ({a},1) contains no root vertex",
                    )
    if w.base.edge_images != w.augmented.edge_images:
        report.add("aug-edge-image", "edge images differ between base and augmented models")
    return report.merged(validate_model(w.augmented))
