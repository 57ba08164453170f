"""Deterministic instance generators for the extraction pipeline.

Three recipe kinds: the bare grid with an identity model, the grid plus
fresh root vertices attached to seeded row-1 columns, and the latter
perturbed with extra random edges.  All randomness flows from the recipe
seed, so an identical recipe always yields an identical instance.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .extraction import ExtractionProblem, check_hypothesis
from .graph import Graph, Subgraph
from .grid import grid_graph, vertex_id
from .models import Pseudomodel, identity_grid_model
from .errors import MalformedInput

RECIPE_KINDS = ("identity-grid", "grid-plus-roots", "random-attachment")
GENERATION_RETRIES = 32
BREAK_MODES = ("detach", "hang")


@dataclass(frozen=True)
class InstanceRecipe:
    """Parameters that fully determine one generated instance."""

    kind: str
    n: int
    g: int
    k: int
    seed: int = 0
    degree: int = 2

    def __post_init__(self):
        if self.kind not in RECIPE_KINDS:
            raise MalformedInput(f"unknown recipe kind {self.kind!r}")
        if self.degree < self.k:
            raise MalformedInput(
                f"attachment degree {self.degree} must be at least k={self.k}"
            )


def identity_problem(n: int, g: int, k: int) -> ExtractionProblem:
    """The n x n grid modelling itself, rooted at the first k of row 1."""
    model = identity_grid_model(n)
    roots = frozenset(vertex_id(n, 1, j) for j in range(1, k + 1))
    return ExtractionProblem(model.host, roots, model, n, g, k)


def grid_plus_roots_problem(
    n: int,
    g: int,
    k: int,
    columns: list[tuple[int, ...]],
    chords: list[tuple[int, int]] | None = None,
) -> ExtractionProblem:
    """Grid plus k fresh roots wired to explicit row-1 columns.

    Root i gets id n*n+1+i and one edge per listed column; edge ids
    continue past the grid's.  Optional chords add further grid-to-grid
    edges after the attachments.
    """
    grid = grid_graph(n)
    root_ids = [n * n + 1 + i for i in range(k)]
    vertices = sorted(grid.vertices) + root_ids
    triples = [(e, *grid.endpoints(e)) for e in sorted(grid.edge_ids)]
    next_eid = grid.num_edges + 1
    for i, cols in enumerate(columns):
        for c in sorted(cols):
            triples.append((next_eid, root_ids[i], vertex_id(n, 1, c)))
            next_eid += 1
    for u, v in chords or []:
        triples.append((next_eid, u, v))
        next_eid += 1
    host = Graph(vertices, triples)
    branches = {v: Subgraph(host, frozenset({v}), frozenset()) for v in grid.vertices}
    model = Pseudomodel(host, grid_graph(n), branches, {e: e for e in grid.edge_ids})
    return ExtractionProblem(host, frozenset(root_ids), model, n, g, k)


def _attachment_columns(rng: random.Random, n: int, k: int, degree: int) -> list[tuple[int, ...]]:
    """Seeded column choices, pairwise distinct across the k roots."""
    chosen: list[tuple[int, ...]] = []
    while len(chosen) < k:
        cols = tuple(sorted(rng.sample(range(1, n + 1), degree)))
        if cols not in chosen:
            chosen.append(cols)
    return chosen


def _chords(rng: random.Random, n: int, count: int) -> list[tuple[int, int]]:
    grid = grid_graph(n)
    out: list[tuple[int, int]] = []
    while len(out) < count:
        u, v = rng.sample(range(1, n * n + 1), 2)
        u, v = min(u, v), max(u, v)
        if v in grid.neighbors(u) or (u, v) in out:
            continue
        out.append((u, v))
    return out


def generate_instance(recipe: InstanceRecipe) -> ExtractionProblem:
    """Instantiate a recipe; random kinds are certified after generation.

    Attachment randomness cannot guarantee the root-connectivity
    hypothesis by construction, so those instances are checked with
    ``check_hypothesis`` and regenerated under an incremented sub-seed,
    a bounded number of times.
    """
    if recipe.kind == "identity-grid":
        return identity_problem(recipe.n, recipe.g, recipe.k)
    last = None
    for attempt in range(GENERATION_RETRIES):
        rng = random.Random(f"{recipe.kind}:{recipe.seed}:{attempt}")
        columns = _attachment_columns(rng, recipe.n, recipe.k, recipe.degree)
        chords = None
        if recipe.kind == "random-attachment":
            chords = _chords(rng, recipe.n, recipe.degree)
        problem = grid_plus_roots_problem(recipe.n, recipe.g, recipe.k, columns, chords)
        verdict = check_hypothesis(problem)
        if verdict.holds:
            return problem
        last = verdict
    raise RuntimeError(
        f"instance generation exhausted {GENERATION_RETRIES} retries; "
        f"last certificate: order {last.separation.order} at row {last.row}"
    )


def break_instance(problem: ExtractionProblem, mode: str, seed: int) -> ExtractionProblem:
    """Deliberately violate the hypothesis of a grid-plus-roots instance.

    ``detach`` strips every attachment edge from a seeded nonempty set of
    roots; ``hang`` reroutes all roots through one shared row-1 vertex,
    so a single cut vertex pinches the whole root set off.  Only applies
    to instances whose roots are fresh non-grid vertices, since breaking
    grid edges would invalidate the model rather than the hypothesis.
    """
    if mode not in BREAK_MODES:
        raise MalformedInput(f"unknown break mode {mode!r}")
    n = problem.n
    roots = sorted(problem.roots)
    if any(z <= n * n for z in roots):
        raise MalformedInput("break_instance needs roots outside the grid")
    rng = random.Random(f"break:{mode}:{seed}")
    host = problem.host
    if mode == "detach":
        victims = rng.sample(roots, rng.randrange(1, len(roots) + 1))
        for z in victims:
            for e in sorted(host.incident_edges(z)):
                host = host.delete_edge(e)
    else:
        middleman = vertex_id(n, 1, rng.randrange(1, n + 1))
        for z in roots:
            for e in sorted(host.incident_edges(z)):
                host = host.delete_edge(e)
        next_eid = max(problem.host.edge_ids) + 1
        triples = [(e, *host.endpoints(e)) for e in sorted(host.edge_ids)]
        for z in roots:
            triples.append((next_eid, z, middleman))
            next_eid += 1
        host = Graph(sorted(host.vertices), triples)
    branches = {
        pv: Subgraph(host, br.vertices, br.edge_ids)
        for pv, br in problem.model.branches.items()
    }
    model = Pseudomodel(host, problem.model.pattern, branches, problem.model.edge_images)
    return ExtractionProblem(host, problem.roots, model, n, problem.g, problem.k)
