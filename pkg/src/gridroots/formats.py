"""Canonical interchange formats for graphs, models, and run artifacts.

Everything is JSON with sorted keys, two-space indentation, and a
trailing newline, so identical objects serialize byte-identically and
every emitted file round-trips exactly.  Branch maps are keyed by grid
coordinate strings ("i,j"), pattern edges by coordinate pairs
("i,j|i',j'" with the row-major smaller endpoint first).
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .errors import MalformedInput
from .extraction import ExtractionProblem, ExtractionResult
from .graph import Graph, Subgraph
from .grid import grid_edge_id, vertex_coord, vertex_id
from .instances import InstanceRecipe
from .models import Pseudomodel
from .separations import Separation


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def write_json(path: str | Path, obj: Any) -> None:
    Path(path).write_text(canonical_json(obj), encoding="utf-8")


def read_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise MalformedInput(f"no such file: {path}")
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path} is not valid JSON: {exc}")


# -- graphs and vertex sets -------------------------------------------------


def graph_to_dict(g: Graph) -> dict:
    return {
        "vertices": sorted(g.vertices),
        "edges": [[e, *g.endpoints(e)] for e in sorted(g.edge_ids)],
    }


def graph_from_dict(d: Any) -> Graph:
    try:
        vertices = [int(v) for v in d["vertices"]]
        edges = [(int(e), int(u), int(v)) for e, u, v in d["edges"]]
        return Graph(vertices, edges)
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInput(f"bad graph document: {exc}")


def vertex_set_to_dict(vs) -> dict:
    return {"vertices": sorted(vs)}


def vertex_set_from_dict(d: Any) -> frozenset[int]:
    try:
        return frozenset(int(v) for v in d["vertices"])
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInput(f"bad vertex set document: {exc}")


# -- pseudomodels ------------------------------------------------------------


def _coord_key(n: int, v: int) -> str:
    i, j = vertex_coord(n, v)
    return f"{i},{j}"


def _parse_coord(n: int, key: str) -> int:
    try:
        i, j = (int(part) for part in key.split(","))
    except ValueError:
        raise MalformedInput(f"bad grid coordinate {key!r}")
    if not (1 <= i <= n and 1 <= j <= n):
        raise MalformedInput(f"coordinate {key!r} is outside the {n}x{n} grid")
    return vertex_id(n, i, j)


def model_to_dict(m: Pseudomodel, n: int) -> dict:
    coords = [list(vertex_coord(n, v)) for v in sorted(m.pattern.vertices)]
    branches = {}
    for pv in sorted(m.branches):
        br = m.branches[pv]
        branches[_coord_key(n, pv)] = {
            "vertices": sorted(br.vertices),
            "edges": sorted(br.edge_ids),
        }
    images = {}
    for e in sorted(m.edge_images):
        u, v = m.pattern.endpoints(e)
        images[f"{_coord_key(n, u)}|{_coord_key(n, v)}"] = m.edge_images[e]
    return {"pattern": {"n": n, "coords": coords}, "branches": branches, "edgeImages": images}


def model_from_dict(d: Any, host: Graph) -> Pseudomodel:
    try:
        n = int(d["pattern"]["n"])
        coord_pairs = d["pattern"]["coords"]
        branch_docs = d["branches"]
        image_docs = d["edgeImages"]
    except (KeyError, TypeError) as exc:
        raise MalformedInput(f"bad model document: {exc}")
    vertices = []
    for pair in coord_pairs:
        if len(pair) != 2:
            raise MalformedInput(f"bad coordinate pair {pair!r}")
        i, j = int(pair[0]), int(pair[1])
        if not (1 <= i <= n and 1 <= j <= n):
            raise MalformedInput(f"coordinate {pair!r} is outside the {n}x{n} grid")
        vertices.append(vertex_id(n, i, j))
    triples = []
    images = {}
    for key in image_docs:
        parts = key.split("|")
        if len(parts) != 2:
            raise MalformedInput(f"bad pattern edge key {key!r}")
        u, v = (_parse_coord(n, part) for part in parts)
        try:
            eid = grid_edge_id(n, u, v)
        except ValueError:
            raise MalformedInput(f"pattern edge {key!r} is not a grid edge")
        triples.append((eid, min(u, v), max(u, v)))
        images[eid] = int(image_docs[key])
    try:
        pattern = Graph(vertices, triples)
    except ValueError as exc:
        raise MalformedInput(f"bad model pattern: {exc}")
    branches = {}
    for key in branch_docs:
        pv = _parse_coord(n, key)
        doc = branch_docs[key]
        try:
            branches[pv] = Subgraph(
                host,
                frozenset(int(x) for x in doc["vertices"]),
                frozenset(int(x) for x in doc["edges"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"bad branch {key!r}: {exc}")
    try:
        return Pseudomodel(host, pattern, branches, images)
    except ValueError as exc:
        raise MalformedInput(f"bad model: {exc}")


# -- separations and certificates -------------------------------------------


def separation_to_dict(s: Separation) -> dict:
    return {
        "A": {"vertices": sorted(s.a.vertices), "edges": sorted(s.a.edge_ids)},
        "B": {"vertices": sorted(s.b.vertices), "edges": sorted(s.b.edge_ids)},
    }


def separation_from_dict(d: Any, host: Graph) -> Separation:
    try:
        a = Subgraph(
            host,
            frozenset(int(x) for x in d["A"]["vertices"]),
            frozenset(int(x) for x in d["A"]["edges"]),
        )
        b = Subgraph(
            host,
            frozenset(int(x) for x in d["B"]["vertices"]),
            frozenset(int(x) for x in d["B"]["edges"]),
        )
        return Separation(a, b)
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInput(f"bad separation document: {exc}")


def certificate_to_dict(separation: Separation, row, depth: int) -> dict:
    return {
        "order": separation.order,
        "row": sorted(row),
        "depth": depth,
        "separation": separation_to_dict(separation),
    }


# -- recipes and instances ---------------------------------------------------


def recipe_to_dict(r: InstanceRecipe) -> dict:
    return {
        "kind": r.kind,
        "n": r.n,
        "g": r.g,
        "k": r.k,
        "seed": r.seed,
        "degree": r.degree,
    }


def recipe_from_dict(d: Any) -> InstanceRecipe:
    try:
        return InstanceRecipe(
            kind=str(d["kind"]),
            n=int(d["n"]),
            g=int(d["g"]),
            k=int(d["k"]),
            seed=int(d.get("seed", 0)),
            degree=int(d.get("degree", d.get("k", 1))),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInput(f"bad recipe document: {exc}")


def write_instance(problem: ExtractionProblem, out_dir: str | Path) -> dict[str, Path]:
    """Write graph/roots/model files for a problem; returns the paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        "graph": out / "graph.json",
        "roots": out / "roots.json",
        "model": out / "model.json",
    }
    write_json(paths["graph"], graph_to_dict(problem.host))
    write_json(paths["roots"], vertex_set_to_dict(problem.roots))
    write_json(paths["model"], model_to_dict(problem.model, problem.n))
    return paths


# -- extraction results and traces -------------------------------------------


def result_to_dict(res: ExtractionResult) -> dict:
    atlas = res.atlas
    w = res.witness
    return {
        "subgrid": {
            "n": atlas.n,
            "g": atlas.g,
            "k": atlas.k,
            "i0": atlas.i0,
            "j0": atlas.j0,
            "vertices": sorted(atlas.central_vertices()),
        },
        "witness": {
            "roots": sorted(w.roots),
            "labeling": {
                "n": w.labeling.n,
                "i0": w.labeling.i0,
                "j0": w.labeling.j0,
                "g": w.labeling.g,
            },
            "base": model_to_dict(w.base, res.problem.g),
            "augmented": model_to_dict(w.augmented, res.problem.g),
        },
    }


def trace_to_jsonl(trace) -> str:
    return "".join(json.dumps(record, sort_keys=True) + "\n" for record in trace)


def trace_from_jsonl(text: str) -> list[dict]:
    records = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            records.append(json.loads(line))
        except json.JSONDecodeError as exc:
            raise MalformedInput(f"trace line {lineno} is not valid JSON: {exc}")
    return records
