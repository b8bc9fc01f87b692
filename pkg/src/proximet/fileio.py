"""JSON file formats for spaces and bipartite graphs.

Space files carry either a full squared-distance matrix or rational
coordinates; rationals travel as strings "num" or "num/den".  Graph
files carry the two parts and an edge list.  Everything is re-validated
on load.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction

from .errors import BadFileFormat
from .proximity import BipartiteGraph
from .spaces import SemimetricSpace, from_rational_points, validate_space

_RATIONAL_RE = re.compile(r"^-?\d+(/[1-9]\d*)?$")


def parse_rational(value) -> Fraction:
    """Accept ints and 'num' / 'num/den' strings, nothing else."""
    if isinstance(value, bool):
        raise BadFileFormat(f"expected a rational, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str) and _RATIONAL_RE.match(value):
        return Fraction(value)
    raise BadFileFormat(f"expected a rational as 'num' or 'num/den', got {value!r}")


def format_rational(q: Fraction) -> str:
    return str(q)


def space_from_obj(obj) -> SemimetricSpace:
    if not isinstance(obj, dict):
        raise BadFileFormat("space file must hold a JSON object")
    keys = set(obj)
    if "points" not in keys:
        raise BadFileFormat("space file needs a 'points' list")
    extra = keys - {"points", "sq_dists", "coords"}
    if extra:
        raise BadFileFormat(f"unknown keys {sorted(extra)}")
    if ("sq_dists" in keys) == ("coords" in keys):
        raise BadFileFormat("space file needs exactly one of 'sq_dists' or 'coords'")
    points = obj["points"]
    if not isinstance(points, list) or not all(isinstance(p, str) for p in points):
        raise BadFileFormat("'points' must be a list of strings")
    if "sq_dists" in keys:
        rows = obj["sq_dists"]
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise BadFileFormat("'sq_dists' must be a list of rows")
        matrix = [[parse_rational(v) for v in row] for row in rows]
        return validate_space(points, matrix)
    coords = obj["coords"]
    if not isinstance(coords, list) or not all(isinstance(c, list) for c in coords):
        raise BadFileFormat("'coords' must be a list of coordinate lists")
    vecs = [[parse_rational(c) for c in vec] for vec in coords]
    return from_rational_points(vecs, points)


def space_to_obj(space: SemimetricSpace) -> dict:
    return {
        "points": list(space.points),
        "sq_dists": [[format_rational(v) for v in row] for row in space.sq],
    }


def load_space(path: str) -> SemimetricSpace:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise BadFileFormat(f"{path} is not valid JSON: {exc}") from None
    return space_from_obj(obj)


def save_space(space: SemimetricSpace, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(space_to_obj(space), fh, indent=2)
        fh.write("\n")


def graph_from_obj(obj) -> BipartiteGraph:
    if not isinstance(obj, dict):
        raise BadFileFormat("graph file must hold a JSON object")
    for key in ("part_a", "part_b", "edges"):
        if key not in obj:
            raise BadFileFormat(f"graph file needs a '{key}' list")
    extra = set(obj) - {"part_a", "part_b", "edges"}
    if extra:
        raise BadFileFormat(f"unknown keys {sorted(extra)}")
    pa, pb, edges = obj["part_a"], obj["part_b"], obj["edges"]
    if not all(isinstance(x, list) for x in (pa, pb, edges)):
        raise BadFileFormat("'part_a', 'part_b' and 'edges' must be lists")
    for e in edges:
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(v, str) for v in e)):
            raise BadFileFormat(f"edge {e!r} must be a pair of labels")
    return BipartiteGraph(tuple(pa), tuple(pb), tuple((e[0], e[1]) for e in edges))


def graph_to_obj(g: BipartiteGraph) -> dict:
    return {
        "part_a": list(g.part_a),
        "part_b": list(g.part_b),
        "edges": [[a, b] for a, b in g.edges],
    }


def load_graph(path: str) -> BipartiteGraph:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise BadFileFormat(f"{path} is not valid JSON: {exc}") from None
    return graph_from_obj(obj)


def save_graph(g: BipartiteGraph, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(graph_to_obj(g), fh, indent=2)
        fh.write("\n")
