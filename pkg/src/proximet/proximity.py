"""Nearest-point structure between subsets of a semimetric space.

The distance between subsets is the minimum over all cross pairs; in a
finite space it is always attained.  The pairs attaining it form a
bipartite graph, and the vertices of positive degree in that graph are
the frontier sets of the two sides.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import (
    DuplicateLabel,
    EmptySubset,
    InvalidBipartite,
    NotDisjoint,
    NotProper,
    UnknownLabel,
)
from .spaces import Dist, SemimetricSpace


@dataclass(frozen=True)
class BipartiteGraph:
    """Bipartite graph on two disjoint labeled parts.

    Edges are stored as (a, b) tuples with a in part_a, b in part_b,
    sorted by part positions, so equal graphs compare equal.
    """

    part_a: tuple[str, ...]
    part_b: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]

    def __post_init__(self):
        if not self.part_a or not self.part_b:
            raise InvalidBipartite("both parts must be nonempty")
        seen = set()
        for label in self.part_a + self.part_b:
            if label in seen:
                raise InvalidBipartite(f"label {label!r} appears twice")
            seen.add(label)
        ia = {p: i for i, p in enumerate(self.part_a)}
        ib = {p: i for i, p in enumerate(self.part_b)}
        normalized = set()
        for e in self.edges:
            if len(e) != 2:
                raise InvalidBipartite(f"edge {e!r} is not a pair")
            x, y = e
            if x in ia and y in ib:
                normalized.add((x, y))
            elif y in ia and x in ib:
                normalized.add((y, x))
            else:
                raise InvalidBipartite(f"edge ({x!r},{y!r}) must join the two parts")
        ordered = tuple(sorted(normalized, key=lambda e: (ia[e[0]], ib[e[1]])))
        object.__setattr__(self, "edges", ordered)

    def degree(self, label: str) -> int:
        return sum(1 for a, b in self.edges if a == label or b == label)

    def max_degree(self) -> int:
        counts: dict[str, int] = {}
        for a, b in self.edges:
            counts[a] = counts.get(a, 0) + 1
            counts[b] = counts.get(b, 0) + 1
        return max(counts.values(), default=0)

    def neighbors(self, label: str) -> tuple[str, ...]:
        if label in self.part_a:
            return tuple(b for a, b in self.edges if a == label)
        if label in self.part_b:
            return tuple(a for a, b in self.edges if b == label)
        raise UnknownLabel(label)


def same_graph(g1: BipartiteGraph, g2: BipartiteGraph) -> bool:
    """Equality up to part order: same vertex sets, same edge set."""
    return (
        set(g1.part_a) == set(g2.part_a)
        and set(g1.part_b) == set(g2.part_b)
        and set(g1.edges) == set(g2.edges)
    )


@dataclass(frozen=True)
class FrontierSets:
    """Vertices of each side that attain the distance between the sides."""

    a_side: tuple[str, ...]
    b_side: tuple[str, ...]


def _resolve(space: SemimetricSpace, labels: Iterable[str], what: str) -> list[int]:
    # labels -> sorted point indices; duplicates rejected, order by declaration
    idx = []
    seen = set()
    for label in labels:
        i = space.index(label)
        if label in seen:
            raise DuplicateLabel(label)
        seen.add(label)
        idx.append(i)
    if not idx:
        raise EmptySubset(what)
    idx.sort()
    return idx


def set_distance(space: SemimetricSpace, subset_a: Iterable[str], subset_b: Iterable[str]) -> Dist:
    """min d(a, b) over the product of two nonempty subsets.

    The subsets may overlap; a shared point gives distance zero.
    """
    ia = _resolve(space, subset_a, "first subset")
    ib = _resolve(space, subset_b, "second subset")
    m = space.sq
    best = min(m[i][j] for i in ia for j in ib)
    return Dist(best)


def best_approximations(space: SemimetricSpace, x: str, subset: Iterable[str]) -> tuple[str, ...]:
    """Points of the subset nearest to x, in declaration order."""
    xi = space.index(x)
    idx = _resolve(space, subset, "subset")
    row = space.sq[xi]
    best = min(row[i] for i in idx)
    return tuple(space.points[i] for i in idx if row[i] == best)


def _split_pairs(space, subset_a, subset_b):
    ia = _resolve(space, subset_a, "first subset")
    ib = _resolve(space, subset_b, "second subset")
    overlap = set(ia) & set(ib)
    if overlap:
        raise NotDisjoint(space.points[min(overlap)])
    m = space.sq
    best = None
    pairs: list[tuple[int, int]] = []
    for i in ia:
        row = m[i]
        for j in ib:
            v = row[j]
            if best is None or v < best:
                best = v
                pairs = [(i, j)]
            elif v == best:
                pairs.append((i, j))
    return ia, ib, pairs


def best_proximity_pairs(
    space: SemimetricSpace, subset_a: Iterable[str], subset_b: Iterable[str]
) -> tuple[tuple[str, str], ...]:
    """All cross pairs attaining the distance between two disjoint subsets."""
    _, _, pairs = _split_pairs(space, subset_a, subset_b)
    pts = space.points
    return tuple((pts[i], pts[j]) for i, j in sorted(pairs))


def proximinal_graph(
    space: SemimetricSpace, subset_a: Iterable[str], subset_b: Iterable[str]
) -> BipartiteGraph:
    """Bipartite graph whose edges are the best proximity pairs."""
    ia, ib, pairs = _split_pairs(space, subset_a, subset_b)
    pts = space.points
    return BipartiteGraph(
        tuple(pts[i] for i in ia),
        tuple(pts[j] for j in ib),
        tuple((pts[i], pts[j]) for i, j in sorted(pairs)),
    )


def frontier_sets(
    space: SemimetricSpace, subset_a: Iterable[str], subset_b: Iterable[str]
) -> FrontierSets:
    """Positive-degree vertices of the proximinal graph, per side."""
    ia, ib, pairs = _split_pairs(space, subset_a, subset_b)
    pts = space.points
    a0 = sorted({i for i, _ in pairs})
    b0 = sorted({j for _, j in pairs})
    return FrontierSets(tuple(pts[i] for i in a0), tuple(pts[j] for j in b0))


def nearest_point_graph(space: SemimetricSpace, subset_a: Iterable[str]) -> BipartiteGraph:
    """Graph joining each point outside the subset to its nearest subset points.

    The subset must be nonempty and proper; the second part is its
    complement.  An edge {a, b} means a is a best approximation of b in
    the subset.
    """
    ia = _resolve(space, subset_a, "subset")
    inside = set(ia)
    ib = [i for i in range(space.n) if i not in inside]
    if not ib:
        raise NotProper()
    m = space.sq
    pts = space.points
    edges = []
    for j in ib:
        row = m[j]
        best = min(row[i] for i in ia)
        for i in ia:
            if row[i] == best:
                edges.append((pts[i], pts[j]))
    return BipartiteGraph(
        tuple(pts[i] for i in ia),
        tuple(pts[j] for j in ib),
        tuple(edges),
    )
