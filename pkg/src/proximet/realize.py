"""Metric realizers for prescribed nearest-point structure.

Each realizer takes a bipartite graph and builds a metric space on its
vertex set whose proximinal (or nearest-point) graph is exactly the
input.  The constructions place distances in disjoint rational bands
inside [1, 2]; any values in that window satisfy the triangle
inequality outright, so the work is in choosing which pairs sit lower
than which.  Every promised property of an output is re-verified with
the public predicates and recorded in a certificate, not assumed.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DegreeTooHigh,
    NoEdges,
    NotComponentwiseCompleteBipartite,
    TooLarge,
    WrongEdgeCount,
    WrongSize,
)
from .proximity import (
    BipartiteGraph,
    best_proximity_pairs,
    nearest_point_graph,
    proximinal_graph,
    same_graph,
)
from .rigidity import is_strongly_rigid, is_weakly_rigid
from .spaces import SemimetricSpace, is_metric, is_ultrametric_space


@dataclass(frozen=True)
class Certificate:
    """Named boolean checks, in the order they were run."""

    checks: tuple[tuple[str, bool], ...]

    @property
    def ok(self) -> bool:
        return all(flag for _, flag in self.checks)

    def as_dict(self) -> dict[str, bool]:
        return dict(self.checks)


@dataclass(frozen=True)
class RealizationResult:
    space: SemimetricSpace
    part_a: tuple[str, ...]
    part_b: tuple[str, ...]
    certificate: Certificate


class _Builder:
    """Accumulates pair distance values, then squares them into a space."""

    def __init__(self, part_a: tuple[str, ...], part_b: tuple[str, ...]):
        self.points = part_a + part_b
        self.idx = {p: i for i, p in enumerate(self.points)}
        self.values: dict[tuple[int, int], Fraction] = {}

    def put(self, x: str, y: str, value: Fraction) -> None:
        i, j = self.idx[x], self.idx[y]
        if i > j:
            i, j = j, i
        self.values[(i, j)] = value

    def unassigned(self) -> list[tuple[int, int]]:
        n = len(self.points)
        return [p for p in itertools.combinations(range(n), 2) if p not in self.values]

    def space(self) -> SemimetricSpace:
        n = len(self.points)
        m = [[Fraction(0)] * n for _ in range(n)]
        for (i, j), v in self.values.items():
            m[i][j] = m[j][i] = v * v
        return SemimetricSpace(self.points, tuple(tuple(row) for row in m))


def _band(start: Fraction, width_inverse: int, k: int, count: int) -> Fraction:
    # k-th of `count` values strictly inside (start, start + 1/width_inverse)
    return start + Fraction(k, width_inverse * (count + 1))


def realize_single_edge_sr(g: BipartiteGraph) -> RealizationResult:
    """Strongly rigid metric whose proximinal graph is a given single edge.

    The edge pair gets distance 1; pairs sharing the edge's A endpoint
    or B endpoint get the next two bands; everything else lands in
    (7/4, 2).  All distances live in [1, 2] and are pairwise distinct.
    """
    if len(g.edges) != 1:
        raise WrongEdgeCount(1, len(g.edges))
    a0, b0 = g.edges[0]
    bld = _Builder(g.part_a, g.part_b)
    bld.put(a0, b0, Fraction(1))
    nb = len(g.part_b)
    k = 0
    for b in g.part_b:
        if b == b0:
            continue
        k += 1
        bld.put(a0, b, 1 + Fraction(k, 2 * nb))
    na = len(g.part_a)
    k = 0
    for a in g.part_a:
        if a == a0:
            continue
        k += 1
        bld.put(a, b0, Fraction(3, 2) + Fraction(k - 1, 4 * na))
    rest = bld.unassigned()
    for k, (i, j) in enumerate(rest, start=1):
        bld.values[(i, j)] = Fraction(7, 4) + Fraction(k, 4 * (len(rest) + 1))
    space = bld.space()
    pairs = best_proximity_pairs(space, g.part_a, g.part_b)
    cert = Certificate((
        ("metric", is_metric(space)),
        ("strongly_rigid", is_strongly_rigid(space)[0]),
        ("proximinal_graph_matches", same_graph(proximinal_graph(space, g.part_a, g.part_b), g)),
        ("unique_best_proximity_pair", pairs == ((a0, b0),)),
    ))
    return RealizationResult(space, g.part_a, g.part_b, cert)


def realize_matching_wr(g: BipartiteGraph) -> RealizationResult:
    """Weakly rigid metric realizing a given nonempty matching.

    Ties are allowed only at distance 1, one per matched pair, and two
    matched pairs share no vertex, so no point sees a repeated distance.
    """
    for v in g.part_a + g.part_b:
        d = g.degree(v)
        if d > 1:
            raise DegreeTooHigh(v, d)
    if not g.edges:
        raise NoEdges()
    matched_a = {a for a, _ in g.edges}
    matched_b = {b for _, b in g.edges}
    a_first, b_first = g.edges[0]

    bld = _Builder(g.part_a, g.part_b)
    for a, b in g.edges:
        bld.put(a, b, Fraction(1))
    loose_b = [b for b in g.part_b if b not in matched_b]
    for k, b in enumerate(loose_b, start=1):
        bld.put(a_first, b, _band(Fraction(1), 5, k, len(loose_b)))
    loose_a = [a for a in g.part_a if a not in matched_a]
    for k, a in enumerate(loose_a, start=1):
        bld.put(a, b_first, _band(Fraction(6, 5), 5, k, len(loose_a)))
    cross_rest = [
        (a, b)
        for a in g.part_a
        for b in g.part_b
        if (bld.idx[a], bld.idx[b]) not in bld.values
    ]
    for k, (a, b) in enumerate(cross_rest, start=1):
        bld.put(a, b, _band(Fraction(7, 5), 5, k, len(cross_rest)))
    intra_a = list(itertools.combinations(g.part_a, 2))
    for k, (x, y) in enumerate(intra_a, start=1):
        bld.put(x, y, _band(Fraction(8, 5), 5, k, len(intra_a)))
    intra_b = list(itertools.combinations(g.part_b, 2))
    for k, (x, y) in enumerate(intra_b, start=1):
        bld.put(x, y, _band(Fraction(9, 5), 5, k, len(intra_b)))

    space = bld.space()
    realized = proximinal_graph(space, g.part_a, g.part_b)
    cert = Certificate((
        ("metric", is_metric(space)),
        ("weakly_rigid", is_weakly_rigid(space)[0]),
        ("proximinal_graph_matches", same_graph(realized, g)),
        ("max_degree_le_1", realized.max_degree() <= 1),
    ))
    return RealizationResult(space, g.part_a, g.part_b, cert)


def _components(g: BipartiteGraph) -> list[tuple[set[str], set[str]]]:
    # connected components of the positive-degree part, as (A side, B side)
    adj: dict[str, set[str]] = {}
    for a, b in g.edges:
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    seen: set[str] = set()
    comps = []
    for start in g.part_a + g.part_b:
        if start in seen or start not in adj:
            continue
        stack = [start]
        seen.add(start)
        members = set()
        while stack:
            v = stack.pop()
            members.add(v)
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append((members & set(g.part_a), members & set(g.part_b)))
    return comps


def realize_ultrametric(g: BipartiteGraph) -> RealizationResult:
    """Ultrametric whose proximinal graph is the given graph.

    Requires the positive-degree part to be a disjoint union of complete
    bipartite components.  Edges get distance 1, same-part pairs inside
    one component 1/2, and every other pair 2; the strong triangle
    inequality holds for all value patterns these three levels can form.
    """
    if not g.edges:
        raise NoEdges()
    comps = _components(g)
    edge_set = set(g.edges)
    comp_of: dict[str, int] = {}
    for cid, (ca, cb) in enumerate(comps):
        for a in sorted(ca):
            for b in sorted(cb):
                if (a, b) not in edge_set:
                    raise NotComponentwiseCompleteBipartite(a, b)
        for v in ca | cb:
            comp_of[v] = cid

    bld = _Builder(g.part_a, g.part_b)
    half, one, two = Fraction(1, 2), Fraction(1), Fraction(2)
    for x, y in itertools.combinations(bld.points, 2):
        if (x, y) in edge_set or (y, x) in edge_set:
            bld.put(x, y, one)
        elif (
            x in comp_of
            and y in comp_of
            and comp_of[x] == comp_of[y]
            and ((x in g.part_a) == (y in g.part_a))
        ):
            bld.put(x, y, half)
        else:
            bld.put(x, y, two)
    space = bld.space()
    cert = Certificate((
        ("ultrametric", is_ultrametric_space(space)),
        ("proximinal_graph_matches", same_graph(proximinal_graph(space, g.part_a, g.part_b), g)),
    ))
    return RealizationResult(space, g.part_a, g.part_b, cert)


@dataclass(frozen=True)
class ConjectureProbe:
    """Outcome of testing one graph against the two open-question conditions.

    realizable: a strongly rigid metric was built and verified whose
    nearest-point graph is the input.  star_form: every component of the
    input is a star centered on the A side (so every B vertex has degree
    one and no vertex is isolated).
    """

    realizable: bool
    star_form: bool
    space: SemimetricSpace | None


def explore_conjecture(g: BipartiteGraph) -> ConjectureProbe:
    """Try to realize a graph as a nearest-point graph; compare with star shape.

    The construction makes all distances distinct: edges in (1, 11/10),
    other cross pairs in (6/5, 13/10), pairs inside A in (7/5, 3/2),
    pairs inside B in (8/5, 17/10).  The verdicts are computed
    independently: the built space's nearest-point graph is compared
    against the input, and the star condition is read off the input.
    """
    adj_b: dict[str, int] = {b: 0 for b in g.part_b}
    for _, b in g.edges:
        adj_b[b] += 1
    comps = _components(g)
    covered = set().union(*[ca | cb for ca, cb in comps]) if comps else set()
    star_form = (
        all(len(ca) == 1 and len(cb) >= 1 for ca, cb in comps)
        and all(deg == 1 for deg in adj_b.values())
        and covered == set(g.part_a) | set(g.part_b)
    )

    bld = _Builder(g.part_a, g.part_b)
    edges = list(g.edges)
    for k, (a, b) in enumerate(edges, start=1):
        bld.put(a, b, _band(Fraction(1), 10, k, len(edges)))
    non_edges = [
        (a, b)
        for a in g.part_a
        for b in g.part_b
        if (bld.idx[a], bld.idx[b]) not in bld.values
    ]
    for k, (a, b) in enumerate(non_edges, start=1):
        bld.put(a, b, _band(Fraction(6, 5), 10, k, len(non_edges)))
    intra_a = list(itertools.combinations(g.part_a, 2))
    for k, (x, y) in enumerate(intra_a, start=1):
        bld.put(x, y, _band(Fraction(7, 5), 10, k, len(intra_a)))
    intra_b = list(itertools.combinations(g.part_b, 2))
    for k, (x, y) in enumerate(intra_b, start=1):
        bld.put(x, y, _band(Fraction(8, 5), 10, k, len(intra_b)))
    space = bld.space()
    realized = nearest_point_graph(space, g.part_a)
    realizable = (
        same_graph(realized, g)
        and is_metric(space)
        and is_strongly_rigid(space)[0]
    )
    return ConjectureProbe(realizable, star_form, space if realizable else None)


@dataclass(frozen=True)
class ConjectureMismatch:
    part_a: tuple[str, ...]
    part_b: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    realizable: bool
    star_form: bool


@dataclass(frozen=True)
class ConjectureScan:
    """Tabulated sweep over small bipartite graphs up to part-preserving isomorphism."""

    max_a: int
    max_b: int
    rows: tuple[tuple[int, int, int, int], ...]  # (|A|, |B|, classes, agreements)
    mismatches: tuple[ConjectureMismatch, ...]

    @property
    def classes(self) -> int:
        return sum(r[2] for r in self.rows)

    @property
    def agreements(self) -> int:
        return sum(r[3] for r in self.rows)


def _canonical_masks(na: int, nb: int) -> list[int]:
    # edge sets as bitmasks (bit i*nb+j for edge a_i b_j), keeping the
    # least mask of each orbit under independent part permutations
    remaps = []
    for pa in itertools.permutations(range(na)):
        for pb in itertools.permutations(range(nb)):
            remaps.append([pa[i] * nb + pb[j] for i in range(na) for j in range(nb)])
    keep = []
    for mask in range(1 << (na * nb)):
        canon = mask
        for mp in remaps:
            rm = 0
            t = mask
            while t:
                low = t & -t
                rm |= 1 << mp[low.bit_length() - 1]
                t ^= low
            if rm < canon:
                canon = rm
                break  # a smaller image exists, mask is not canonical
        if canon == mask:
            keep.append(mask)
    return keep


def scan_conjecture(max_a: int = 3, max_b: int = 3) -> ConjectureScan:
    """Exhaustive probe of all bipartite shapes with parts up to the bounds.

    Graphs are enumerated up to part-preserving isomorphism.  Expected
    picture: realizability agrees with the star condition except on
    graphs whose only defect is isolated A vertices, which are realizable
    but not star-shaped.
    """
    if max_a < 1 or max_b < 1:
        raise WrongSize(f"part bounds must be at least 1, got ({max_a}, {max_b})")
    if max_a * max_b > 12:
        raise TooLarge("conjecture scan bounds (|A| times |B|)", 12, max_a * max_b)
    rows = []
    mismatches = []
    for na in range(1, max_a + 1):
        for nb in range(1, max_b + 1):
            part_a = tuple(f"a{i + 1}" for i in range(na))
            part_b = tuple(f"b{j + 1}" for j in range(nb))
            classes = 0
            agree = 0
            for mask in _canonical_masks(na, nb):
                edges = tuple(
                    (part_a[p // nb], part_b[p % nb])
                    for p in range(na * nb)
                    if (mask >> p) & 1
                )
                g = BipartiteGraph(part_a, part_b, edges)
                probe = explore_conjecture(g)
                classes += 1
                if probe.realizable == probe.star_form:
                    agree += 1
                else:
                    mismatches.append(
                        ConjectureMismatch(part_a, part_b, g.edges, probe.realizable, probe.star_form)
                    )
            rows.append((na, nb, classes, agree))
    return ConjectureScan(max_a, max_b, tuple(rows), tuple(mismatches))
