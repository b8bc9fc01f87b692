"""Distance-order digraphs.

The positive distances of a finite space totally preorder the unordered
point pairs.  Grouping pairs by value and sorting groups by descending
distance gives a layered digraph: one level per distinct value, with an
arc from every vertex of a level to every vertex of the next (strictly
smaller) level.  The sequence of level sizes determines such a digraph
up to isomorphism, so the size sequence doubles as a certificate.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import TooLarge, TooSmall, UnknownName
from .proximity import BipartiteGraph
from .spaces import Dist, SemimetricSpace

LevelSignature = tuple[int, ...]

# reference level signatures, keyed by the names the CLI accepts
_REFERENCE_SIGNATURES: dict[str, LevelSignature] = {
    "Di0": (1, 1, 1),
    "Di1": (1, 1, 1, 1, 1, 1),
    "Di2": (2, 1, 1, 1, 1),
    "Di3": (1, 2, 1, 1, 1),
    "Di4": (1, 1, 2, 1, 1),
}

# signatures a four-point subspace may have inside a space where every
# pair of disjoint subsets has at most one best proximity pair
ALLOWED_FOUR_POINT_SIGNATURES = frozenset(
    sig for name, sig in _REFERENCE_SIGNATURES.items() if name != "Di0"
)


def pair_name(x: str, y: str) -> str:
    return "{%s,%s}" % (x, y)


@dataclass(frozen=True)
class HasseDigraph:
    """Layered digraph of the distance order.

    ``levels`` lists vertex names per level, largest distance first.
    ``values`` carries the level distances for digraphs built from a
    space and is None for abstract reference digraphs.  Arcs are fully
    determined by the levels and are generated on demand.
    """

    levels: tuple[tuple[str, ...], ...]
    values: tuple[Dist, ...] | None = None

    def __post_init__(self):
        if not self.levels or any(not lv for lv in self.levels):
            raise ValueError("levels must be nonempty")
        names = [v for lv in self.levels for v in lv]
        if len(names) != len(set(names)):
            raise ValueError("vertex names must be distinct")
        if self.values is not None:
            if len(self.values) != len(self.levels):
                raise ValueError("one value per level required")
            for hi, lo in zip(self.values, self.values[1:]):
                if not hi > lo:
                    raise ValueError("level values must be strictly decreasing")

    @property
    def vertices(self) -> tuple[str, ...]:
        return tuple(v for lv in self.levels for v in lv)

    @property
    def arcs(self) -> tuple[tuple[str, str], ...]:
        out = []
        for upper, lower in zip(self.levels, self.levels[1:]):
            for u in upper:
                for v in lower:
                    out.append((u, v))
        return tuple(out)


def distance_hasse(space: SemimetricSpace) -> HasseDigraph:
    """Layered digraph of a space's pair distances, one vertex per pair.

    Vertices are named "{x,y}" with x before y in declaration order;
    within a level, pairs are sorted by their index pairs.  Needs at
    least two points so there is at least one pair.
    """
    if space.n < 2:
        raise TooSmall(2, space.n)
    groups: dict = {}
    m = space.sq
    for i, j in space.pair_indices():
        groups.setdefault(m[i][j], []).append((i, j))
    pts = space.points
    levels = []
    values = []
    for value in sorted(groups, reverse=True):
        level = tuple(pair_name(pts[i], pts[j]) for i, j in sorted(groups[value]))
        levels.append(level)
        values.append(Dist(value))
    return HasseDigraph(tuple(levels), tuple(values))


def level_signature(digraph: HasseDigraph) -> LevelSignature:
    """Sizes of the levels, largest distance first."""
    return tuple(len(lv) for lv in digraph.levels)


def reference_digraph(name: str) -> HasseDigraph:
    """One of the five reference digraphs, with synthetic vertex names."""
    key = name.strip().capitalize() if name.strip().lower().startswith("di") else name
    sig = _REFERENCE_SIGNATURES.get(key)
    if sig is None:
        raise UnknownName(name, sorted(_REFERENCE_SIGNATURES))
    counter = itertools.count(1)
    levels = tuple(tuple(f"v{next(counter)}" for _ in range(size)) for size in sig)
    return HasseDigraph(levels, None)


def digraphs_isomorphic(d1: HasseDigraph, d2: HasseDigraph) -> bool:
    """Isomorphism of layered digraphs, decided by the level signatures.

    Sound because levels are recoverable from the arc structure (sources
    form the top level, their out-neighbors the next, and so on), and
    within this class any level-preserving vertex bijection is an
    isomorphism.
    """
    return level_signature(d1) == level_signature(d2)


def digraphs_isomorphic_bruteforce(d1: HasseDigraph, d2: HasseDigraph, cap: int = 8) -> bool:
    """Permutation-search digraph isomorphism, independent of the levels."""
    v1, v2 = d1.vertices, d2.vertices
    if len(v1) > cap or len(v2) > cap:
        raise TooLarge("digraph vertex count", cap, max(len(v1), len(v2)))
    if len(v1) != len(v2) or len(d1.arcs) != len(d2.arcs):
        return False
    i1 = {v: i for i, v in enumerate(v1)}
    i2 = {v: i for i, v in enumerate(v2)}
    a1 = [(i1[u], i1[v]) for u, v in d1.arcs]
    a2 = {(i2[u], i2[v]) for u, v in d2.arcs}
    for perm in itertools.permutations(range(len(v2))):
        if all((perm[u], perm[v]) in a2 for u, v in a1):
            return True
    return False


def _quote(name: str) -> str:
    return '"%s"' % name.replace("\\", "\\\\").replace('"', '\\"')


def export_dot(obj) -> str:
    """Graphviz text for a distance digraph or a bipartite graph."""
    lines: list[str] = []
    if isinstance(obj, HasseDigraph):
        lines.append("digraph distance_order {")
        lines.append("  rankdir=TB;")
        for k, level in enumerate(obj.levels):
            names = " ".join(f"{_quote(v)};" for v in level)
            lines.append(f"  {{ rank=same; {names} }}  // level {k}")
        for u, v in obj.arcs:
            lines.append(f"  {_quote(u)} -> {_quote(v)};")
        lines.append("}")
    elif isinstance(obj, BipartiteGraph):
        lines.append("graph bipartite {")
        lines.append("  rankdir=LR;")
        lines.append("  subgraph cluster_a {")
        lines.append('    label="A";')
        for v in obj.part_a:
            lines.append(f"    {_quote(v)};")
        lines.append("  }")
        lines.append("  subgraph cluster_b {")
        lines.append('    label="B";')
        for v in obj.part_b:
            lines.append(f"    {_quote(v)};")
        lines.append("  }")
        for a, b in obj.edges:
            lines.append(f"  {_quote(a)} -- {_quote(b)};")
        lines.append("}")
    else:
        raise TypeError(f"cannot export {type(obj).__name__} to DOT")
    return "\n".join(lines) + "\n"
