"""Order-preserving comparison of finite semimetric spaces.

A weak similarity is a bijection between point sets preserving the
order and tie pattern of distances.  On finite spaces that is the same
as preserving pair ranks (position of each distance in the ascending
list of distinct values), which keeps the whole search in small-integer
arithmetic.  A similarity is the stronger notion with a single scaling
ratio; an isometry has ratio one.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotABijection, SizeMismatch, TooLarge
from .spaces import Dist, SemimetricSpace, distance_ranks, validate_space


@dataclass(frozen=True)
class Bijection:
    """A point bijection as (source, target) pairs in source order."""

    pairs: tuple[tuple[str, str], ...]

    def __post_init__(self):
        srcs = [s for s, _ in self.pairs]
        tgts = [t for _, t in self.pairs]
        if len(set(srcs)) != len(srcs):
            raise NotABijection("a source appears twice")
        if len(set(tgts)) != len(tgts):
            raise NotABijection("a target appears twice")

    def as_dict(self) -> dict[str, str]:
        return dict(self.pairs)

    def inverse(self) -> "Bijection":
        return Bijection(tuple((t, s) for s, t in self.pairs))

    def apply(self, label: str) -> str:
        for s, t in self.pairs:
            if s == label:
                return t
        raise KeyError(label)


@dataclass(frozen=True)
class SimilarityVerdict:
    """Outcome of a similarity search.

    kind is one of none, weak, similarity, isometry.  ratio_sq is the
    squared scaling ratio for (iso)similarities.  value_map matches the
    ascending distinct values of the two spaces, source first.
    """

    kind: str
    witness: Bijection | None = None
    ratio_sq: Fraction | None = None
    value_map: tuple[tuple[Dist, Dist], ...] | None = None


_NONE = SimilarityVerdict("none")


def x_star() -> SemimetricSpace:
    """The canonical four-point space with one tied non-adjacent pair.

    Its distance digraph has level sizes (1,1,2,1,1) and it is the
    template whose weak-similarity class marks spaces where no-isosceles
    rigidity holds but unique best proximity fails.
    """
    return validate_space(
        ("a1", "b1", "a2", "b2"),
        (
            (0, 9, 25, 1),
            (9, 0, 4, 16),
            (25, 4, 0, 9),
            (1, 16, 9, 0),
        ),
    )


def is_weak_similarity(s1: SemimetricSpace, s2: SemimetricSpace, phi: Bijection) -> bool:
    """Check one bijection for rank preservation on all pairs."""
    if s1.n != s2.n:
        raise SizeMismatch(s1.n, s2.n)
    mapping = phi.as_dict()
    if set(mapping) != set(s1.points) or set(mapping.values()) != set(s2.points):
        raise NotABijection("it does not pair the two point sets exactly")
    r1, _ = distance_ranks(s1)
    r2, _ = distance_ranks(s2)
    img = [s2.index(mapping[p]) for p in s1.points]
    for i, j in s1.pair_indices():
        if r1[i][j] != r2[img[i]][img[j]]:
            return False
    return True


def _profiles(rank: list[list[int]], n: int) -> list[tuple[int, ...]]:
    return [tuple(sorted(rank[i][j] for j in range(n) if j != i)) for i in range(n)]


def _search(n, r1, r2, candidates):
    # backtracking over target indices, declaration order on both sides,
    # so the first hit is the lexicographically least image vector
    assigned: list[int] = []
    used = [False] * n

    def extend(i: int):
        if i == n:
            return True
        for y in candidates[i]:
            if used[y]:
                continue
            ok = True
            r1i = r1[i]
            r2y = r2[y]
            for j in range(i):
                if r1i[j] != r2y[assigned[j]]:
                    ok = False
                    break
            if ok:
                used[y] = True
                assigned.append(y)
                if extend(i + 1):
                    return True
                assigned.pop()
                used[y] = False
        return False

    return assigned if extend(0) else None


def find_weak_similarity(
    s1: SemimetricSpace, s2: SemimetricSpace, cap: int = 8
) -> SimilarityVerdict:
    """Search for a weak similarity; verdict none when sizes differ.

    Exhaustive over bijections with rank-profile pruning, so the cap
    keeps the worst case at 8! candidate images.
    """
    if s1.n > cap or s2.n > cap:
        raise TooLarge("space size for similarity search", cap, max(s1.n, s2.n))
    if s1.n != s2.n:
        return _NONE
    n = s1.n
    r1, v1 = distance_ranks(s1)
    r2, v2 = distance_ranks(s2)
    if len(v1) != len(v2):
        return _NONE
    p1 = _profiles(r1, n)
    p2 = _profiles(r2, n)
    if sorted(p1) != sorted(p2):
        return _NONE
    candidates = [[y for y in range(n) if p2[y] == p1[i]] for i in range(n)]
    image = _search(n, r1, r2, candidates)
    if image is None:
        return _NONE
    witness = Bijection(tuple((s1.points[i], s2.points[image[i]]) for i in range(n)))
    vmap = tuple((Dist(a), Dist(b)) for a, b in zip(v1, v2))
    return SimilarityVerdict("weak", witness, None, vmap)


def find_similarity(s1: SemimetricSpace, s2: SemimetricSpace, cap: int = 8) -> SimilarityVerdict:
    """Search for a similarity (single scaling ratio) or an isometry.

    The ratio is forced by the largest distances, so the search only has
    to respect exact value equality after scaling.
    """
    if s1.n > cap or s2.n > cap:
        raise TooLarge("space size for similarity search", cap, max(s1.n, s2.n))
    if s1.n != s2.n:
        return _NONE
    n = s1.n
    if n == 1:
        witness = Bijection(((s1.points[0], s2.points[0]),))
        return SimilarityVerdict("isometry", witness, Fraction(1), ())
    m1, m2 = s1.sq, s2.sq
    all1 = sorted(m1[i][j] for i, j in s1.pair_indices())
    all2 = sorted(m2[i][j] for i, j in s2.pair_indices())
    ratio_sq = all2[-1] / all1[-1]
    if [v * ratio_sq for v in all1] != all2:
        return _NONE
    # reuse the rank search on scaled exact values: scaling preserves ranks,
    # but rank equality alone is weaker, so candidates filter by scaled rows
    scaled_rows = [sorted(m1[i][j] * ratio_sq for j in range(n) if j != i) for i in range(n)]
    target_rows = [sorted(m2[y][j] for j in range(n) if j != y) for y in range(n)]
    candidates = [[y for y in range(n) if target_rows[y] == scaled_rows[i]] for i in range(n)]

    assigned: list[int] = []
    used = [False] * n

    def extend(i: int) -> bool:
        if i == n:
            return True
        for y in candidates[i]:
            if used[y]:
                continue
            if all(m1[i][j] * ratio_sq == m2[y][assigned[j]] for j in range(i)):
                used[y] = True
                assigned.append(y)
                if extend(i + 1):
                    return True
                assigned.pop()
                used[y] = False
        return False

    if not extend(0):
        return _NONE
    witness = Bijection(tuple((s1.points[i], s2.points[assigned[i]]) for i in range(n)))
    vals1 = sorted(set(all1))
    vmap = tuple((Dist(v), Dist(v * ratio_sq)) for v in vals1)
    kind = "isometry" if ratio_sq == 1 else "similarity"
    return SimilarityVerdict(kind, witness, ratio_sq, vmap)


def weakly_similar_to_xstar(space: SemimetricSpace) -> tuple[bool, Bijection | None]:
    """Is the space weakly similar to the canonical tied-pair template?

    Cheap necessary conditions first: four points and level signature
    (1,1,2,1,1); only then the bijection search runs.
    """
    if space.n != 4:
        return False, None
    rank, values = distance_ranks(space)
    counts = [0] * len(values)
    for i, j in space.pair_indices():
        counts[rank[i][j]] += 1
    signature = tuple(reversed(counts))
    if signature != (1, 1, 2, 1, 1):
        return False, None
    verdict = find_weak_similarity(space, x_star())
    if verdict.kind == "none":
        return False, None
    return True, verdict.witness
