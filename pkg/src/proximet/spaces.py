"""Exact finite semimetric spaces.

A finite semimetric space is a finite set of labeled points with a
symmetric, positive-definite distance function.  No triangle inequality
is assumed; metric and ultrametric are extra properties that can be
tested, not part of the data model.

Distances are stored as squared nonnegative rationals (``Fraction``).
Squaring is monotone on nonnegative reals, so every order or tie
comparison between distances can be done exactly on the squares.  This
choice makes spaces built from rational Euclidean coordinates exact
(the squared distance is a rational even when the distance itself is
irrational), and it admits an exact triangle-inequality test: for
squares a >= b, c the inequality sqrt(a) <= sqrt(b) + sqrt(c) holds
iff a <= b + c or (a - b - c)^2 <= 4*b*c.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Iterable, Sequence

from .errors import (
    BadDiagonal,
    BadLabel,
    CoincidentPoints,
    DimensionMismatch,
    DuplicateLabel,
    EmptySubset,
    NonpositiveOffDiagonal,
    NotSymmetric,
    UnknownLabel,
)

Rational = Fraction | int | str


def as_fraction(value: Rational) -> Fraction:
    """Coerce ints, Fractions and 'num' / 'num/den' strings to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def _perfect_square_root(q: Fraction) -> Fraction | None:
    # exact square root when it exists, used only for display
    rn, rd = isqrt(q.numerator), isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True, order=True)
class Dist:
    """A distance value, represented by its exact square.

    Ordering and equality delegate to the square, which agrees with the
    ordering of the (possibly irrational) distances themselves.
    """

    sq: Fraction

    def __post_init__(self):
        object.__setattr__(self, "sq", as_fraction(self.sq))
        if self.sq < 0:
            raise ValueError(f"squared distance must be nonnegative, got {self.sq}")

    def __str__(self) -> str:
        root = _perfect_square_root(self.sq)
        return str(root) if root is not None else f"sqrt({self.sq})"

    def __repr__(self) -> str:
        return f"Dist({self.sq})"


DistanceSet = tuple[Dist, ...]


def _check_label(label: str) -> None:
    if not isinstance(label, str) or not label or any(c.isspace() for c in label) or "," in label:
        raise BadLabel(label)


@dataclass(frozen=True)
class SemimetricSpace:
    """A finite semimetric space: labeled points plus squared distances.

    ``sq[i][j]`` is the squared distance between points i and j.  The
    matrix must be symmetric with zero diagonal and positive entries
    elsewhere; this is enforced on construction, so every reachable
    instance is a valid space.
    """

    points: tuple[str, ...]
    sq: tuple[tuple[Fraction, ...], ...]
    _idx: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        pts = self.points
        if len(pts) < 1:
            raise DimensionMismatch("a space needs at least one point")
        seen = set()
        for p in pts:
            _check_label(p)
            if p in seen:
                raise DuplicateLabel(p)
            seen.add(p)
        n = len(pts)
        m = self.sq
        if len(m) != n or any(len(row) != n for row in m):
            raise DimensionMismatch(f"matrix must be {n}x{n}")
        for i in range(n):
            if m[i][i] != 0:
                raise BadDiagonal(i)
            for j in range(i + 1, n):
                if m[i][j] != m[j][i]:
                    raise NotSymmetric(i, j)
                if m[i][j] <= 0:
                    raise NonpositiveOffDiagonal(i, j)
        object.__setattr__(self, "_idx", {p: i for i, p in enumerate(pts)})

    @property
    def n(self) -> int:
        return len(self.points)

    def index(self, label: str) -> int:
        try:
            return self._idx[label]
        except KeyError:
            raise UnknownLabel(label) from None

    def sq_between(self, x: str, y: str) -> Fraction:
        return self.sq[self.index(x)][self.index(y)]

    def dist(self, x: str, y: str) -> Dist:
        return Dist(self.sq_between(x, y))

    def pair_indices(self):
        return itertools.combinations(range(self.n), 2)

    def __str__(self) -> str:
        return f"SemimetricSpace({', '.join(self.points)})"


def validate_space(points: Sequence[str], sq_matrix) -> SemimetricSpace:
    """Build a space from labels and a full squared-distance matrix.

    Entries may be ints, Fractions or rational strings.  All structural
    axioms (shape, symmetry, zero diagonal, positivity) are checked.
    """
    pts = tuple(points)
    try:
        rows = tuple(tuple(as_fraction(v) for v in row) for row in sq_matrix)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise DimensionMismatch(f"matrix entries must be rationals: {exc}") from None
    return SemimetricSpace(pts, rows)


def from_rational_points(coords, labels: Sequence[str] | None = None) -> SemimetricSpace:
    """Euclidean space on rational coordinate tuples, distances squared exactly.

    All tuples must share one dimension and be pairwise distinct.  When
    ``labels`` is omitted the points are named p1, p2, ...
    """
    vecs = [tuple(as_fraction(c) for c in pt) for pt in coords]
    if not vecs:
        raise EmptySubset("coordinate list")
    dim = len(vecs[0])
    for i, v in enumerate(vecs):
        if len(v) != dim:
            raise DimensionMismatch(f"point {i} has dimension {len(v)}, expected {dim}")
    if labels is None:
        labels = tuple(f"p{i + 1}" for i in range(len(vecs)))
    labels = tuple(labels)
    if len(labels) != len(vecs):
        raise DimensionMismatch(f"{len(labels)} labels for {len(vecs)} points")
    n = len(vecs)
    m = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            s = sum((a - b) ** 2 for a, b in zip(vecs[i], vecs[j]))
            if s == 0:
                raise CoincidentPoints(i, j)
            m[i][j] = m[j][i] = s
    return SemimetricSpace(labels, tuple(tuple(row) for row in m))


def distance_set(space: SemimetricSpace) -> DistanceSet:
    """The strictly increasing tuple of distinct positive distances."""
    values = sorted({space.sq[i][j] for i, j in space.pair_indices()})
    return tuple(Dist(v) for v in values)


def subspace(space: SemimetricSpace, subset: Iterable[str]) -> SemimetricSpace:
    """Restriction to a nonempty subset, point order inherited from the parent."""
    wanted = set(subset)
    for label in wanted:
        if label not in space._idx:
            raise UnknownLabel(label)
    if not wanted:
        raise EmptySubset()
    keep = [i for i, p in enumerate(space.points) if p in wanted]
    pts = tuple(space.points[i] for i in keep)
    m = tuple(tuple(space.sq[i][j] for j in keep) for i in keep)
    return SemimetricSpace(pts, m)


def _triangle_ok(a: Fraction, b: Fraction, c: Fraction) -> bool:
    # squares with a = max; sqrt(a) <= sqrt(b) + sqrt(c), one-radical form
    if a <= b + c:
        return True
    return (a - b - c) ** 2 <= 4 * b * c


def is_metric(space: SemimetricSpace) -> bool:
    """Exact triangle-inequality test over all unordered triples."""
    m = space.sq
    for i, j, k in itertools.combinations(range(space.n), 3):
        a, b, c = sorted((m[i][j], m[i][k], m[j][k]))
        if not _triangle_ok(c, a, b):
            return False
    return True


def is_ultrametric_space(space: SemimetricSpace) -> bool:
    """Strong triangle inequality: in every triple the two largest sides tie.

    Monotone in the squares, so no radicals are needed.
    """
    m = space.sq
    for i, j, k in itertools.combinations(range(space.n), 3):
        a, b, c = sorted((m[i][j], m[i][k], m[j][k]))
        if c > b:
            return False
    return True


def distance_ranks(space: SemimetricSpace) -> tuple[list[list[int]], list[Fraction]]:
    """Rank-encode the distance matrix.

    Returns (rank, values) where values is the ascending list of distinct
    positive squared distances and rank[i][j] is the index of sq[i][j] in
    it (diagonal entries get -1).  Ranks capture exactly the order and tie
    pattern of the space, which is all the combinatorial operations need.
    """
    n = space.n
    m = space.sq
    values = sorted({m[i][j] for i in range(n) for j in range(i + 1, n)})
    pos = {v: r for r, v in enumerate(values)}
    rank = [[-1] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            rank[i][j] = rank[j][i] = pos[m[i][j]]
    return rank, values
