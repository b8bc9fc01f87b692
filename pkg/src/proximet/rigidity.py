"""Rigidity classification of finite semimetric spaces.

Three nested properties are decided exactly:

* strongly rigid: all pair distances are distinct;
* weakly rigid: no isosceles triple, i.e. every point sees distinct
  distances to the other points;
* unique best proximity (UBPP here): every pair of disjoint nonempty
  subsets has exactly one best proximity pair.

Strongly rigid implies unique best proximity implies weakly rigid.
The unique-best-proximity property has two independent deciders, a
definition-level brute force over all subset splits and a four-point
criterion (weak rigidity plus conditions on every four-point subspace),
and the classifier can cross-check them against each other.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import InconsistencyDetected, PreconditionError, TooLarge, WrongSize
from .hasse import ALLOWED_FOUR_POINT_SIGNATURES
from .similarity import Bijection, weakly_similar_to_xstar
from .spaces import SemimetricSpace, distance_ranks, subspace

BRUTE_FORCE_CAP = 12  # 3^12 subset splits is the largest exhaustive scan


@dataclass(frozen=True)
class UbppWitness:
    """A violating split: two disjoint subsets with two best proximity pairs."""

    part_a: tuple[str, ...]
    part_b: tuple[str, ...]
    pairs: tuple[tuple[str, str], tuple[str, str]]


@dataclass(frozen=True)
class FourPointWitness:
    """Which condition of the four-point criterion failed, and where.

    condition is one of not_weakly_rigid, forbidden_signature,
    tied_pair_template; subset names the offending points; detail is the
    isosceles triple, the signature, or the bijection respectively.
    """

    condition: str
    subset: tuple[str, ...]
    detail: object = None


@dataclass(frozen=True)
class ClassificationReport:
    strongly_rigid: bool
    weakly_rigid: bool
    unique_best_proximity: bool
    sr_witness: tuple[tuple[str, str], tuple[str, str]] | None
    wr_witness: tuple[str, str, str] | None
    ubpp_witness: UbppWitness | None
    method: str


def is_strongly_rigid(space: SemimetricSpace):
    """All pair distances distinct.  Witness: two pairs at equal distance."""
    m = space.sq
    seen: dict = {}
    for i, j in space.pair_indices():
        v = m[i][j]
        if v in seen:
            p, q = seen[v]
            pts = space.points
            return False, ((pts[p], pts[q]), (pts[i], pts[j]))
        seen[v] = (i, j)
    return True, None


def is_weakly_rigid(space: SemimetricSpace):
    """No isosceles triple.  Witness (x1, x2, x3) has d(x2,x1) = d(x2,x3)."""
    m = space.sq
    n = space.n
    pts = space.points
    for apex in range(n):
        row = m[apex]
        for j, k in itertools.combinations((t for t in range(n) if t != apex), 2):
            if row[j] == row[k]:
                return False, (pts[j], pts[apex], pts[k])
    return True, None


def _ubpp_violation_exists(rank: list[list[int]], n: int) -> bool:
    # Bitmask dynamic program: for each point a and subset mask B,
    # minrow/cntrow hold the least rank from a into B and its multiplicity.
    # A split (A, B) then violates uniqueness iff the combined count of
    # minimizers over a in A is at least two.  Only canonical splits are
    # scored (lowest involved index on the A side).
    full = 1 << n
    inf = n * n + 1
    minrow = [inf] * (n * full)
    cntrow = [0] * (n * full)
    for a in range(n):
        base = a * full
        ra = rank[a]
        for mask in range(1, full):
            low = mask & -mask
            rest = mask ^ low
            b = low.bit_length() - 1
            pm = minrow[base + rest]
            pc = cntrow[base + rest]
            if b == a:
                minrow[base + mask] = pm
                cntrow[base + mask] = pc
            else:
                d = ra[b]
                if d < pm:
                    minrow[base + mask] = d
                    cntrow[base + mask] = 1
                elif d == pm:
                    minrow[base + mask] = pm
                    cntrow[base + mask] = pc + 1
                else:
                    minrow[base + mask] = pm
                    cntrow[base + mask] = pc
    bits_of = [tuple(i for i in range(n) if (mask >> i) & 1) for mask in range(full)]
    all_mask = full - 1
    for amask in range(1, full):
        comp = all_mask ^ amask
        low_a = amask & -amask
        abits = bits_of[amask]
        bmask = comp
        while bmask:
            if (bmask & -bmask) > low_a:
                best = inf
                count = 0
                for a in abits:
                    v = minrow[a * full + bmask]
                    if v < best:
                        best = v
                        count = cntrow[a * full + bmask]
                    elif v == best:
                        count += cntrow[a * full + bmask]
                if count >= 2:
                    return True
            bmask = (bmask - 1) & comp
    return False


def _ubpp_lex_witness(space: SemimetricSpace, rank: list[list[int]]) -> UbppWitness:
    # Re-scan in lexicographic order over role vectors (A < B < out per
    # point, declaration order) and return the first violating split, so
    # the witness does not depend on the fast scan's enumeration order.
    n = space.n
    pts = space.points
    for roles in itertools.product((0, 1, 2), repeat=n):
        a_idx = [i for i in range(n) if roles[i] == 0]
        b_idx = [i for i in range(n) if roles[i] == 1]
        if not a_idx or not b_idx:
            continue
        if b_idx[0] < a_idx[0]:
            continue  # canonical orientation: first involved point in A
        best = None
        pairs: list[tuple[int, int]] = []
        for i in a_idx:
            ri = rank[i]
            for j in b_idx:
                v = ri[j]
                if best is None or v < best:
                    best = v
                    pairs = [(i, j)]
                elif v == best:
                    pairs.append((i, j))
        if len(pairs) >= 2:
            pairs.sort()
            return UbppWitness(
                tuple(pts[i] for i in a_idx),
                tuple(pts[j] for j in b_idx),
                ((pts[pairs[0][0]], pts[pairs[0][1]]), (pts[pairs[1][0]], pts[pairs[1][1]])),
            )
    raise InconsistencyDetected(
        "fast uniqueness scan reported a violation but the exhaustive re-scan found none",
        space,
    )


def is_ubpp_bruteforce(space: SemimetricSpace, cap: int = BRUTE_FORCE_CAP):
    """Definition-level check over every unordered disjoint subset split.

    Enumerates all assignments of points to (A, B, outside); for each
    split the best proximity pairs are counted.  Returns (True, None) or
    (False, witness) where the witness is the lexicographically least
    violating split under the role order A < B < outside.
    """
    if space.n > cap:
        raise TooLarge("space size for brute-force scan", cap, space.n)
    rank, _ = distance_ranks(space)
    if not _ubpp_violation_exists(rank, space.n):
        return True, None
    return False, _ubpp_lex_witness(space, rank)


def _four_point_signature(rank: list[list[int]], quad: tuple[int, ...]) -> tuple[int, ...]:
    # level sizes of the subspace's distance digraph, largest value first;
    # global ranks restrict faithfully to any subset
    counts: dict[int, int] = {}
    for i, j in itertools.combinations(quad, 2):
        r = rank[i][j]
        counts[r] = counts.get(r, 0) + 1
    return tuple(counts[r] for r in sorted(counts, reverse=True))


def is_ubpp_fourpoint(space: SemimetricSpace):
    """Four-point criterion for unique best proximity.

    Holds iff the space is weakly rigid, every four-point subspace has
    level signature among (1,1,1,1,1,1), (2,1,1,1,1), (1,2,1,1,1),
    (1,1,2,1,1), and no four-point subspace with signature (1,1,2,1,1)
    is weakly similar to the tied-pair template.  Runs in polynomial
    time, no subset enumeration.
    """
    wr, triple = is_weakly_rigid(space)
    if not wr:
        return False, FourPointWitness("not_weakly_rigid", triple, triple)
    rank, _ = distance_ranks(space)
    pts = space.points
    for quad in itertools.combinations(range(space.n), 4):
        sig = _four_point_signature(rank, quad)
        labels = tuple(pts[i] for i in quad)
        if sig not in ALLOWED_FOUR_POINT_SIGNATURES:
            return False, FourPointWitness("forbidden_signature", labels, sig)
        if sig == (1, 1, 2, 1, 1):
            similar, phi = weakly_similar_to_xstar(subspace(space, labels))
            if similar:
                return False, FourPointWitness("tied_pair_template", labels, phi)
    return True, None


def _witness_from_fourpoint(space: SemimetricSpace, fw: FourPointWitness) -> UbppWitness:
    # localize: the failing subset is itself a non-UBPP space, and any of
    # its violating splits is a violating split of the whole space
    sub = subspace(space, fw.subset)
    ok, witness = is_ubpp_bruteforce(sub)
    if ok or witness is None:
        raise InconsistencyDetected(
            f"four-point criterion rejected subset {fw.subset} ({fw.condition}) "
            "but the subset passes the brute-force scan",
            space,
        )
    return witness


def classify(
    space: SemimetricSpace, method: str = "both", cap: int = BRUTE_FORCE_CAP
) -> ClassificationReport:
    """Full rigidity report.

    method selects the unique-best-proximity decider: "oracle" (brute
    force), "fourpoint", or "both".  With "both" the two must agree or
    InconsistencyDetected is raised.  A concrete violating split is
    reported whenever the property fails, whichever decider ran.
    """
    if method not in ("oracle", "fourpoint", "both"):
        raise PreconditionError(f"method must be oracle, fourpoint or both, got {method!r}")
    sr, sr_wit = is_strongly_rigid(space)
    wr, wr_wit = is_weakly_rigid(space)
    ubpp_wit = None
    if method in ("oracle", "both"):
        ubpp, ubpp_wit = is_ubpp_bruteforce(space, cap)
    if method in ("fourpoint", "both"):
        ubpp_fp, fp_wit = is_ubpp_fourpoint(space)
        if method == "both":
            if ubpp != ubpp_fp:
                raise InconsistencyDetected(
                    f"unique-best-proximity deciders disagree: brute force says {ubpp}, "
                    f"four-point criterion says {ubpp_fp}",
                    space,
                )
        else:
            ubpp = ubpp_fp
            if not ubpp and fp_wit is not None:
                ubpp_wit = _witness_from_fourpoint(space, fp_wit)
    return ClassificationReport(sr, wr, ubpp, sr_wit, wr_wit, ubpp_wit, method)


@dataclass(frozen=True)
class SmallSpaceReport:
    """On at most three points the four rigidity statements coincide."""

    strongly_rigid: bool
    weakly_rigid: bool
    unique_best_proximity: bool
    single_edge_graphs: bool


def _splits(n: int):
    # canonical unordered disjoint nonempty splits as index lists
    for roles in itertools.product((0, 1, 2), repeat=n):
        a_idx = [i for i in range(n) if roles[i] == 0]
        b_idx = [i for i in range(n) if roles[i] == 1]
        if not a_idx or not b_idx:
            continue
        if b_idx[0] < a_idx[0]:
            continue
        yield a_idx, b_idx


def _split_pair_stats(m, a_idx, b_idx):
    best = None
    pairs = []
    for i in a_idx:
        row = m[i]
        for j in b_idx:
            v = row[j]
            if best is None or v < best:
                best = v
                pairs = [(i, j)]
            elif v == best:
                pairs.append((i, j))
    return best, pairs


def small_space_equivalences(space: SemimetricSpace) -> SmallSpaceReport:
    """Evaluate the four statements independently on a space of size <= 3.

    They are provably equivalent there; a mixed outcome raises
    InconsistencyDetected rather than returning a nonsense report.
    """
    if space.n > 3:
        raise WrongSize(f"equivalence report is for at most 3 points, got {space.n}")
    sr, _ = is_strongly_rigid(space)
    wr, _ = is_weakly_rigid(space)
    ubpp, _ = is_ubpp_bruteforce(space)
    single_edge = True
    m = space.sq
    for a_idx, b_idx in _splits(space.n):
        _, pairs = _split_pair_stats(m, a_idx, b_idx)
        if len(pairs) != 1:
            single_edge = False
            break
    flags = (sr, wr, ubpp, single_edge)
    if len(set(flags)) != 1:
        raise InconsistencyDetected(
            f"three-point equivalences broke: sr={sr} wr={wr} "
            f"unique_best_proximity={ubpp} single_edge_graphs={single_edge}",
            space,
        )
    return SmallSpaceReport(sr, wr, ubpp, single_edge)


@dataclass(frozen=True)
class BestApproxReport:
    """Five equivalent statements about at-most-one nearest point."""

    max_degree_le_1: bool
    frontiers_balanced: bool
    unique_best_approximation: bool
    at_most_one_best_approximation: bool
    weakly_rigid: bool


def best_approx_equivalence_report(
    space: SemimetricSpace, cap: int = BRUTE_FORCE_CAP
) -> BestApproxReport:
    """Evaluate five statements independently; they must agree.

    (1) every proximinal graph has maximum degree at most one;
    (2) the two frontier sets of every split have equal size;
    (3) every point has exactly one best approximation in every
        nonempty subset; (4) same with at most one; (5) weak rigidity.
    Disagreement raises InconsistencyDetected.
    """
    n = space.n
    if n > cap:
        raise TooLarge("space size for equivalence report", cap, n)
    m = space.sq

    deg_ok = True
    for a_idx, b_idx in _splits(n):
        _, pairs = _split_pair_stats(m, a_idx, b_idx)
        seen: set[int] = set()
        for i, j in pairs:
            if i in seen or (j + n) in seen:
                deg_ok = False
                break
            seen.add(i)
            seen.add(j + n)
        if not deg_ok:
            break

    balanced = True
    for a_idx, b_idx in _splits(n):
        _, pairs = _split_pair_stats(m, a_idx, b_idx)
        if len({i for i, _ in pairs}) != len({j for _, j in pairs}):
            balanced = False
            break

    unique = True
    at_most_one = True
    for mask in range(1, 1 << n):
        members = [i for i in range(n) if (mask >> i) & 1]
        for x in range(n):
            row = m[x]
            best = min(row[i] for i in members)
            hits = sum(1 for i in members if row[i] == best)
            if hits != 1:
                unique = False
            if hits > 1:
                at_most_one = False
        if not unique and not at_most_one:
            break

    wr, _ = is_weakly_rigid(space)

    flags = (deg_ok, balanced, unique, at_most_one, wr)
    if len(set(flags)) != 1:
        raise InconsistencyDetected(
            "best-approximation equivalences broke: "
            f"degree<=1 {deg_ok}, balanced frontiers {balanced}, unique {unique}, "
            f"at-most-one {at_most_one}, weakly rigid {wr}",
            space,
        )
    return BestApproxReport(deg_ok, balanced, unique, at_most_one, wr)


def _value_pool() -> list[Fraction]:
    # distinct positive rationals, enough for the largest brute-force space
    pool = {Fraction(num, den) for den in (1, 2, 3, 4) for num in range(1, 34)}
    return sorted(pool)


def random_space(n: int, seed: int, tie_bias: Fraction | int | str = 0) -> SemimetricSpace:
    """Seed-deterministic random space with a tunable tie rate.

    Pair values are drawn in lexicographic pair order; with probability
    tie_bias (an exact rational in [0, 1], decided by an integer draw)
    a pair reuses a uniformly chosen earlier value, otherwise it takes a
    fresh one from a shuffled pool of distinct rationals.
    """
    if n < 1:
        raise WrongSize(f"need at least one point, got {n}")
    if n > BRUTE_FORCE_CAP:
        raise TooLarge("random space size", BRUTE_FORCE_CAP, n)
    bias = Fraction(tie_bias)
    if bias < 0 or bias > 1:
        raise PreconditionError(f"tie_bias must be in [0, 1], got {bias}")
    rng = random.Random(seed)
    fresh = _value_pool()
    rng.shuffle(fresh)
    fresh_at = 0
    used: list[Fraction] = []
    m = [[Fraction(0)] * n for _ in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        reuse = bool(used) and rng.randrange(bias.denominator) < bias.numerator
        if reuse:
            v = used[rng.randrange(len(used))]
        else:
            v = fresh[fresh_at]
            fresh_at += 1
            used.append(v)
        m[i][j] = m[j][i] = v
    labels = tuple(f"p{i + 1}" for i in range(n))
    return SemimetricSpace(labels, tuple(tuple(row) for row in m))
