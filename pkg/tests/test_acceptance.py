"""Acceptance gate: eleven fixed criteria, one printed verdict line each.

Run with `pytest -s tests/test_acceptance.py` to see the PASS/FAIL lines;
each criterion is also an ordinary test, so a plain pytest run enforces
all of them.  Everything here is exact rational arithmetic with frozen
expected values; there are no tolerances and no skips.
"""
from __future__ import annotations

import json
import random
from fractions import Fraction
from itertools import product

import pytest

import corpus
from proximet import (
    ALLOWED_FOUR_POINT_SIGNATURES,
    BipartiteGraph,
    Dist,
    UbppWitness,
    best_approx_equivalence_report,
    classify,
    digraphs_isomorphic,
    digraphs_isomorphic_bruteforce,
    distance_hasse,
    distance_set,
    find_weak_similarity,
    is_ubpp_bruteforce,
    is_ubpp_fourpoint,
    is_strongly_rigid,
    is_weak_similarity,
    is_weakly_rigid,
    level_signature,
    proximinal_graph,
    random_space,
    realize_matching_wr,
    realize_single_edge_sr,
    realize_ultrametric,
    reference_digraph,
    same_graph,
    scan_conjecture,
    set_distance,
    small_space_equivalences,
    space_to_obj,
    validate_space,
    weakly_similar_to_xstar,
    x_star,
)
from proximet.cli import main as cli_main
from proximet.fileio import save_space


def _report(num: int, ok: bool, detail: str) -> bool:
    print(f"criterion {num}: {'PASS' if ok else 'FAIL'} ({detail})")
    return ok


@pytest.fixture(scope="module")
def four_point_corpus():
    """Every 4-point distance order type with both deciders evaluated."""
    entries = []
    for assign in corpus.ordered_partition_assignments(6):
        space = corpus.order_type_space(assign)
        entries.append(
            {
                "space": space,
                "signature": level_signature(distance_hasse(space)),
                "sr": is_strongly_rigid(space)[0],
                "wr": is_weakly_rigid(space)[0],
                "bf": is_ubpp_bruteforce(space)[0],
                "fp": is_ubpp_fourpoint(space)[0],
            }
        )
    return entries


@pytest.fixture(scope="module")
def random_sweep():
    """Ten thousand seeded random spaces with both deciders evaluated."""
    rows = []
    disagreements = 0
    for n, seed, bias in corpus.iter_random_plan():
        space = random_space(n, seed, bias)
        sr = is_strongly_rigid(space)[0]
        wr = is_weakly_rigid(space)[0]
        bf = is_ubpp_bruteforce(space)[0]
        fp = is_ubpp_fourpoint(space)[0]
        if bf != fp:
            disagreements += 1
        rows.append((sr, bf, wr))
    return {"rows": rows, "disagreements": disagreements}


def test_criterion_01_rect_fixture():
    rect = corpus.rect_space()
    checks = []
    checks.append(distance_set(rect) == (Dist(9), Dist(16), Dist(25)))
    checks.append([str(d) for d in distance_set(rect)] == ["3", "4", "5"])
    checks.append(set_distance(rect, ("p", "q"), ("l", "m")) == Dist(9))
    g = proximinal_graph(rect, ("p", "q"), ("l", "m"))
    checks.append(g.edges == (("p", "m"), ("q", "l")))
    dg = distance_hasse(rect)
    checks.append(dg.levels == (("{p,l}", "{q,m}"), ("{p,q}", "{l,m}"), ("{p,m}", "{q,l}")))
    checks.append(tuple(v.sq for v in dg.values) == (25, 16, 9))
    expected_arcs = {
        (u, v)
        for k in range(2)
        for u in dg.levels[k]
        for v in dg.levels[k + 1]
    }
    checks.append(set(dg.arcs) == expected_arcs and len(dg.arcs) == 8)
    ok = all(checks)
    assert _report(1, ok, f"{sum(checks)}/{len(checks)} exact checks"), checks


def test_criterion_02_quad_fixture():
    quad = corpus.quad_space()
    report = classify(quad, method="both")
    checks = []
    checks.append(report.strongly_rigid is False)
    checks.append(report.sr_witness == (("z1", "z3"), ("z2", "z4")))
    checks.append(
        quad.sq_between("z1", "z3") == 49 and quad.sq_between("z2", "z4") == 49
    )
    checks.append(report.weakly_rigid is True)
    checks.append(report.unique_best_proximity is True)
    checks.append(is_ubpp_bruteforce(quad) == (True, None))
    checks.append(is_ubpp_fourpoint(quad) == (True, None))
    dg = distance_hasse(quad)
    checks.append(level_signature(dg) == (2, 1, 1, 1, 1))
    checks.append(digraphs_isomorphic(dg, reference_digraph("Di2")))
    ok = all(checks)
    assert _report(2, ok, f"{sum(checks)}/{len(checks)} exact checks"), checks


def test_criterion_03_xstar_fixture():
    star = x_star()
    report = classify(star, method="both")
    checks = []
    checks.append(report.weakly_rigid is True)
    checks.append(report.unique_best_proximity is False)
    witness = is_ubpp_bruteforce(star)[1]
    checks.append(
        witness
        == UbppWitness(("a1", "b2"), ("b1", "a2"), (("a1", "b1"), ("b2", "a2")))
    )
    d = set_distance(star, witness.part_a, witness.part_b)
    checks.append(d == Dist(9))
    checks.append(all(star.sq_between(x, y) == 9 for x, y in witness.pairs))
    checks.append(level_signature(distance_hasse(star)) == (1, 1, 2, 1, 1))
    found, bij = weakly_similar_to_xstar(star)
    checks.append(found is True and bij is not None)
    ok = all(checks)
    assert _report(3, ok, f"{sum(checks)}/{len(checks)} exact checks"), checks


def test_criterion_04_decider_cross_validation(four_point_corpus, random_sweep):
    exhaustive_bad = sum(1 for e in four_point_corpus if e["bf"] != e["fp"])
    ok = (
        len(four_point_corpus) == 4683
        and exhaustive_bad == 0
        and len(random_sweep["rows"]) == 10000
        and random_sweep["disagreements"] == 0
    )
    detail = (
        f"{len(four_point_corpus)} order types + {len(random_sweep['rows'])} random "
        f"spaces, {exhaustive_bad + random_sweep['disagreements']} disagreements"
    )
    assert _report(4, ok, detail)


def test_criterion_05_chain_inclusion(four_point_corpus, random_sweep):
    violations = 0
    for e in four_point_corpus:
        if (e["sr"] and not e["bf"]) or (e["bf"] and not e["wr"]):
            violations += 1
    for sr, ubpp, wr in random_sweep["rows"]:
        if (sr and not ubpp) or (ubpp and not wr):
            violations += 1
    total = len(four_point_corpus) + len(random_sweep["rows"])
    ok = violations == 0
    assert _report(5, ok, f"{total} instances, {violations} chain violations")


def test_criterion_06_signature_dichotomy(four_point_corpus):
    plain = (
        (1, 1, 1, 1, 1, 1),
        (2, 1, 1, 1, 1),
        (1, 2, 1, 1, 1),
    )
    exceptions = 0
    templates = 0
    for e in four_point_corpus:
        sig = e["signature"]
        if e["bf"]:
            if len(distance_set(e["space"])) < 5 or sig not in ALLOWED_FOUR_POINT_SIGNATURES:
                exceptions += 1
        if e["wr"] and sig in plain and not e["bf"]:
            exceptions += 1
        if e["wr"] and sig == (1, 1, 2, 1, 1):
            templates += 1
            similar, _ = weakly_similar_to_xstar(e["space"])
            if e["bf"] != (not similar):
                exceptions += 1
    ok = exceptions == 0 and templates > 0
    assert _report(
        6, ok, f"{len(four_point_corpus)} order types, {templates} template-shaped, "
        f"{exceptions} exceptions"
    )


def test_criterion_07_equivalence_reports():
    failures = 0
    count = 0
    for k in range(1000):
        space = random_space(2 + k % 5, k, corpus.BIASES[(k // 5) % 5])
        report = best_approx_equivalence_report(space)
        flags = (
            report.max_degree_le_1,
            report.frontiers_balanced,
            report.unique_best_approximation,
            report.at_most_one_best_approximation,
            report.weakly_rigid,
        )
        count += 1
        if len(set(flags)) != 1:
            failures += 1

    small = 0
    small_spaces = [
        validate_space(("a",), ((0,),)),
        validate_space(("a", "b"), ((0, 4), (4, 0))),
    ]
    for assign in corpus.ordered_partition_assignments(3):
        small_spaces.append(corpus.order_type_space_3(assign))
        small_spaces.append(
            corpus.remap_values(
                corpus.order_type_space_3(assign),
                (Fraction(1), Fraction(3, 2), Fraction(5, 2))[: len(set(assign))],
            )
        )
    for space in small_spaces:
        report = small_space_equivalences(space)
        flags = (
            report.strongly_rigid,
            report.weakly_rigid,
            report.unique_best_proximity,
            report.single_edge_graphs,
        )
        small += 1
        if len(set(flags)) != 1:
            failures += 1
    ok = failures == 0 and count == 1000 and small == 28
    assert _report(
        7, ok, f"{count} random + {small} small spaces, {failures} equivalence failures"
    )


def _ultrametric_block_graphs():
    """Part-preserving isomorphism classes of componentwise complete
    bipartite graphs with at most 4 vertices per part and >= 1 edge."""
    shapes = []

    def rec(prev, rem_a, rem_b, acc):
        if acc:
            shapes.append(tuple(acc))
        for p in range(1, rem_a + 1):
            for q in range(1, rem_b + 1):
                if (p, q) >= prev:
                    acc.append((p, q))
                    rec((p, q), rem_a - p, rem_b - q, acc)
                    acc.pop()

    rec((1, 1), 4, 4, [])
    for blocks in shapes:
        used_a = sum(p for p, _ in blocks)
        used_b = sum(q for _, q in blocks)
        for na in range(used_a, 5):
            for nb in range(used_b, 5):
                part_a = tuple(f"a{i + 1}" for i in range(na))
                part_b = tuple(f"b{j + 1}" for j in range(nb))
                edges = []
                i = j = 0
                for p, q in blocks:
                    for u in part_a[i : i + p]:
                        for v in part_b[j : j + q]:
                            edges.append((u, v))
                    i += p
                    j += q
                yield BipartiteGraph(part_a, part_b, tuple(edges))


def test_criterion_08_realizer_round_trips():
    failures = 0
    single = matched = ultra = 0
    for na in range(1, 5):
        for nb in range(1, 5):
            part_a = tuple(f"a{i + 1}" for i in range(na))
            part_b = tuple(f"b{j + 1}" for j in range(nb))
            g = BipartiteGraph(part_a, part_b, (("a1", "b1"),))
            single += 1
            if not realize_single_edge_sr(g).certificate.ok:
                failures += 1
            for k in range(1, min(na, nb) + 1):
                edges = tuple((f"a{i + 1}", f"b{i + 1}") for i in range(k))
                matched += 1
                if not realize_matching_wr(BipartiteGraph(part_a, part_b, edges)).certificate.ok:
                    failures += 1
    for g in _ultrametric_block_graphs():
        ultra += 1
        if not realize_ultrametric(g).certificate.ok:
            failures += 1
    ok = failures == 0 and single == 16 and matched == 30 and ultra > 100
    assert _report(
        8, ok,
        f"{single} single-edge + {matched} matching + {ultra} block classes, "
        f"{failures} failed certificates",
    )


def test_criterion_09_weak_similarity_transport():
    ratios = (Fraction(4), Fraction(1, 4), Fraction(9, 4), Fraction(25), Fraction(16, 9))
    failures = 0
    for k in range(100):
        n = 2 + k % 5
        source = random_space(n, 1000 + k, corpus.BIASES[k % 5])
        rng = random.Random(k)
        perm = list(range(n))
        rng.shuffle(perm)
        ratio = ratios[k % 5]
        labels = tuple(f"t{i + 1}" for i in range(n))
        m = [
            [source.sq[perm[i]][perm[j]] * ratio for j in range(n)]
            for i in range(n)
        ]
        target = validate_space(labels, m)

        verdict = find_weak_similarity(source, target)
        if verdict.kind == "none" or verdict.witness is None:
            failures += 1
            continue
        if not is_weak_similarity(source, target, verdict.witness):
            failures += 1
            continue
        fwd = verdict.witness.as_dict()
        for roles in product((0, 1, 2), repeat=n):
            part_a = [source.points[i] for i in range(n) if roles[i] == 0]
            part_b = [source.points[i] for i in range(n) if roles[i] == 1]
            if not part_a or not part_b:
                continue
            g_src = proximinal_graph(source, part_a, part_b)
            transported = BipartiteGraph(
                tuple(fwd[a] for a in part_a),
                tuple(fwd[b] for b in part_b),
                tuple((fwd[a], fwd[b]) for a, b in g_src.edges),
            )
            g_tgt = proximinal_graph(
                target, [fwd[a] for a in part_a], [fwd[b] for b in part_b]
            )
            if not same_graph(transported, g_tgt):
                failures += 1
        r_src = classify(source)
        r_tgt = classify(target)
        if (r_src.strongly_rigid, r_src.weakly_rigid, r_src.unique_best_proximity) != (
            r_tgt.strongly_rigid,
            r_tgt.weakly_rigid,
            r_tgt.unique_best_proximity,
        ):
            failures += 1
    ok = failures == 0
    assert _report(9, ok, f"100 rescaled copies, {failures} transport failures")


def test_criterion_10_signature_soundness(four_point_corpus):
    digraphs = [
        distance_hasse(corpus.rect_space()),
        distance_hasse(corpus.quad_space()),
        distance_hasse(x_star()),
        distance_hasse(validate_space(("a", "b"), ((0, 4), (4, 0)))),
    ]
    digraphs.extend(reference_digraph(f"Di{k}") for k in range(5))
    for assign in corpus.ordered_partition_assignments(3):
        digraphs.append(distance_hasse(corpus.order_type_space_3(assign)))
    by_sig = {}
    for e in four_point_corpus:
        by_sig.setdefault(e["signature"], e["space"])
    digraphs.extend(distance_hasse(s) for s in by_sig.values())

    mismatches = 0
    pairs = 0
    for i, d1 in enumerate(digraphs):
        for d2 in digraphs[i:]:
            pairs += 1
            if digraphs_isomorphic(d1, d2) != digraphs_isomorphic_bruteforce(d1, d2):
                mismatches += 1
    ok = mismatches == 0 and len(by_sig) == 32
    assert _report(
        10, ok, f"{len(digraphs)} digraphs, {pairs} pairs, {mismatches} mismatches"
    )


def test_criterion_11_determinism(tmp_path, capsys):
    checks = []

    plan = list(corpus.iter_random_plan())[:300]
    first = [random_space(n, seed, bias) for n, seed, bias in plan]
    second = [random_space(n, seed, bias) for n, seed, bias in plan]
    checks.append(first == second)
    checks.append(
        [json.dumps(space_to_obj(s), sort_keys=True) for s in first]
        == [json.dumps(space_to_obj(s), sort_keys=True) for s in second]
    )

    sample = first[::10]
    checks.append([classify(s) for s in sample] == [classify(s) for s in sample])
    star = x_star()
    checks.append(
        find_weak_similarity(star, star) == find_weak_similarity(star, star)
    )

    scan1 = scan_conjecture(3, 3)
    scan2 = scan_conjecture(3, 3)
    checks.append(scan1 == scan2 and scan1.classes == 85)

    path = tmp_path / "rect.json"
    save_space(corpus.rect_space(), path)
    outs = []
    for _ in range(2):
        assert cli_main(["digraph", str(path), "--format", "record"]) == 0
        outs.append(capsys.readouterr().out)
    checks.append(outs[0] == outs[1])
    outs = []
    for _ in range(2):
        assert cli_main(["conjecture", "--scan", "2", "2"]) == 0
        outs.append(capsys.readouterr().out)
    checks.append(outs[0] == outs[1])

    ok = all(checks)
    assert _report(11, ok, f"{sum(checks)}/{len(checks)} determinism checks"), checks
