"""Command-line shell.

Exit codes: 0 success, 1 malformed input, 2 violated precondition,
3 internal inconsistency (a cross-check between independent deciders
failed; the counterexample space is printed and, for sweeps, written
to a reproduction file).  Output for a fixed invocation and inputs is
byte-identical across runs.
"""
from __future__ import annotations

import argparse
import json
import sys

from .errors import InconsistencyDetected, PreconditionError, ValidationError
from .fileio import (
    format_rational,
    graph_to_obj,
    load_graph,
    load_space,
    parse_rational,
    save_space,
    space_to_obj,
)
from .hasse import distance_hasse, export_dot, level_signature
from .proximity import (
    frontier_sets,
    nearest_point_graph,
    proximinal_graph,
    set_distance,
)
from .realize import (
    explore_conjecture,
    realize_matching_wr,
    realize_single_edge_sr,
    realize_ultrametric,
    scan_conjecture,
)
from .rigidity import (
    best_approx_equivalence_report,
    classify,
    random_space,
    small_space_equivalences,
)
from .similarity import find_similarity, find_weak_similarity
from .spaces import distance_set, is_metric, is_ultrametric_space


def _labels(arg: str) -> list[str]:
    return [tok for tok in arg.split(",") if tok]


def _emit(args, record: dict, text_lines: list[str]) -> None:
    if args.format == "record":
        print(json.dumps(record, indent=2))
    else:
        for line in text_lines:
            print(line)


def _yesno(flag: bool) -> str:
    return "yes" if flag else "no"


def _graph_obj(g) -> dict:
    return graph_to_obj(g)


def _cmd_validate(args) -> int:
    space = load_space(args.space)
    values = distance_set(space)
    metric = is_metric(space)
    ultra = is_ultrametric_space(space)
    record = {
        "valid": True,
        "points": space.n,
        "distinct_distances": len(values),
        "metric": metric,
        "ultrametric": ultra,
    }
    text = [
        f"valid semimetric space: {space.n} point(s), {len(values)} distinct distance(s)",
        f"metric: {_yesno(metric)}",
        f"ultrametric: {_yesno(ultra)}",
    ]
    _emit(args, record, text)
    return 0


def _witness_obj(report) -> dict:
    out: dict = {}
    if report.sr_witness is not None:
        (p1, p2) = report.sr_witness
        out["sr_witness"] = [list(p1), list(p2)]
    if report.wr_witness is not None:
        out["wr_witness"] = list(report.wr_witness)
    if report.ubpp_witness is not None:
        w = report.ubpp_witness
        out["ubpp_witness"] = {
            "part_a": list(w.part_a),
            "part_b": list(w.part_b),
            "pairs": [list(p) for p in w.pairs],
        }
    return out


def _cmd_classify(args) -> int:
    space = load_space(args.space)
    report = classify(space, method=args.method, cap=args.cap)
    record = {
        "strongly_rigid": report.strongly_rigid,
        "weakly_rigid": report.weakly_rigid,
        "unique_best_proximity": report.unique_best_proximity,
        "method": report.method,
    }
    record.update(_witness_obj(report))
    text = [
        f"strongly_rigid: {_yesno(report.strongly_rigid)}",
        f"weakly_rigid: {_yesno(report.weakly_rigid)}",
        f"unique_best_proximity: {_yesno(report.unique_best_proximity)} (method: {report.method})",
    ]
    if report.sr_witness:
        (x1, y1), (x2, y2) = report.sr_witness
        text.append(f"  equal distances: {{{x1},{y1}}} and {{{x2},{y2}}}")
    if report.wr_witness:
        x1, x2, x3 = report.wr_witness
        text.append(f"  isosceles triple: d({x2},{x1}) = d({x2},{x3})")
    if report.ubpp_witness:
        w = report.ubpp_witness
        text.append(
            f"  violating split: A={{{','.join(w.part_a)}}} B={{{','.join(w.part_b)}}} "
            f"pairs ({w.pairs[0][0]},{w.pairs[0][1]}) and ({w.pairs[1][0]},{w.pairs[1][1]})"
        )
    _emit(args, record, text)
    return 0


def _cmd_pgraph(args) -> int:
    space = load_space(args.space)
    part_a = _labels(args.part_a)
    part_b = _labels(args.part_b)
    g = proximinal_graph(space, part_a, part_b)
    if args.dot:
        sys.stdout.write(export_dot(g))
        return 0
    d = set_distance(space, part_a, part_b)
    fr = frontier_sets(space, part_a, part_b)
    record = {
        "distance": str(d),
        "distance_sq": format_rational(d.sq),
        "graph": _graph_obj(g),
        "frontier_a": list(fr.a_side),
        "frontier_b": list(fr.b_side),
    }
    text = [
        f"distance: {d} (squared {d.sq})",
        "edges: " + (" ".join("{%s,%s}" % e for e in g.edges) or "(none)"),
        f"frontier A side: {', '.join(fr.a_side)}",
        f"frontier B side: {', '.join(fr.b_side)}",
    ]
    _emit(args, record, text)
    return 0


def _cmd_npgraph(args) -> int:
    space = load_space(args.space)
    part_a = _labels(args.part_a)
    g = nearest_point_graph(space, part_a)
    if args.dot:
        sys.stdout.write(export_dot(g))
        return 0
    record = {"graph": _graph_obj(g), "max_degree": g.max_degree()}
    text = [
        "edges: " + (" ".join("{%s,%s}" % e for e in g.edges) or "(none)"),
        f"max degree: {g.max_degree()}",
    ]
    _emit(args, record, text)
    return 0


def _cmd_digraph(args) -> int:
    space = load_space(args.space)
    dg = distance_hasse(space)
    if args.dot:
        sys.stdout.write(export_dot(dg))
        return 0
    sig = level_signature(dg)
    record = {
        "signature": list(sig),
        "levels": [
            {"value": str(value), "value_sq": format_rational(value.sq), "pairs": list(level)}
            for value, level in zip(dg.values, dg.levels)
        ],
        "arc_count": len(dg.arcs),
    }
    text = [f"signature: ({','.join(map(str, sig))})"]
    for k, (value, level) in enumerate(zip(dg.values, dg.levels)):
        text.append(f"level {k} at distance {value}: " + " ".join(level))
    text.append(f"arcs: {len(dg.arcs)}")
    _emit(args, record, text)
    return 0


def _cmd_wsim(args) -> int:
    s1 = load_space(args.space1)
    s2 = load_space(args.space2)
    verdict = find_similarity(s1, s2, cap=args.cap)
    if verdict.kind == "none":
        verdict = find_weak_similarity(s1, s2, cap=args.cap)
    record: dict = {"kind": verdict.kind}
    text = [f"relation: {verdict.kind}"]
    if verdict.ratio_sq is not None:
        record["ratio_sq"] = format_rational(verdict.ratio_sq)
        text.append(f"squared ratio: {verdict.ratio_sq}")
    if verdict.witness is not None:
        record["witness"] = [list(p) for p in verdict.witness.pairs]
        text.append("witness: " + " ".join(f"{s}->{t}" for s, t in verdict.witness.pairs))
    if verdict.value_map is not None:
        record["value_map_sq"] = [
            [format_rational(a.sq), format_rational(b.sq)] for a, b in verdict.value_map
        ]
        text.append("value map: " + " ".join(f"{a}~{b}" for a, b in verdict.value_map))
    _emit(args, record, text)
    return 0


_REALIZERS = {
    "sr": realize_single_edge_sr,
    "wr": realize_matching_wr,
    "ultra": realize_ultrametric,
}


def _cmd_realize(args) -> int:
    g = load_graph(args.graph)
    result = _REALIZERS[args.kind](g)
    cert = result.certificate
    record = {
        "kind": args.kind,
        "certificate": cert.as_dict(),
        "certified": cert.ok,
        "space": space_to_obj(result.space),
    }
    text = [f"{name}: {_yesno(flag)}" for name, flag in cert.checks]
    text.append(f"certified: {_yesno(cert.ok)}")
    if args.out:
        save_space(result.space, args.out)
        text.append(f"space written to {args.out}")
        record["out"] = args.out
    else:
        text.append(json.dumps(space_to_obj(result.space), indent=2))
    _emit(args, record, text)
    return 0


def _cmd_conjecture(args) -> int:
    if args.scan is not None:
        max_a, max_b = args.scan
        scan = scan_conjecture(max_a, max_b)
        record = {
            "max_a": scan.max_a,
            "max_b": scan.max_b,
            "classes": scan.classes,
            "agreements": scan.agreements,
            "rows": [list(r) for r in scan.rows],
            "mismatches": [
                {
                    "part_a": list(m.part_a),
                    "part_b": list(m.part_b),
                    "edges": [list(e) for e in m.edges],
                    "realizable": m.realizable,
                    "star_form": m.star_form,
                }
                for m in scan.mismatches
            ],
        }
        text = [f"graph classes scanned: {scan.classes}, agreements: {scan.agreements}"]
        for na, nb, classes, agree in scan.rows:
            text.append(f"  |A|={na} |B|={nb}: {classes} classes, {agree} agree")
        for m in scan.mismatches:
            text.append(
                "  mismatch: |A|=%d |B|=%d edges %s realizable=%s star_form=%s"
                % (
                    len(m.part_a),
                    len(m.part_b),
                    " ".join("{%s,%s}" % e for e in m.edges) or "(none)",
                    _yesno(m.realizable),
                    _yesno(m.star_form),
                )
            )
        _emit(args, record, text)
        return 0
    if args.graph is None:
        raise PreconditionError("conjecture needs a graph file or --scan bounds")
    g = load_graph(args.graph)
    probe = explore_conjecture(g)
    record = {
        "realizable": probe.realizable,
        "star_form": probe.star_form,
        "agree": probe.realizable == probe.star_form,
    }
    text = [
        f"realizable as nearest-point graph: {_yesno(probe.realizable)}",
        f"star-shaped toward A: {_yesno(probe.star_form)}",
        f"conditions agree: {_yesno(probe.realizable == probe.star_form)}",
    ]
    if probe.space is not None:
        record["space"] = space_to_obj(probe.space)
        text.append(json.dumps(space_to_obj(probe.space), indent=2))
    _emit(args, record, text)
    return 0


def _cmd_scan(args) -> int:
    bias = parse_rational(args.tie_bias)
    counts = {"strongly_rigid": 0, "weakly_rigid": 0, "unique_best_proximity": 0}
    for k in range(args.count):
        seed = args.seed + k
        space = random_space(args.n, seed, bias)
        try:
            report = classify(space, method="both")
            if report.strongly_rigid and not report.unique_best_proximity:
                raise InconsistencyDetected(
                    "chain violated: strongly rigid but not unique best proximity", space
                )
            if report.unique_best_proximity and not report.weakly_rigid:
                raise InconsistencyDetected(
                    "chain violated: unique best proximity but not weakly rigid", space
                )
            best_approx_equivalence_report(space)
            if space.n <= 3:
                small_space_equivalences(space)
        except InconsistencyDetected as exc:
            repro = args.repro or f"scan-failure-seed{seed}.json"
            save_space(space, repro)
            print(f"seed {seed}: {exc}", file=sys.stderr)
            print(f"failing space written to {repro}", file=sys.stderr)
            print(json.dumps(space_to_obj(space), indent=2), file=sys.stderr)
            return 3
        for key, flag in (
            ("strongly_rigid", report.strongly_rigid),
            ("weakly_rigid", report.weakly_rigid),
            ("unique_best_proximity", report.unique_best_proximity),
        ):
            if flag:
                counts[key] += 1
    record = {
        "count": args.count,
        "n": args.n,
        "seed": args.seed,
        "tie_bias": format_rational(bias),
        "tallies": counts,
        "checks": "passed",
    }
    text = [
        f"scanned {args.count} space(s) with n={args.n}, seed={args.seed}, tie_bias={bias}",
        f"strongly rigid: {counts['strongly_rigid']}, weakly rigid: {counts['weakly_rigid']}, "
        f"unique best proximity: {counts['unique_best_proximity']}",
        "all cross-checks passed",
    ]
    _emit(args, record, text)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="proximet",
        description="Exact computations on finite semimetric spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--format", choices=("text", "record"), default="text")
        return p

    p = add("validate", _cmd_validate, "check a space file and report basic properties")
    p.add_argument("space")

    p = add("classify", _cmd_classify, "rigidity classification of a space")
    p.add_argument("space")
    p.add_argument("--method", choices=("oracle", "fourpoint", "both"), default="both")
    p.add_argument("--cap", type=int, default=12)

    p = add("pgraph", _cmd_pgraph, "proximinal graph between two disjoint subsets")
    p.add_argument("space")
    p.add_argument("--part-a", required=True)
    p.add_argument("--part-b", required=True)
    p.add_argument("--dot", action="store_true")

    p = add("npgraph", _cmd_npgraph, "nearest-point graph of a subset against its complement")
    p.add_argument("space")
    p.add_argument("--part-a", required=True)
    p.add_argument("--dot", action="store_true")

    p = add("digraph", _cmd_digraph, "layered digraph of the distance order")
    p.add_argument("space")
    p.add_argument("--dot", action="store_true")

    p = add("wsim", _cmd_wsim, "similarity / weak similarity between two spaces")
    p.add_argument("space1")
    p.add_argument("space2")
    p.add_argument("--cap", type=int, default=8)

    p = add("realize", _cmd_realize, "build a metric space realizing a bipartite graph")
    p.add_argument("graph")
    p.add_argument("--kind", choices=sorted(_REALIZERS), required=True)
    p.add_argument("--out")

    p = add("conjecture", _cmd_conjecture, "probe realizability of nearest-point graphs")
    p.add_argument("graph", nargs="?")
    p.add_argument("--scan", nargs=2, type=int, metavar=("MAX_A", "MAX_B"))

    p = add("scan", _cmd_scan, "random-space property sweep with cross-checks")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--tie-bias", default="0")
    p.add_argument("--repro")

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except PreconditionError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except InconsistencyDetected as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        if exc.space is not None:
            print(json.dumps(space_to_obj(exc.space), indent=2), file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
