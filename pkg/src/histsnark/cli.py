"""Command line front end.

Subcommands: `verify` checks snark properties of catalog entries or files,
`enumerate` runs exhaustive or sampled 2-factor searches, `catalog` lists or
re-checks the bundled reference snarks, and `draw` renders a radial SVG.

All reports are JSON with sorted keys; run-varying values (timestamps, wall
times, worker counts) are confined to a single `meta` field so that two runs
of the same command are otherwise byte-identical.

Exit codes: 0 success, 1 a checked assertion failed, 2 usage or parse error,
3 internal inconsistency, 4 unmet precondition (such as drawing a graph with
no tree Hist).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from datetime import datetime, timezone

from histsnark.canon import automorphism_count
from histsnark.catalog import CATALOG, check_all, check_entry, get_entry
from histsnark.codec import (
    build_graph,
    check_rotation_property,
    emit_outer_cycles,
    import_graph6,
    parse_outer_cycles,
    spec_from_graph,
)
from histsnark.coloring import is_three_edge_colorable
from histsnark.graph import cyclic_edge_connectivity, girth
from histsnark.search import (
    TwoFactorSearchSpace,
    check_girth6_colorability,
    enumerate_two_factors,
)
from histsnark.svg import render_svg
from histsnark.trees import find_hists, find_ti_hists

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_PARSE = 2
EXIT_INTERNAL = 3
EXIT_PRECONDITION = 4


class CommandError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _default_jobs() -> int:
    env = os.environ.get("HISTSNARK_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise CommandError(
                f"HISTSNARK_JOBS must be an integer, got {env!r}", EXIT_PARSE
            ) from exc
    return os.cpu_count() or 1


def _load_config(path: str | None) -> dict:
    config = {"hist_budget": 200_000, "node_budget": None}
    if not path:
        return config
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise CommandError(
                        f"{path}:{lineno}: expected key=value", EXIT_PARSE
                    )
                key, value = (part.strip() for part in line.split("=", 1))
                if key not in config:
                    raise CommandError(
                        f"{path}:{lineno}: unknown key {key!r}", EXIT_PARSE
                    )
                try:
                    config[key] = int(value)
                except ValueError as exc:
                    raise CommandError(
                        f"{path}:{lineno}: {key} needs an integer", EXIT_PARSE
                    ) from exc
    except OSError as exc:
        raise CommandError(f"cannot read config: {exc}", EXIT_PARSE) from exc
    return config


def _emit(report: dict, wall_start: float) -> None:
    report["meta"] = {
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "wall_time": time.perf_counter() - wall_start,
        **report.get("meta", {}),
    }
    json.dump(report, sys.stdout, sort_keys=True, indent=2)
    sys.stdout.write("\n")


def _verify_spec(spec, hist_budget: int) -> dict:
    if spec.depth is None:
        raise CommandError(
            f"{spec.leaf_count} labels fit no tree depth", EXIT_PRECONDITION
        )
    g = build_graph(spec.depth, spec)
    colorable, _ = is_three_edge_colorable(g)
    cut, _ = cyclic_edge_connectivity(g)
    gr = girth(g)
    witnesses = find_ti_hists(g, spec.depth)
    return {
        "aut_order": automorphism_count(g),
        "cyclic_edge_connectivity": cut,
        "depth": spec.depth,
        "girth": gr,
        "is_snark": bool(
            cut is not None and cut >= 4 and gr >= 5 and not colorable
        ),
        "line": emit_outer_cycles(spec),
        "n": g.n,
        "name": spec.name,
        "oc": list(spec.oc),
        "rotation": check_rotation_property(spec),
        "three_edge_colorable": colorable,
        "ti_hist_ocs": sorted({w.oc for w in witnesses}),
    }


def _verify_graph6(line: str, hist_budget: int) -> dict:
    g = import_graph6(line)
    colorable, _ = is_three_edge_colorable(g)
    cut, _ = cyclic_edge_connectivity(g)
    gr = girth(g)
    result = find_hists(g, budget=hist_budget)
    spec = spec_from_graph(g)
    report = {
        "aut_order": automorphism_count(g),
        "cyclic_edge_connectivity": cut,
        "girth": gr,
        "graph6": line,
        "hist_count": len(result.witnesses),
        "hist_ocs": sorted({w.oc for w in result.witnesses}),
        "hist_search_truncated": result.truncated,
        "is_snark": bool(
            cut is not None and cut >= 4 and gr >= 5 and not colorable
        ),
        "n": g.n,
        "three_edge_colorable": colorable,
    }
    if spec is not None:
        report["recovered_line"] = emit_outer_cycles(spec)
    return report


def _cmd_verify(args, config) -> int:
    t0 = time.perf_counter()
    items = []
    if args.catalog:
        for name in args.catalog:
            entry = get_entry(name)
            items.append(_verify_spec(entry.spec, config["hist_budget"]))
    if args.file:
        try:
            with open(args.file, encoding="utf-8") as fh:
                lines = [
                    line.strip() for line in fh
                    if line.strip() and not line.lstrip().startswith("#")
                ]
        except OSError as exc:
            raise CommandError(f"cannot read input: {exc}", EXIT_PARSE) from exc
        for line in lines:
            if "[" in line:
                spec = parse_outer_cycles(line)
                items.append(_verify_spec(spec, config["hist_budget"]))
            else:
                items.append(_verify_graph6(line, config["hist_budget"]))
    if not items:
        raise CommandError("nothing to verify: pass --catalog or a file", EXIT_PARSE)
    for item in items:
        item["ti_hist_ocs"] = [list(oc) for oc in item.get("ti_hist_ocs", [])]
        if "hist_ocs" in item:
            item["hist_ocs"] = [list(oc) for oc in item["hist_ocs"]]
    _emit({"graphs": items}, t0)
    return EXIT_OK


def _report_to_dict(report) -> dict:
    return {
        "class_counts": [
            {"oc": list(oc), "classes": count}
            for oc, count in report.class_counts
        ],
        "class_total": report.class_total,
        "classes": [
            {
                "canonical_edges": [list(e) for e in c["canonical_edges"]],
                "count_labeled": c["count_labeled"],
                "cycles": [list(cyc) for cyc in c["cycles"]],
                "oc": list(c["oc"]),
                "ocs": [list(oc) for oc in c["ocs"]],
                **(
                    {"verified": c["verified"]}
                    if "verified" in c else {}
                ),
            }
            for c in report.classes
        ],
        "complete": report.complete,
        "labeled_total": report.labeled_total,
        "space": {
            "depth": report.space.depth,
            "girth_min": report.space.girth_min,
            "rotation": report.space.rotation,
            "snark_filter": report.space.snark_filter,
            "target_oc": (
                list(report.space.target_oc)
                if report.space.target_oc else None
            ),
        },
        "stats": report.stats,
        "units_completed": list(report.units_completed),
        "meta": dict(report.meta),
    }


def _cmd_enumerate(args, config) -> int:
    t0 = time.perf_counter()
    if args.sample is not None:
        if args.seed is None:
            raise CommandError("--sample requires --seed", EXIT_PARSE)
        if args.girth_min != 6:
            raise CommandError(
                "sampling is only supported with --girth-min 6", EXIT_PARSE
            )
        report = check_girth6_colorability(
            args.depth, samples=args.sample, seed=args.seed
        )
        _emit(report, t0)
        return EXIT_FAILED if report["counterexamples"] else EXIT_OK
    target = None
    if args.oc:
        try:
            target = tuple(
                sorted((int(x) for x in args.oc.split(",")), reverse=True)
            )
        except ValueError as exc:
            raise CommandError(
                f"--oc expects comma-separated integers, got {args.oc!r}",
                EXIT_PARSE,
            ) from exc
    space = TwoFactorSearchSpace(
        depth=args.depth,
        rotation=args.rotation,
        girth_min=args.girth_min,
        target_oc=target,
        snark_filter=not args.no_snark_filter,
    )
    try:
        report = enumerate_two_factors(
            space,
            jobs=args.jobs,
            checkpoint=args.checkpoint,
            node_budget=config["node_budget"],
            force=args.force,
        )
    except ValueError as exc:
        raise CommandError(str(exc), EXIT_PRECONDITION) from exc
    for entry in report.classes:
        checks = entry.get("verified")
        if checks is not None and not all(
            v for k, v in checks.items() if k != "girth"
        ):
            _emit(_report_to_dict(report), t0)
            print(
                "internal inconsistency: an emitted graph failed "
                "re-verification", file=sys.stderr,
            )
            return EXIT_INTERNAL
    _emit(_report_to_dict(report), t0)
    return EXIT_OK


def _cmd_catalog(args, config) -> int:
    t0 = time.perf_counter()
    if args.action == "list":
        _emit(
            {
                "entries": [
                    {
                        "figure": entry.figure,
                        "line": entry.line,
                        "n": 1 + 3 * (2**entry.spec.depth - 1),
                        "name": entry.name,
                        "oc": list(entry.expected_oc),
                        "rotation": entry.expected_rotation,
                    }
                    for entry in CATALOG
                ]
            },
            t0,
        )
        return EXIT_OK
    report = check_all()
    _emit(report, t0)
    return EXIT_OK if report["passed"] else EXIT_FAILED


def _cmd_draw(args, config) -> int:
    if args.catalog:
        spec = get_entry(args.catalog).spec
    else:
        try:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read().strip()
        except OSError as exc:
            raise CommandError(f"cannot read input: {exc}", EXIT_PARSE) from exc
        line = next(
            (ln for ln in text.splitlines() if ln.strip()), ""
        ).strip()
        if "[" in line:
            spec = parse_outer_cycles(line)
        else:
            spec = spec_from_graph(import_graph6(line))
            if spec is None:
                raise CommandError(
                    "graph has no tree Hist to lay out", EXIT_PRECONDITION
                )
    svg = render_svg(spec)
    if args.out == "-":
        sys.stdout.write(svg)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(svg)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="histsnark",
        description="Snarks built from trees whose spanning trees have no "
        "degree-2 vertex.",
    )
    parser.add_argument(
        "--config", help="key=value file with hist_budget / node_budget"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser(
        "verify", help="check snark properties of catalog entries or a file"
    )
    p_verify.add_argument(
        "--catalog", action="append", metavar="NAME",
        help="catalog entry to verify (repeatable)",
    )
    p_verify.add_argument(
        "file", nargs="?",
        help="file with outer-cycle lines or graph6 lines",
    )

    p_enum = sub.add_parser(
        "enumerate", help="search 2-factor completions of a tree"
    )
    p_enum.add_argument("--depth", type=int, required=True)
    p_enum.add_argument("--rotation", action="store_true")
    p_enum.add_argument("--girth-min", type=int, default=5)
    p_enum.add_argument(
        "--oc", metavar="CSV", help="restrict to this outer cycle multiset"
    )
    p_enum.add_argument(
        "--no-snark-filter", action="store_true",
        help="report every completion instead of snarks only",
    )
    p_enum.add_argument("--sample", type=int, metavar="N")
    p_enum.add_argument("--seed", type=int)
    p_enum.add_argument("--jobs", type=int, default=None)
    p_enum.add_argument("--checkpoint", metavar="PATH")
    p_enum.add_argument("--force", action="store_true")

    p_cat = sub.add_parser("catalog", help="bundled reference snarks")
    p_cat.add_argument("action", choices=["list", "check-all"])

    p_draw = sub.add_parser("draw", help="render a radial SVG drawing")
    p_draw.add_argument("--catalog", metavar="NAME")
    p_draw.add_argument("file", nargs="?")
    p_draw.add_argument("--out", default="-")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(args.config)
        if getattr(args, "jobs", None) is None and args.command == "enumerate":
            args.jobs = _default_jobs()
        if args.command == "verify":
            return _cmd_verify(args, config)
        if args.command == "enumerate":
            return _cmd_enumerate(args, config)
        if args.command == "catalog":
            return _cmd_catalog(args, config)
        if args.command == "draw":
            if not args.catalog and not args.file:
                raise CommandError(
                    "draw needs --catalog or a file", EXIT_PARSE
                )
            return _cmd_draw(args, config)
        raise CommandError(f"unknown command {args.command}", EXIT_PARSE)
    except CommandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
