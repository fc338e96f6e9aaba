"""Command-line interface.

Subcommands: count, arrangement, regions, fit, reciprocity, graph,
counterexample-m5.  JSON is the canonical output format (rationals as
"p/q" strings); CSV is available for (t, count) tables and SVG for m = 3
arrangement figures.  Exit codes: 0 success, 2 validation error, 3 work
guard, 4 verification mismatch.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from . import __version__
from .arrangements import Arrangement, arrangement_for
from .ehrhart import (
    CountReport,
    closed_ehrhart,
    fit_family_quasipolynomial,
    intersection_census_2d,
    open_ehrhart,
    period_bound,
    reciprocity_check,
)
from .graphs import (
    build_bh_graph,
    build_golomb_graph,
    injectivity_report,
    six_marking_counterexample,
)
from .regions import arrangement_svg, enumerate_regions
from .rulers import (
    BudgetExceeded,
    count_family_bruteforce,
    DEFAULT_WORK_BUDGET,
    FamilyKind,
    FamilySpec,
)
from .linalg import frac_str

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_GUARD = 3
EXIT_MISMATCH = 4


class VerificationMismatch(RuntimeError):
    pass


def _emit(doc, fmt: str = "json"):
    if fmt == "json":
        print(json.dumps(doc, sort_keys=True, separators=(",", ":")))
    else:
        print(doc)


def _family_from_args(args) -> FamilySpec:
    kind = FamilyKind(args.family)
    return FamilySpec(kind, args.m, h=args.h, g=args.g)


def _t_values(args) -> list[int]:
    if args.t_list:
        return [int(x) for x in args.t_list.split(",")]
    if args.t is not None:
        return [args.t]
    raise ValueError("need --t or --t-list")


def _cache_key(f: FamilySpec, t: int, arrangement_hash: str) -> str:
    blob = json.dumps(
        {
            "family": f.describe(),
            "t": t,
            "arrangement": arrangement_hash,
            "version": __version__,
        },
        sort_keys=True,
    )
    return hashlib.sha256(blob.encode("ascii")).hexdigest()


def cmd_count(args) -> int:
    f = _family_from_args(args)
    arr = arrangement_for(f)
    arr_hash = arr.content_hash()
    cache_dir = Path(args.cache_dir) if args.cache_dir else None
    if cache_dir:
        cache_dir.mkdir(parents=True, exist_ok=True)
    rows = []
    for t in _t_values(args):
        report = None
        path = None
        if cache_dir:
            path = cache_dir / (_cache_key(f, t, arr_hash) + ".json")
            if path.exists():
                report = CountReport(**json.loads(path.read_text()))
        if report is None:
            n = open_ehrhart(arr, t, budget=args.budget, workers=args.workers)
            report = CountReport(
                family=f.describe(),
                t=t,
                open_count=n,
                arrangement_hash=arr_hash,
            )
            if path:
                path.write_text(report.to_json())
        if args.oracle:
            brute = count_family_bruteforce(
                f, t, budget=args.budget, workers=args.workers
            )
            if brute != report.open_count:
                raise VerificationMismatch(
                    f"t={t}: arrangement count {report.open_count} != "
                    f"definition count {brute}"
                )
        rows.append(report)
    if args.format == "csv":
        print("t,count")
        for r in rows:
            print(f"{r.t},{r.open_count}")
    else:
        for r in rows:
            print(r.to_json())
    return EXIT_OK


def cmd_arrangement(args) -> int:
    f = _family_from_args(args)
    arr = arrangement_for(f)
    doc = arr.to_dict()
    doc["count"] = len(arr.elements)
    doc["hash"] = arr.content_hash()
    _emit(doc)
    return EXIT_OK


def cmd_regions(args) -> int:
    f = _family_from_args(args)
    arr = arrangement_for(f)
    regions = enumerate_regions(arr, workers=args.workers)
    doc = {
        "arrangement_hash": arr.content_hash(),
        "count": len(regions),
        "regions": [
            {
                "signs": list(r.signs),
                "representative": [frac_str(x) for x in r.representative],
            }
            for r in regions
        ],
    }
    if arr.m == 3:
        doc["census"] = list(intersection_census_2d(arr))
    _emit(doc)
    if args.svg:
        census = intersection_census_2d(arr) if arr.m == 3 else None
        svg = arrangement_svg(arr, region_total=len(regions), census=census)
        Path(args.svg).write_text(svg)
    return EXIT_OK


def cmd_fit(args) -> int:
    f = _family_from_args(args)
    arr = arrangement_for(f)
    period = args.period if args.period else period_bound(arr)
    residues = (
        [int(x) for x in args.residue.split(",")] if args.residue else None
    )

    def counter(t):
        return open_ehrhart(arr, t, budget=args.budget, workers=args.workers)

    qp = fit_family_quasipolynomial(counter, f.m - 1, period, residues)
    doc = qp.to_dict()
    doc["family"] = f.describe()
    _emit(doc)
    return EXIT_OK


def cmd_reciprocity(args) -> int:
    f = _family_from_args(args)
    arr = arrangement_for(f)
    t_list = _t_values(args)
    report = reciprocity_check(
        arr, t_list, period=args.period or None, budget=args.budget
    )
    _emit(report.to_dict())
    return EXIT_OK if report.all_ok else EXIT_MISMATCH


def cmd_graph(args) -> int:
    f = _family_from_args(args)
    if f.kind is FamilyKind.GOLOMB:
        g = build_golomb_graph(f.m)
    elif f.kind is FamilyKind.BH:
        g = build_bh_graph(f.m, f.h)
    else:
        raise ValueError("graphs exist for golomb and bh families")
    doc = g.to_dict()
    if args.injectivity:
        arr = arrangement_for(f)
        doc["injectivity"] = injectivity_report(arr, workers=args.workers).to_dict()
    _emit(doc)
    return EXIT_OK


def cmd_counterexample(args) -> int:
    report = six_marking_counterexample(workers=args.workers)
    doc = report.to_dict()
    ok = (
        report.coherent
        and report.acyclic
        and not report.preimage_found
        and report.distinct_images == report.region_total
    )
    doc["status"] = "PASS" if ok else "FAIL"
    _emit(doc)
    return EXIT_OK if ok else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rulercount",
        description="Exact counting of generalized Golomb rulers via "
        "inside-out polytopes.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, need_family=True):
        if need_family:
            p.add_argument(
                "--family",
                required=True,
                choices=[k.value for k in FamilyKind],
            )
            p.add_argument("--m", type=int, required=True)
            p.add_argument("--h", type=int, default=None)
            p.add_argument("--g", type=int, default=None)
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--budget", type=int, default=DEFAULT_WORK_BUDGET)

    p = sub.add_parser("count", help="open lattice counts per dilation")
    add_common(p)
    p.add_argument("--t", type=int, default=None)
    p.add_argument("--t-list", default=None)
    p.add_argument("--oracle", action="store_true", help="cross-check against brute force")
    p.add_argument("--cache-dir", default=None)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("arrangement", help="canonical arrangement dump")
    add_common(p)
    p.set_defaults(func=cmd_arrangement)

    p = sub.add_parser("regions", help="region census")
    add_common(p)
    p.add_argument("--svg", default=None, help="write an SVG figure (m=3)")
    p.set_defaults(func=cmd_regions)

    p = sub.add_parser("fit", help="fit quasipolynomial constituents")
    add_common(p)
    p.add_argument("--period", type=int, default=None)
    p.add_argument("--residue", default=None, help="comma-separated residues")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("reciprocity", help="verify open/closed reciprocity")
    add_common(p)
    p.add_argument("--t", type=int, default=None)
    p.add_argument("--t-list", default=None)
    p.add_argument("--period", type=int, default=None)
    p.set_defaults(func=cmd_reciprocity)

    p = sub.add_parser("graph", help="comparison graph dump")
    add_common(p)
    p.add_argument("--injectivity", action="store_true")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("counterexample-m5", help="six-marking surjectivity counterexample")
    add_common(p, need_family=False)
    p.set_defaults(func=cmd_counterexample)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(json.dumps({"error": {"kind": "guard", "message": str(exc)}}), file=sys.stderr)
        return EXIT_GUARD
    except VerificationMismatch as exc:
        print(json.dumps({"error": {"kind": "mismatch", "message": str(exc)}}), file=sys.stderr)
        return EXIT_MISMATCH
    except (ValueError, KeyError) as exc:
        print(json.dumps({"error": {"kind": "validation", "message": str(exc)}}), file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
