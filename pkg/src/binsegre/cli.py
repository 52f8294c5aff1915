"""Command-line front end: ``binsegre census | verify | quadric | lgr | blowup-check | weights``."""

from __future__ import annotations

import argparse
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import report
from .lagrangian import lgr_census
from .symmetry import quadric_census, tensor_weights, weight_distance_rule
from .veldkamp import blow_up_report

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _write(text: str, out: str | None) -> list[str]:
    if out is None or out == "-":
        sys.stdout.write(text)
        return []
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    return [str(path)]


def _need_n(n: int, lo: int, hi: int, what: str) -> None:
    if not lo <= n <= hi:
        raise UsageError(f"{what} needs {lo} <= --n <= {hi}, got {n}")


# ----------------------------------------------------------------- commands


def cmd_census(args) -> report.RunReport:
    _need_n(args.n, 1, report.MAX_N[args.target], f"{args.target} census")
    rep = report.RunReport("census", {"n": args.n, "target": args.target, "format": args.format})
    records = report.census_records(args.n, args.target)
    text = report.to_json(args.n, args.target, records) if args.format == "json" else report.to_csv(records)
    rep.artifacts = _write(text, args.out)
    rep.defects = report.census_defects(args.n, args.target)
    return rep


def _run_scope(scope: str) -> list[report.Check]:
    return report.run_scope(scope)


def cmd_verify(args) -> report.RunReport:
    scopes = list(report.CHECKS) if args.scope == "all" else [args.scope]
    rep = report.RunReport("verify", {"scope": args.scope, "workers": args.workers})
    if args.workers > 1 and len(scopes) > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            results = list(pool.map(_run_scope, scopes))
    else:
        results = [_run_scope(s) for s in scopes]
    for checks in results:
        rep.checks.extend(checks)
    return rep


def cmd_quadric(args) -> report.RunReport:
    _need_n(args.n, 2, 4, "quadric")
    q = quadric_census(args.n)
    rep = report.RunReport("quadric", {"n": args.n}, data=q.to_dict())
    rep.checks.append(report.Check("quadric is consistent", True, q.ok, q.ok))
    rep.defects = list(q.defects)
    return rep


def cmd_lgr(args) -> report.RunReport:
    _need_n(args.n, 1, 4, "lgr")
    r = lgr_census(args.n)
    rep = report.RunReport("lgr", {"n": args.n}, data=r.to_dict())
    rep.checks.append(report.check_equal("generator count", r.expected_count, r.generator_count))
    rep.checks.append(report.check_equal("spinor map injective", True, r.injective))
    rep.defects = list(r.defects)
    return rep


def cmd_blowup(args) -> report.RunReport:
    _need_n(args.n, 2, 4, "blowup-check")
    b = blow_up_report(args.n, axis=args.axis if args.axis is not None else 0)
    data = {
        "ordinary_lines": b.ordinary_lines,
        "extraordinary_lines": b.extraordinary_lines,
        "hyperplanes": b.hyperplanes,
        "type_map": dict(sorted(b.type_map.items(), key=lambda kv: report.vl_sort_key(kv[0]))),
    }
    rep = report.RunReport("blowup-check", {"n": args.n, "axis": args.axis or 0}, data=data)
    rep.checks += [
        report.check_equal("6*ordinary + 3*extraordinary", b.hyperplanes, 6 * b.ordinary_lines + 3 * b.extraordinary_lines),
        report.check_equal("partition", True, b.partition_ok),
        report.check_equal("round trip", True, b.round_trip_ok),
        report.check_equal("type multiplicities", True, b.multiplicity_ok),
    ]
    rep.defects = list(b.defects)
    return rep


def cmd_weights(args) -> report.RunReport:
    _need_n(args.n, 1, 4, "weights")
    records = report.hyperplane_records(args.n)
    w = tensor_weights(args.n)
    hist = {int(k): int((w[1:] == k).sum()) for k in sorted(set(w[1:].tolist()))}
    data = {"per_type": {r["type"]: r["weight"] for r in records}, "weight_histogram": hist}
    rep = report.RunReport("weights", {"n": args.n}, data=data)
    if args.n == 4:
        d = weight_distance_rule(4)
        data["singular_pair_sums"] = {str(k): v for k, v in d.by_distance.items()}
        rep.checks.extend(report.check_weights())
    rep.defects = report.census_defects(args.n, "hyperplanes")
    return rep


# ------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="binsegre", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("census", help="classify hyperplanes or Veldkamp lines and export the census")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--target", choices=("hyperplanes", "vlines"), default="hyperplanes")
    c.add_argument("--format", choices=("json", "csv"), default="json")
    c.add_argument("--out", help="census file (default: stdout)")
    c.add_argument("--report", help="where to write the run report (default: stderr)")
    c.set_defaults(func=cmd_census)

    v = sub.add_parser("verify", help="compare computed censuses with the shipped golden tables")
    v.add_argument("--scope", choices=report.SCOPES, default="all")
    v.add_argument("--workers", type=int, default=1)
    v.add_argument("--out", help="run report file (default: stdout)")
    v.set_defaults(func=cmd_verify)

    for name, func, hint in (("quadric", cmd_quadric, "invariant quadric census"),
                             ("lgr", cmd_lgr, "spinor images of Lagrangian subspaces"),
                             ("blowup-check", cmd_blowup, "blow-up / projection correspondence"),
                             ("weights", cmd_weights, "tensor weights per hyperplane type")):
        s = sub.add_parser(name, help=hint)
        s.add_argument("--n", type=int, default=4)
        if name == "blowup-check":
            s.add_argument("--axis", type=int, default=None)
        s.add_argument("--out", help="run report file (default: stdout)")
        s.set_defaults(func=func)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    if getattr(args, "workers", 1) < 1:
        print("error: --workers must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    if getattr(args, "axis", None) is not None and not 0 <= args.axis < args.n:
        print(f"error: --axis must lie in [0, {args.n})", file=sys.stderr)
        return EXIT_USAGE
    t0 = time.perf_counter()
    try:
        rep = args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    rep.wall_time = time.perf_counter() - t0
    text = rep.to_json()
    if args.command == "census":
        if args.report:
            _write(text, args.report)
        else:
            sys.stderr.write(text)
    else:
        _write(text, args.out)
    for c in rep.checks:
        if not c.passed:
            print(f"FAIL {c.name}: expected {c.expected!r}, got {c.actual!r}", file=sys.stderr)
    for d in rep.defects:
        print(f"DEFECT {d}", file=sys.stderr)
    return EXIT_OK if rep.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
