"""Command line front end: ``lamlab reduce|bench|families|degree|dot``."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict

from . import bench, degree, families, sharing
from .terms import BUILTINS, ParseError, parse, parse_definitions, pretty

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_FUEL = 2


def _env(args) -> dict:
    if not args.defs:
        return dict(BUILTINS)
    with open(args.defs, encoding="utf-8") as fh:
        return parse_definitions(fh.read())


def _term(args):
    return parse(args.term, _env(args))


def _print_kv(pairs, out):
    width = max((len(k) for k, _ in pairs), default=0)
    for k, v in pairs:
        print(f"{k:<{width}}  {v}", file=out)


def cmd_reduce(args, out) -> int:
    t = _term(args)
    if args.strategy == "optimal":
        nf, st, status = sharing.reduce_optimal(t, args.fuel, args.order, args.encoding)
        run = bench.EngineRun("optimal", nf, status, st.as_dict())
    else:
        run = bench.run_engine(t, args.strategy, args.fuel)
    if run.status == bench.UNTYPABLE_SKIP:
        print("error: term is not simply typable; parallel reduction needs a typable term", file=sys.stderr)
        return EXIT_ERROR
    row = _row_from_run("input", 0, run)
    if args.emit == "json":
        rec = asdict(row)
        rec["stats"] = run.stats
        print(json.dumps(rec, indent=2), file=out)
    elif args.emit == "csv":
        out.write(bench.rows_to_csv([row]))
    else:
        if run.status == bench.NORMALIZED:
            print(pretty(run.result), file=out)
        else:
            print(f"no normal form within fuel {args.fuel}", file=out)
        _print_kv([("status", run.status)] + list(run.stats.items()), out)
    return EXIT_OK if run.status == bench.NORMALIZED else EXIT_FUEL


def _row_from_run(term_id: str, n: int, run: bench.EngineRun) -> bench.BenchmarkRow:
    s = run.stats
    return bench.BenchmarkRow(
        term_id=term_id, n=n, strategy=run.strategy,
        beta_or_interaction_count=run.count,
        bookkeeping=s.get("bookkeeping_interactions", 0),
        duplications=s.get("duplications", 0),
        identity_firings=s.get("identity_firings", 0),
        peak_size=s["peak_nodes"] if run.strategy == "optimal" else s.get("peak_term_size", 0),
        wall_time=0.0,
        status=run.status,
        normal_form=pretty(run.result) if run.status == bench.NORMALIZED else "",
    )


def cmd_bench(args, out) -> int:
    ns = bench.parse_range(args.n)
    strategies = args.strategy.split(",") if args.strategy else list(bench.STRATEGIES)
    for s in strategies:
        if s not in bench.STRATEGIES:
            raise ValueError(f"unknown strategy {s!r}")
    rows = bench.bench(args.family, ns, strategies, args.fuel, args.timing)
    if args.emit == "json":
        out.write(bench.rows_to_json(rows))
    elif args.emit == "csv":
        out.write(bench.rows_to_csv(rows))
    else:
        cols = [f for f in bench.ROW_FIELDS if f != "normal_form"]
        table = [cols] + [[str(getattr(r, c)) for c in cols] for r in rows]
        widths = [max(len(line[i]) for line in table) for i in range(len(cols))]
        for line in table:
            print("  ".join(x.rjust(w) for x, w in zip(line, widths)).rstrip(), file=out)
    return EXIT_OK


def cmd_families(args, out) -> int:
    t = _term(args)
    fuel = min(args.fuel, 10_000)
    rep = families.count_families(t, args.order, fuel)
    if args.emit == "json":
        rec = {
            "fired_redex_names": [families.format_label(n) for n in rep.fired_redex_names],
            "distinct_families": rep.distinct_families,
            "redexes_fired": rep.redexes_fired,
            "status": rep.status,
            "normal_form": pretty(rep.result) if rep.status == bench.NORMALIZED else "",
        }
        print(json.dumps(rec, indent=2), file=out)
    else:
        print(rep.render(), file=out)
        if rep.status != bench.NORMALIZED:
            print(f"status: {rep.status}", file=out)
    return EXIT_OK if rep.status == bench.NORMALIZED else EXIT_FUEL


def cmd_degree(args, out) -> int:
    t = _term(args)
    try:
        ty = degree.infer_type(t)
    except degree.Untypable as e:
        print(f"error: untypable term ({e})", file=sys.stderr)
        return EXIT_ERROR
    reports = degree.redex_reports(t)
    d = max((r.degree for r in reports), default=0)
    status = bench.NORMALIZED
    try:
        _, steps = degree.parallel_normalize(t, min(args.fuel, 10_000))
    except degree.FuelExhausted as e:
        steps, status = e.steps, bench.FUEL_EXHAUSTED
    if args.emit == "json":
        rec = {
            "type": str(ty),
            "redexes": [{"position": list(r.position), "type": str(r.redex_type), "degree": r.degree}
                        for r in reports],
            "degree": d,
            "parallel_steps": steps,
            "within_bound": steps <= d,
            "status": status,
        }
        print(json.dumps(rec, indent=2), file=out)
    else:
        print(f"type: {ty}", file=out)
        for r in reports:
            pos = "".join(map(str, r.position)) or "root"
            print(f"  redex at {pos}: {r.redex_type}  degree {r.degree}", file=out)
        print(f"degree: {d}", file=out)
        print(f"parallel steps: {steps} ({'within' if steps <= d else 'exceeds'} bound {d})", file=out)
    return EXIT_OK if status == bench.NORMALIZED else EXIT_FUEL


def cmd_dot(args, out) -> int:
    t = _term(args)
    net = sharing.translate(t, args.encoding)
    if args.stage == "normal":
        net, _ = sharing.normalize(net, args.fuel, args.order)
        if not sharing.is_done(net, args.order):
            print(f"error: net not normal after {args.fuel} interactions", file=sys.stderr)
            return EXIT_FUEL
    out.write(sharing.to_dot(net))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--fuel", type=int, default=bench.DEFAULT_FUEL,
                        help="step/interaction budget (default 10^7)")
    common.add_argument("--defs", metavar="FILE", help="definitions file of 'name = term ;' lines")
    common.add_argument("--emit", choices=("text", "json", "csv"), default="text")

    ap = argparse.ArgumentParser(prog="lamlab", description="Compare lambda calculus reduction engines.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", parents=[common], help="reduce one term")
    p.add_argument("term")
    p.add_argument("--strategy", choices=bench.STRATEGIES, default="normal")
    p.add_argument("--order", choices=sharing.ORDERS, default="lazy", help="optimal engine scheduling")
    p.add_argument("--encoding", choices=("scope", "argument"), default="scope")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("bench", parents=[common], help="run a benchmark family")
    p.add_argument("--family", choices=bench.FAMILIES, default="term1")
    p.add_argument("--n", default="2..6", help="range such as 2..6 or 1,3,5")
    p.add_argument("--strategy", default="",
                   help="comma-separated engines (default: all of " + ",".join(bench.STRATEGIES) + ")")
    p.add_argument("--timing", action="store_true", help="record wall time (makes output nondeterministic)")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("families", parents=[common], help="count Levy redex families")
    p.add_argument("term")
    p.add_argument("--order", choices=("leftmost", "rightmost"), default="leftmost")
    p.set_defaults(func=cmd_families)

    p = sub.add_parser("degree", parents=[common], help="principal type and redex degrees")
    p.add_argument("term")
    p.set_defaults(func=cmd_degree)

    p = sub.add_parser("dot", parents=[common], help="Graphviz text of the sharing graph")
    p.add_argument("term")
    p.add_argument("--stage", choices=("initial", "normal"), default="initial")
    p.add_argument("--order", choices=sharing.ORDERS, default="lazy")
    p.add_argument("--encoding", choices=("scope", "argument"), default="scope")
    p.set_defaults(func=cmd_dot)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if args.fuel <= 0:
        print("error: --fuel must be positive", file=sys.stderr)
        return EXIT_ERROR
    try:
        return args.func(args, out)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
    except (OSError, ValueError, sharing.NetError, sharing.ReadbackError) as e:
        print(f"error: {e}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
