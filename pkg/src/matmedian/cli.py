"""Command-line interface: solve, exact, reduce, gen, bench, check.

Reports are deterministic JSON/CSV with every cost printed as an exact
"p/q" rational and ratios as 6-digit decimals.  Exit codes: 0 success,
1 usage error, 2 infeasible, 3 validation failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from matmedian.extensions import round_laminar_constrained, round_two_matroid, round_with_penalties
from matmedian.instances import (
    GenParams,
    InstanceFormatError,
    Intersection,
    Knapsack,
    LaminarBounds,
    MedianInstance,
    Penalty,
    Plain,
    TwoMatroid,
    frac_from_str,
    frac_to_str,
    generate_random,
    parse_instance,
    serialize_instance,
    validate,
)
from matmedian.knapsack import knapsack_median, make_guess, round_knapsack_once
from matmedian.lp import Infeasible
from matmedian.oracle import InfeasibleInstance, exact_solve
from matmedian.rounding import RoundedSolution, round_matroid_median
from matmedian import reductions

USAGE_ERROR = 1
INFEASIBLE = 2
INVALID = 3


def _ratio(num: Fraction, den: Fraction) -> str:
    if den == 0:
        return "1.000000" if num == 0 else "inf"
    return f"{float(num / den):.6f}"


def _load_instance(path: str) -> MedianInstance:
    with open(path, "rb") as fh:
        return parse_instance(fh.read())


def _solution_report(inst: MedianInstance, sol: RoundedSolution,
                     mode: str) -> dict:
    lp = sol.certificates.get("lp_objective", Fraction(0))
    return {
        "variant": inst.variant.kind,
        "mode": mode,
        "open": list(sol.open_facilities),
        "assignment": {j: sol.assignment.get(j) for j in inst.clients},
        "costs": {
            "facility": frac_to_str(sol.facility_cost),
            "connection": frac_to_str(sol.connection_cost),
            "penalty": frac_to_str(sol.penalty_cost),
            "total": frac_to_str(sol.total_cost),
        },
        "lp_objective": frac_to_str(lp),
        "ratio_lp": _ratio(sol.total_cost, lp),
        "certificates": {k: frac_to_str(v) for k, v in
                         sorted(sol.certificates.items())},
    }


def _dispatch_solve(inst: MedianInstance, mode: str, eps: Fraction,
                    guess_connection, guess_opening) -> tuple[RoundedSolution, str]:
    v = inst.variant
    if isinstance(v, Plain):
        return round_matroid_median(inst, mode), mode
    if isinstance(v, Penalty):
        return round_with_penalties(inst), "penalty"
    if isinstance(v, TwoMatroid):
        return round_two_matroid(inst), "two_matroid"
    if isinstance(v, LaminarBounds):
        return round_laminar_constrained(inst), "laminar"
    if isinstance(v, Knapsack):
        if guess_connection is not None and guess_opening is not None:
            guess = make_guess(inst, guess_connection, guess_opening)
            return round_knapsack_once(inst, guess), "knapsack"
        return knapsack_median(inst, eps), "knapsack"
    if isinstance(v, Intersection):
        raise Infeasible("matroid-intersection fixtures admit no "
                         "multiplicative approximation; use the zero-cost oracle")
    raise Infeasible(f"no solver for variant {type(v).__name__}")


def cmd_solve(args) -> int:
    inst = _load_instance(args.file)
    if args.variant != "auto" and args.variant != inst.variant.kind:
        print(f"instance is a {inst.variant.kind!r} variant, not {args.variant!r}",
              file=sys.stderr)
        return USAGE_ERROR
    problems = validate(inst)
    if problems:
        for p in problems:
            print(p, file=sys.stderr)
        return INVALID
    sol, mode = _dispatch_solve(inst, args.mode, Fraction(args.eps),
                                args.guess_connection and Fraction(args.guess_connection),
                                args.guess_opening and Fraction(args.guess_opening))
    print(json.dumps(_solution_report(inst, sol, mode), sort_keys=True, indent=1))
    return 0


def cmd_exact(args) -> int:
    inst = _load_instance(args.file)
    problems = validate(inst)
    if problems:
        for p in problems:
            print(p, file=sys.stderr)
        return INVALID
    sol = exact_solve(inst)
    print(json.dumps(_solution_report(inst, sol, "exact"), sort_keys=True, indent=1))
    return 0


def cmd_check(args) -> int:
    inst = _load_instance(args.file)
    problems = validate(inst)
    for p in problems:
        print(p)
    return INVALID if problems else 0


def cmd_gen(args) -> int:
    params = GenParams(n_facilities=args.facilities, n_clients=args.clients,
                       matroid_kind=args.matroid, variant=args.variant,
                       metric=args.metric)
    inst = generate_random(args.seed, params)
    blob = serialize_instance(inst)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(blob)
    else:
        sys.stdout.write(blob.decode("utf-8"))
    return 0


def _solve_for_bench(inst: MedianInstance, mode: str) -> RoundedSolution:
    v = inst.variant
    if isinstance(v, Plain):
        return round_matroid_median(inst, mode)
    if isinstance(v, Penalty):
        return round_with_penalties(inst)
    if isinstance(v, TwoMatroid):
        return round_two_matroid(inst)
    if isinstance(v, LaminarBounds):
        return round_laminar_constrained(inst)
    if isinstance(v, Knapsack):
        return knapsack_median(inst)
    raise Infeasible("unsupported variant")


def cmd_bench(args) -> int:
    lo, _, hi = args.seeds.partition("..")
    try:
        seeds = range(int(lo), int(hi) + 1)
    except ValueError:
        print(f"bad seed range {args.seeds!r}", file=sys.stderr)
        return USAGE_ERROR
    rows = ["seed,variant,mode,lp,alg,opt,ratio_lp,ratio_opt"]
    for seed in seeds:
        params = GenParams(n_facilities=args.facilities, n_clients=args.clients,
                           matroid_kind=args.matroid, variant=args.variant,
                           metric=args.metric)
        inst = generate_random(seed, params)
        sol = _solve_for_bench(inst, args.mode)
        opt = exact_solve(inst).total_cost
        lp = sol.certificates.get("lp_objective", Fraction(0))
        rows.append(",".join([
            str(seed), args.variant, args.mode, frac_to_str(lp),
            frac_to_str(sol.total_cost), frac_to_str(opt),
            _ratio(sol.total_cost, lp), _ratio(sol.total_cost, opt)]))
    text = "\n".join(rows) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _frac_table(entries, where) -> dict:
    out = {}
    for row in entries:
        if not (isinstance(row, list) and len(row) == 3):
            raise InstanceFormatError(f"bad entry {row!r} in {where}")
        out[(row[0], row[1])] = frac_from_str(row[2], where)
    return out


def cmd_reduce(args) -> int:
    with open(args.source, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    kind = args.kind
    if kind == "data_placement":
        inst, mapping = reductions.reduce_data_placement(
            caches={i: int(c) for i, c in doc["caches"].items()},
            objects=doc["objects"],
            clients={j: (v["object"], frac_from_str(v["demand"], f"clients[{j}]"))
                     for j, v in doc["clients"].items()},
            storage_cost=_frac_table(doc["storage_costs"], "storage_costs"),
            metric=_frac_table(doc["distances"], "distances"))
    elif kind == "mobile_facility":
        inst, mapping = reductions.reduce_mobile_facility(
            locations=doc["locations"],
            metric=_frac_table(doc["metric"], "metric"),
            clients={j: frac_from_str(v, f"clients[{j}]")
                     for j, v in doc["clients"].items()},
            initial=doc["initial"],
            move_cost=_frac_table(doc["move_costs"], "move_costs"))
    elif kind == "kmedian_forest":
        inst, mapping = reductions.reduce_kmedian_forest(
            nodes=doc["nodes"],
            assign_metric=_frac_table(doc["assign_metric"], "assign_metric"),
            tree_metric=_frac_table(doc["tree_metric"], "tree_metric"),
            k=int(doc["k"]),
            open_cost={v: frac_from_str(c, f"open_costs[{v}]")
                       for v, c in doc.get("open_costs", {}).items()} or None)
    elif kind == "mlufl":
        slot = doc.get("slot_costs")
        inst, mapping = reductions.reduce_mlufl(
            open_cost={i: frac_from_str(c, f"open_costs[{i}]")
                       for i, c in doc["open_costs"].items()},
            clients={j: frac_from_str(v, f"clients[{j}]")
                     for j, v in doc["clients"].items()},
            metric=_frac_table(doc["distances"], "distances"),
            latency=[frac_from_str(x, "latency") for x in doc["latency"]],
            slot_cost={(i, int(t)): frac_from_str(c, "slot_costs")
                       for i, t, c in slot} if slot else None)
    else:
        print(f"unknown reduction kind {kind!r}", file=sys.stderr)
        return USAGE_ERROR
    with open(args.dest, "wb") as fh:
        fh.write(serialize_instance(inst))
    sidecar = {
        "kind": mapping.kind,
        "facility_of": {f: list(t) for f, t in sorted(mapping.facility_of.items())},
        "client_of": dict(sorted(mapping.client_of.items())),
        "cost_offset": frac_to_str(mapping.cost_offset),
        "notes": {k: (list(v) if isinstance(v, tuple) else v)
                  for k, v in mapping.notes.items()},
    }
    with open(args.dest + ".mapping.json", "w", encoding="utf-8") as fh:
        json.dump(sidecar, fh, sort_keys=True, indent=1, default=str)
        fh.write("\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matmedian",
        description="matroid median family: LP-rounding solvers and oracles")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="round an instance file")
    p.add_argument("file")
    p.add_argument("--mode", choices=("basic", "improved", "lmp"),
                   default="improved", help="plain-variant pipeline flavor")
    p.add_argument("--variant", default="auto",
                   choices=("auto", "plain", "penalty", "two_matroid",
                            "laminar", "knapsack"),
                   help="expected variant; errors if the file disagrees")
    p.add_argument("--eps", default="1/10", help="knapsack guess grid step")
    p.add_argument("--guess-connection", default=None)
    p.add_argument("--guess-opening", default=None)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("exact", help="brute-force optimum")
    p.add_argument("file")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("check", help="validate an instance file")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("gen", help="write a random instance")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--facilities", type=int, default=6)
    p.add_argument("--clients", type=int, default=4)
    p.add_argument("--matroid", default="uniform",
                   choices=("uniform", "partition", "laminar", "graphic", "explicit"))
    p.add_argument("--variant", default="plain",
                   choices=("plain", "penalty", "two_matroid", "laminar", "knapsack"))
    p.add_argument("--metric", default="line", choices=("line", "grid"))
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="seed sweep CSV: alg vs LP vs oracle")
    p.add_argument("--seeds", required=True, help="range like 0..99")
    p.add_argument("--variant", default="plain",
                   choices=("plain", "penalty", "two_matroid", "laminar", "knapsack"))
    p.add_argument("--mode", choices=("basic", "improved", "lmp"),
                   default="improved")
    p.add_argument("--facilities", type=int, default=6)
    p.add_argument("--clients", type=int, default=4)
    p.add_argument("--matroid", default="uniform",
                   choices=("uniform", "partition", "laminar", "graphic", "explicit"))
    p.add_argument("--metric", default="line", choices=("line", "grid"))
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("reduce", help="encode a source problem file")
    p.add_argument("kind", choices=("data_placement", "mobile_facility",
                                    "kmedian_forest", "mlufl"))
    p.add_argument("source")
    p.add_argument("dest")
    p.set_defaults(func=cmd_reduce)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code else 0
    try:
        return args.func(args)
    except (Infeasible, InfeasibleInstance) as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return INFEASIBLE
    except (InstanceFormatError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
