"""Command-line front end: ``gfinv {moments,invariants,verify,independence,discover}``.

Data goes to stdout (or ``--output``), diagnostics to stderr.  Exit codes:
0 success, 1 a check failed, 2 bad input, 3 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .algebra import Group, moment_name
from .catalog import get_invariant, invariant_set, verify_catalog, verify_relations
from .discovery import DEFAULT_BUDGET, BudgetExceeded, EnumerationSpec, discover
from .harness import invariance_check
from .independence import MomentVariableSpace, trial_ranks
from .moments import MomentError, ParseError, central_moments, load_shape, raw_moments
from .report import dumps, render_table

EXIT_OK, EXIT_CHECK, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

# independence sets; "pi6" drops the three primitive invariants that are
# functions of the others
_RANK_SETS = {
    "hu": [f"I{i}" for i in range(1, 8)],
    "hu6": [f"I{i}" for i in range(1, 7)],
    "pi": [f"IP{i}" for i in range(1, 10)],
    "pi6": ["IP1", "IP2", "IP4", "IP5", "IP6", "IP8"],
    "affine19": [f"IA{i}" for i in range(1, 20)],
    "3d": ["J1", "J2", "J3"],
}


class InputError(Exception):
    pass


def _load(path):
    if path is None:
        raise InputError("--input is required")
    p = Path(path)
    if not p.is_file():
        raise InputError(f"cannot read input file: {p}")
    return load_shape(p)


def _moment_key(idx, raw):
    name = moment_name(idx)
    return "m" + name[2:] if raw else name


# --------------------------------------------------------------------------
# commands; each returns (payload, table_rows, exit_code, plot callback)

def cmd_moments(args):
    ps = _load(args.input)
    if args.max_order < 0:
        raise InputError("--max-order must be >= 0")
    raw = raw_moments(ps, args.max_order)
    cen = central_moments(ps, max(args.max_order, 1))
    raw_d = {_moment_key(i, True): v for i, v in raw.items()}
    cen_d = {_moment_key(i, False): v for i, v in cen.items() if sum(i) <= args.max_order}
    payload = {
        "command": "moments",
        "input": str(args.input),
        "dim": ps.dim,
        "points": len(ps),
        "max_order": args.max_order,
        "raw": raw_d,
        "central": cen_d,
    }
    rows = [{"moment": k, "value": v} for k, v in {**raw_d, **cen_d}.items()]

    def plot(outdir):
        from .plotting import plot_moments

        return plot_moments(raw_d, cen_d, outdir)

    return payload, rows, EXIT_OK, plot


def cmd_invariants(args):
    try:
        invs = invariant_set(args.set)
    except KeyError as exc:
        raise InputError(exc.args[0]) from None
    ps = _load(args.input)
    if ps.dim != invs[0].dim:
        raise InputError(f"set {args.set!r} needs {invs[0].dim}D input, got {ps.dim}D")
    order = max(inv.reference.order for inv in invs)
    mv = central_moments(ps, order)
    if mv.m00 <= 0:
        raise MomentError("degenerate shape: mu00 must be positive")
    values = [
        {"name": inv.name, "value": inv.normalized_value(mv), "k": inv.k, "skew": inv.skew, "group": inv.group.value}
        for inv in invs
    ]
    payload = {
        "command": "invariants",
        "input": str(args.input),
        "set": args.set,
        "max_order": order,
        "mu00": mv.m00,
        "invariants": values,
    }
    code = EXIT_OK
    campaign = None
    if args.transforms:
        campaign = []
        for inv in invs:
            rep = invariance_check(inv, ps, n_transforms=args.transforms, seed=args.seed, tol=args.tol, group=args.group)
            campaign.append({
                "name": inv.name,
                "group": rep.group,
                "tol": rep.tol,
                "pass": rep.passed,
                "max_rel_err": max(r["rel_err"] for r in rep.per_transform),
                "rel_errs": [r["rel_err"] for r in rep.per_transform],
            })
        payload["invariance"] = {"seed": args.seed, "transforms": args.transforms, "results": campaign}
        payload["pass"] = all(c["pass"] for c in campaign)
        code = EXIT_OK if payload["pass"] else EXIT_CHECK
    rows = [dict(v) for v in values]
    if campaign:
        for r, c in zip(rows, campaign):
            r["max_rel_err"] = c["max_rel_err"]
            r["pass"] = c["pass"]

    def plot(outdir):
        from .plotting import plot_invariants

        return plot_invariants(values, outdir, campaign)

    return payload, rows, code, plot


def cmd_verify(args):
    do_rel = args.relations or args.catalog is None
    groups = []
    if args.catalog == "all" or (args.catalog is None and not args.relations):
        groups = list(Group)
    elif args.catalog is not None:
        groups = [Group.parse(args.catalog)]
    payload = {"command": "verify"}
    rows = []
    ok = True
    if do_rel:
        rel = [r.to_json() for r in verify_relations()]
        payload["relations"] = rel
        ok &= all(r["holds"] for r in rel)
        rows += [{"check": r["relation"], "pass": r["holds"], "scalar": None} for r in rel]
    cat = {}
    for g in groups:
        res = [r.to_json() for r in verify_catalog(g)]
        for r in res:
            r["k"] = get_invariant(r["name"]).k
        cat[g.value] = res
        ok &= all(r["match"] for r in res)
        rows += [{"check": f"{r['name']} core", "pass": r["match"], "scalar": r["scalar"]} for r in res]
    if groups:
        payload["catalog"] = cat
    payload["pass"] = ok

    def plot(outdir):
        from .plotting import plot_verify

        return plot_verify(cat, outdir)

    return payload, rows, EXIT_OK if ok else EXIT_CHECK, plot


def cmd_independence(args):
    if args.set not in _RANK_SETS:
        raise InputError(f"unknown set {args.set!r}; choose from {sorted(_RANK_SETS)}")
    invs = [get_invariant(n) for n in _RANK_SETS[args.set]]
    group = Group.parse(args.group) if args.group else invs[0].group
    order = args.order or max(inv.reference.order for inv in invs)
    space = MomentVariableSpace(group, order, invs[0].dim)
    try:
        trials = trial_ranks([inv.reference for inv in invs], space, args.trials, args.seed)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    rank = max(t["rank"] for t in trials)
    payload = {
        "command": "independence",
        "set": args.set,
        "invariants": [inv.name for inv in invs],
        "space": space.to_json(),
        "seed": args.seed,
        "size": len(invs),
        "rank": rank,
        "independent": rank == len(invs),
        "trials": trials,
    }
    code = EXIT_OK
    if args.expect_rank is not None:
        payload["expected_rank"] = args.expect_rank
        payload["pass"] = rank == args.expect_rank
        code = EXIT_OK if payload["pass"] else EXIT_CHECK
    rows = [{"trial": i, "rank": t["rank"], "exact": t["exact"]} for i, t in enumerate(trials)]

    def plot(outdir):
        from .plotting import plot_singular_values

        return plot_singular_values(trials, outdir)

    return payload, rows, code, plot


def cmd_discover(args):
    try:
        spec = EnumerationSpec(
            dim=args.dim,
            group=args.group or "affine",
            n_pnt=args.degree,
            n_cnt=args.order,
            max_factors=args.max_factors,
            require_true_invariants=not args.allow_skew,
            budget=args.budget,
        )
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.target is not None and args.target < 1:
        raise InputError("--target must be >= 1")
    result = discover(spec, target=args.target, seed=args.seed, trials=args.trials)
    payload = {"command": "discover", **result.to_json()}
    code = EXIT_CHECK if result.incomplete else EXIT_OK
    rows = [
        {"name": s.name, "core": str(s.core), "degree": s.degree, "order": s.order, "k": s.k, "terms": len(s.polynomial)}
        for s in result.selected
    ]

    def plot(outdir):
        from .plotting import plot_discovery

        return plot_discovery(result.counts, outdir)

    return payload, rows, code, plot


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="point-set text file or PGM image")
    common.add_argument("--group", choices=[g.value for g in Group], help="transformation group")
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("--tol", type=float, default=1e-8, help="relative tolerance for numeric checks")
    common.add_argument("--format", choices=["json", "table"], default="json")
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--plot", metavar="DIR", help="also write PNG figures into DIR")

    p = argparse.ArgumentParser(prog="gfinv", description="Generating-function moment invariants.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("moments", parents=[common], help="raw and central moments of a shape")
    s.add_argument("--max-order", type=int, default=3)
    s.set_defaults(func=cmd_moments)

    s = sub.add_parser("invariants", parents=[common], help="normalized invariant values of a shape")
    s.add_argument("--set", default="hu", help="hu, pi, affine19 or 3d")
    s.add_argument("--transforms", type=int, default=0, metavar="N",
                   help="also check invariance under N random maps of the set's group")
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("verify", parents=[common], help="check catalog cores and exact relations")
    s.add_argument("--relations", action="store_true", help="exact polynomial identities")
    s.add_argument("--catalog", choices=["all"] + [g.value for g in Group], help="re-derive a catalog from its cores")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("independence", parents=[common], help="functional rank of an invariant set")
    s.add_argument("--set", default="hu", help=", ".join(_RANK_SETS))
    s.add_argument("--order", type=int, help="moment order of the variable space (default: from the set)")
    s.add_argument("--trials", type=int, default=5)
    s.add_argument("--expect-rank", type=int, help="exit 1 unless the rank equals this")
    s.set_defaults(func=cmd_independence)

    s = sub.add_parser("discover", parents=[common], help="enumerate cores and extract an independent set")
    s.add_argument("--order", type=int, default=2, help="max occurrences of one point label")
    s.add_argument("--degree", type=int, default=2, help="max number of point labels")
    s.add_argument("--target", type=int, help="stop after this many invariants")
    s.add_argument("--dim", type=int, default=2, choices=[2, 3])
    s.add_argument("--max-factors", type=int)
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    s.add_argument("--trials", type=int, default=5)
    s.add_argument("--allow-skew", action="store_true", help="keep cores with an odd number of g factors")
    s.set_defaults(func=cmd_discover)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload, rows, code, plot = args.func(args)
    except (InputError, ParseError, MomentError, FileNotFoundError) as exc:
        print(f"gfinv {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"gfinv {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_BUDGET

    text = dumps(payload) if args.format == "json" else render_table(rows)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    if args.plot:
        for path in plot(args.plot):
            print(f"wrote {path}", file=sys.stderr)
    if code == EXIT_CHECK:
        print(f"gfinv {args.command}: check failed", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
