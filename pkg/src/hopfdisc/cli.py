"""hopfdisc: discriminant scans and Chevalley checks for Hopf families.

Usage:
    hopfdisc --family liu --params n=2,w=3 --conductor 12 scan --levels 3,5
    hopfdisc --family a_family --params l=2,n=1 lowest
    hopfdisc --family liu --params n=2,w=3 chevalley --expect not-chevalley
    hopfdisc family list

Exit codes: 0 ok, 1 an --expect assertion failed, 2 usage error,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from pathlib import Path

from . import __version__
from . import chevalley as chev
from . import discriminant as disc
from . import families
from .algebra import DEFAULT_SEED, AlgebraError, NotAssociative, NotSplit, split
from .arith import ArithError, parse_element
from .hopf import (HopfAxiomFailed, HopfError, InvalidPoint, family_from_toml_dict,
                   fiber_simples, parse_expr)

try:
    import tomllib
except ModuleNotFoundError:          # python < 3.11
    import tomli as tomllib

SCHEMA_VERSION = disc.SCHEMA_VERSION

EXIT_OK, EXIT_EXPECT, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


# -- family and sample loading --------------------------------------------------------

def load_family(args):
    if args.family_file:
        path = Path(args.family_file)
        if not path.exists():
            raise UsageError(f"family file {path} not found")
        with path.open("rb") as fh:
            d = tomllib.load(fh)
        if args.conductor:
            d["conductor"] = args.conductor
        if d.get("experimental") and not args.enable_experimental:
            raise UsageError("family file is experimental; pass --enable-experimental")
        return family_from_toml_dict(d)
    if not args.family:
        raise UsageError("one of --family or --family-file is required")
    params = families.parse_params(args.params)
    return families.build(args.family, params, conductor=args.conductor,
                          enable_experimental=args.enable_experimental)


def parse_point(fam, text: str):
    """``"x=-1"`` or ``"Y=0,X=z^2"``; a single bare value is allowed for one coordinate."""
    vals = {}
    items = [s for s in text.split(",") if s.strip()]
    if len(items) == 1 and "=" not in items[0] and len(fam.cnames) == 1:
        items = [f"{fam.cnames[0]}={items[0]}"]
    for item in items:
        if "=" not in item:
            raise UsageError(f"point coordinate {item!r} is not of the form name=value")
        k, v = (s.strip() for s in item.split("=", 1))
        if k not in fam.cnames:
            raise UsageError(f"unknown coordinate {k!r}; expected {', '.join(fam.cnames)}")
        vals[k] = v
    missing = [n for n in fam.cnames if n not in vals]
    if missing:
        raise UsageError(f"point {text!r} is missing {', '.join(missing)}")
    return fam.point(vals)


def _points_from_json(fam, obj):
    if isinstance(obj, dict):
        for key in ("points", "sample"):
            if key in obj:
                return _points_from_json(fam, obj[key])
        if "records" in obj:
            return [fam.point(r["point"]) for r in obj["records"]]
        raise UsageError("JSON points file has no points, sample or records")
    return [fam.point(p) for p in obj]


def load_points(fam, args):
    if args.points and args.grid:
        raise UsageError("--points and --grid are mutually exclusive")
    if args.points:
        path = Path(args.points)
        if path.suffix == ".json" or path.exists():
            return _points_from_json(fam, json.loads(path.read_text()))
        pts = [parse_point(fam, s) for s in args.points.split(";") if s.strip()]
    elif args.grid:
        axes = {}
        for part in args.grid.split(";"):
            if not part.strip():
                continue
            k, v = (s.strip() for s in part.split("=", 1))
            axes[k] = [parse_element(x.strip(), fam.F.n) for x in v.split("|")]
        if set(axes) != set(fam.cnames):
            raise UsageError(f"--grid must give every coordinate of {', '.join(fam.cnames)}")
        pts = [fam.point(dict(zip(fam.cnames, vs)))
               for vs in itertools.product(*(axes[n] for n in fam.cnames))]
        pts = [p for p in pts if fam.supports(p)]
    else:
        pts = fam.default_points(args.max_points)
    if args.max_points:
        pts = pts[:args.max_points]
    if not pts:
        raise UsageError("point sample is empty")
    return pts


def _sample_json(pts):
    return [p.to_json() for p in pts]


# -- commands -----------------------------------------------------------------------
# each returns (report dict, text, facts); facts feed --expect

def cmd_fiber(fam, args):
    p = parse_point(fam, args.point)
    fib = fam.specialize(p)
    A = fib.alg
    S = split(A, args.seed)
    dims = sorted(M.dim for M in S.modules)
    rep = {"point": p.to_json(), "dim": A.dim, "sd": fib.sd(), "gram_rank": disc.gram_rank(fib),
           "radical_dim": A.radical().dim, "split": "split" if not S.unsplit else "not-split",
           "simple_dims": dims, "has_character": 1 in dims}
    text = "\n".join(f"{k:13s} {v}" for k, v in rep.items())
    return rep, text, {"sd": rep["sd"], "dim": rep["dim"], "verdict": rep["split"]}


def cmd_scan(fam, args):
    levels = [int(k) for k in args.levels.split(",")] if args.levels else []
    pts = load_points(fam, args)
    r = disc.scan_variety(fam, pts, levels, jobs=args.jobs, seed=args.seed)
    facts = {"lowest": r.lowest}
    facts.update({f"V{k}": len(r.level_set(k)) for k in levels})
    return r.to_json(), r.table(), facts


def cmd_lowest(fam, args):
    pts = load_points(fam, args)
    lvl = disc.lowest_level(fam)
    lows = chev.level_set(fam, pts, lvl)
    rep = {"lowest_level": lvl, "sd_identity": lvl - 1, "lowest_set": _sample_json(lows),
           "sample_size": len(pts)}
    text = (f"lowest level = {lvl}\n"
            f"V{lvl} sample ({len(lows)} of {len(pts)} points):\n"
            + "\n".join(f"  {p}" for p in lows))
    return rep, text, {"level": lvl, "count": len(lows)}


def cmd_ch_verify(fam, args):
    pts = load_points(fam, args)
    rows = []
    ok = True
    for p in pts:
        v = disc.cayley_hamilton_check(fam.specialize(p).alg, fam.ch_degree,
                                       trials=args.trials, seed=args.seed)
        ok = ok and v.passed
        rows.append({"point": p.to_json(), **v.to_json()})
    text = "\n".join(f"{'pass' if r['passed'] else 'FAIL'}  {r['point']}" for r in rows)
    rep = {"degree": fam.ch_degree, "passed": ok, "points": rows}
    return rep, text, {"verdict": "pass" if ok else "fail"}


def cmd_tensor_check(fam, args):
    p = parse_point(fam, args.point)
    pts = load_points(fam, args)
    mods = fiber_simples(fam, p, args.seed, strict=False)
    if not 0 <= args.index < len(mods):
        raise UsageError(f"simple index {args.index} out of range (fiber has {len(mods)})")
    tv = chev.tensor_reducible(fam, mods[args.index], pts, args.side, seed=args.seed)
    rep = tv.to_json()
    text = "\n".join(f"{k:17s} {v}" for k, v in rep.items())
    return rep, text, {"verdict": "tensor-reducible" if tv.tensor_reducible
                       else "not-tensor-reducible"}


def cmd_six_equiv(fam, args):
    pts = load_points(fam, args)
    try:
        r = chev.verify_six_equivalences(fam, pts, seed=args.seed)
    except chev.HypothesisFailed as exc:
        rep = {"kind": "six-equiv", "hypothesis_failed": str(exc)}
        return rep, f"hypothesis failed: {exc}", {"verdict": "hypothesis-failed"}
    lines = [f"{v.module['point']} #{v.module['index']} dim {v.module['dim']}: "
             + " ".join(f"{k}={int(x)}" for k, x in sorted(v.flags().items()))
             + f" max_stable={v.maximally_stable}" for v in r.verdicts]
    lines.append(f"consistent: {r.consistent} ({len(r.verdicts)} simples)")
    for n in r.notices:
        lines.append(f"notice: {n}")
    return r.to_json(), "\n".join(lines), {"verdict": "consistent" if r.consistent
                                           else "inconsistent"}


def cmd_chevalley(fam, args):
    pts = load_points(fam, args)
    v = chev.chevalley_family_check(fam, pts, seed=args.seed)
    rep = v.to_json()
    text = (f"{rep['verdict']} ({v.qualifier}, {v.sample_size} points)\n"
            f"identity fiber Chevalley: {v.identity_chevalley}\n"
            f"all sampled sd = {v.sd_identity}: {v.all_lowest}")
    if v.witness:
        text += f"\nwitness: {json.dumps(v.witness)}"
    return rep, text, {"verdict": rep["verdict"]}


def cmd_subgroup(fam, args):
    pts = load_points(fam, args)
    r = chev.subgroup_check(fam, pts, args.level)
    rep = r.to_json()
    text = (f"level {r.level}: {len(r.points)} sampled points\n"
            f"identity: {r.identity_in}  closure failures: {len(r.closure_failures)}  "
            f"inverse failures: {len(r.inverse_failures)}\n"
            f"{'subgroup' if r.passed else 'not a subgroup'}")
    if r.order:
        text += f" of order {r.order}{' (cyclic)' if r.cyclic else ''}"
    return rep, text, {"verdict": "subgroup" if r.passed else "not-subgroup",
                       "order": r.order}


def make_restriction(fam, text):
    if text in (None, "", "lowest"):
        sd_e = fam.specialize(fam.identity_point()).sd()
        return lambda p: fam.specialize(p).sd() == sd_e
    if "=" not in text:
        raise UsageError("--restrict must be 'lowest' or an equation such as 'Y=0'")
    lhs, rhs = text.split("=", 1)
    diff = parse_expr(f"({lhs}) - ({rhs})", fam.cnames, fam.F)
    return lambda p: not diff.evaluate(p.values, fam.F)


def cmd_quotient(fam, args):
    pts = load_points(fam, args)
    v = chev.quotient_chevalley_check(fam, make_restriction(fam, args.restrict), pts,
                                      seed=args.seed)
    rep = v.to_json()
    text = (f"{rep['verdict']} on {len(v.restricted)} restricted points\n"
            f"precondition: {v.precondition}\ntotal dimension: {v.total_dimension}")
    if v.reason:
        text += f"\n{'note' if v.precondition else 'reason'}: {v.reason}"
    if v.quotient_fiber is not None:
        text += f"\nquotient Hopf algebra Chevalley: {v.quotient_fiber.holds}"
    return rep, text, {"verdict": rep["verdict"], "dimension": v.total_dimension}


def cmd_family(args):
    if args.action == "list":
        rows = [{"name": s.name, "params": list(s.params), "experimental": s.experimental,
                 "summary": s.summary} for s in families.REGISTRY.values()]
        text = "\n".join(f"{r['name']:14s} {','.join(r['params']):10s} "
                         f"{'(experimental) ' if r['experimental'] else ''}{r['summary']}"
                         for r in rows)
        return {"families": rows}, text, {}
    fam = load_family(args)
    if args.action == "describe":
        d = fam.describe()
        return d, "\n".join(f"{k:15s} {v}" for k, v in d.items()), {}
    import tomli_w
    if hasattr(fam, "to_toml_dict"):
        d = fam.to_toml_dict()
    else:
        d = {"name": fam.name, "engine": fam.engine, "conductor": fam.F.n,
             "experimental": fam.experimental, "params": dict(fam.params)}
    text = tomli_w.dumps(d)
    if args.output:
        Path(args.output).write_text(text)
        text = f"wrote {args.output}"
    return d, text, {}


COMMANDS = {
    "fiber": cmd_fiber, "scan": cmd_scan, "lowest": cmd_lowest, "ch-verify": cmd_ch_verify,
    "tensor-check": cmd_tensor_check, "six-equiv": cmd_six_equiv, "chevalley": cmd_chevalley,
    "subgroup": cmd_subgroup, "quotient-chevalley": cmd_quotient,
}


def build_parser():
    ap = argparse.ArgumentParser(prog="hopfdisc", description=__doc__.split("\n")[0])
    ap.add_argument("--version", action="version", version=f"hopfdisc {__version__}")
    ap.add_argument("--family", help="built-in family name (see 'family list')")
    ap.add_argument("--params", help="family parameters, e.g. n=2,w=3")
    ap.add_argument("--family-file", help="family in TOML format")
    ap.add_argument("--conductor", type=int, help="work over Q(zeta_N)")
    ap.add_argument("--points", help="JSON file, or explicit points 'x=1;x=-1'")
    ap.add_argument("--grid", help="grid of coordinates, e.g. 'Y=0|1;X=1|-1|z^2'")
    ap.add_argument("--max-points", type=int, default=None)
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--enable-experimental", action="store_true")
    ap.add_argument("--format", choices=["table", "json"], default="table")
    ap.add_argument("--expect", action="append", default=[],
                    help="assert a verdict (e.g. not-chevalley) or a fact (e.g. lowest=3)")
    # --expect may also follow the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--expect", dest="expect_sub", action="append", default=[],
                        help=argparse.SUPPRESS)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fiber", parents=[common], help="dimension, sd and simples of one fiber")
    p.add_argument("point")
    p = sub.add_parser("scan", parents=[common], help="discriminant scan over the sample")
    p.add_argument("--levels", default="")
    sub.add_parser("lowest", parents=[common], help="lowest level and its sampled vanishing set")
    p = sub.add_parser("ch-verify", parents=[common], help="Cayley-Hamilton verification")
    p.add_argument("--trials", type=int, default=20)
    p = sub.add_parser("tensor-check", parents=[common], help="tensor-reducibility of one simple")
    p.add_argument("point")
    p.add_argument("index", type=int)
    p.add_argument("--side", choices=["left", "right", "both"], default="both")
    sub.add_parser("six-equiv", parents=[common], help="flag agreement for all sampled simples")
    sub.add_parser("chevalley", parents=[common], help="Chevalley verdict on the sample")
    p = sub.add_parser("subgroup", parents=[common], help="subgroup check of a sampled level set")
    p.add_argument("--level", type=int, default=None)
    p = sub.add_parser("quotient-chevalley", parents=[common], help="Chevalley check on a restricted sample")
    p.add_argument("--restrict", default="lowest")
    p = sub.add_parser("family", parents=[common], help="list, describe or export families")
    p.add_argument("action", choices=["list", "describe", "export"])
    p.add_argument("--output", "-o")
    return ap


def check_expectations(expect, facts):
    failed = []
    for e in expect:
        if "=" in e:
            k, v = e.split("=", 1)
            got = facts.get(k)
            if str(got) != v:
                failed.append(f"expected {k}={v}, got {got}")
        elif facts.get("verdict") != e:
            failed.append(f"expected {e}, got {facts.get('verdict')}")
    return failed


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        if args.command == "family":
            rep, text, facts = cmd_family(args)
        else:
            fam = load_family(args)
            rep, text, facts = COMMANDS[args.command](fam, args)
            rep = {"schema_version": SCHEMA_VERSION, "command": args.command,
                   "family": fam.name, "params": dict(fam.params), "conductor": fam.F.n,
                   "seed": args.seed, **rep}
    except (UsageError, families.BadParameters, families.ExperimentalDisabled, InvalidPoint,
            ArithError, ValueError) as exc:
        print(f"hopfdisc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (disc.InvariantViolation, HopfAxiomFailed, NotAssociative) as exc:
        print(f"hopfdisc: invariant violation: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (NotSplit, HopfError, AlgebraError) as exc:
        print(f"hopfdisc: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    if args.format == "json":
        rep.setdefault("schema_version", SCHEMA_VERSION)
        print(json.dumps(rep, indent=2))
    else:
        print(text)
    failed = check_expectations(args.expect + args.expect_sub, facts)
    for f in failed:
        print(f"hopfdisc: expectation failed: {f}", file=sys.stderr)
    return EXIT_EXPECT if failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
