"""Command line front end.

Subcommands: analyze, check, closure, qe, selftest.  Exit codes: 0 when a
verdict (even a negative one) was computed, 1 on input errors, 2 when a
resource bound was hit.
"""

import argparse
import sys
import time

from . import decide, io, monounary, varieties
from .algebra import Limits
from .clone import algebraic_closure, centralizer_closure
from .errors import PolyhomError, ResourceBoundExceeded
from .report import Report, render_witness, verdict_to_dict

CHECKS = ("hom-hom", "pol-hom", "sdc", "inj-spfin", "inj-hsp", "cbullet")


def load_algebra(args):
    if args.builtin is not None:
        return io.builtin(args.builtin)
    with open(args.file, encoding="utf-8") as fh:
        return io.parse_algebra(fh.read())


def add_algebra_args(sub):
    grp = sub.add_mutually_exclusive_group(required=True)
    grp.add_argument("--builtin", help="builtin algebra spec, e.g. cyclic:4")
    grp.add_argument("--file", help="algebra file path")


def add_bound_args(sub):
    sub.add_argument("--max-power", type=int, default=None,
                     help="largest power checked (default 2; 3 if |A| = 2)")
    sub.add_argument("--max-arity", type=int, default=None,
                     help="largest relation arity checked (default 2; 3 if |A| = 2)")
    sub.add_argument("--max-cells", type=int, default=None,
                     help="cap on materialized table cells per search")
    sub.add_argument("--max-nodes", type=int, default=None,
                     help="cap on backtracking nodes per search")


def resolve_bounds(args, alg):
    default = 3 if alg.size == 2 else 2
    max_power = args.max_power if args.max_power is not None else default
    max_arity = args.max_arity if args.max_arity is not None else default
    limits = Limits()
    if args.max_cells is not None:
        limits = Limits(max_cells=args.max_cells, max_nodes=limits.max_nodes)
    if args.max_nodes is not None:
        limits = Limits(max_cells=limits.max_cells, max_nodes=args.max_nodes)
    return max_power, max_arity, limits


def compute_verdict(prop, alg, max_power, max_arity, limits):
    if prop == "hom-hom":
        return decide.is_hom_homogeneous(alg, limits=limits)
    if prop == "pol-hom":
        return decide.is_pol_hom_up_to(alg, max_power=max_power, limits=limits)
    if prop == "sdc":
        return decide.has_sdc_up_to(alg, max_arity=max_arity, limits=limits)
    if prop == "inj-spfin":
        return decide.is_injective_spfin_up_to(alg, max_power=max_power,
                                               limits=limits)
    if prop == "inj-hsp":
        return decide.is_injective_hsp(alg)
    if prop == "cbullet":
        return decide.is_cbullet_polhom_up_to(alg, max_power=max_power,
                                              max_arity=max_arity, limits=limits)
    raise ValueError(prop)


def cmd_analyze(args):
    alg = load_algebra(args)
    max_power, max_arity, limits = resolve_bounds(args, alg)
    tag = varieties.recognize(alg)
    rep = Report(algebra=alg.name, size=alg.size, variety=tag)
    for prop in CHECKS:
        start = time.perf_counter()
        try:
            verdict = compute_verdict(prop, alg, max_power, max_arity, limits)
        except ResourceBoundExceeded as exc:
            rep.notes.append(f"{prop}: resource bound exceeded ({exc})")
            continue
        rep.add(prop, verdict, time.perf_counter() - start)
    if args.json:
        sys.stdout.write(rep.to_json())
    else:
        sys.stdout.write(rep.to_text())
    return 0


def cmd_check(args):
    alg = load_algebra(args)
    max_power, max_arity, limits = resolve_bounds(args, alg)
    verdict = compute_verdict(args.property, alg, max_power, max_arity, limits)
    if args.json:
        import json

        sys.stdout.write(json.dumps(verdict_to_dict(verdict),
                                    indent=2, sort_keys=True) + "\n")
    else:
        bounds = " ".join(f"{k}={v}" for k, v in sorted(verdict.bounds.items()))
        cert = f" via {verdict.certificate}" if verdict.certificate else ""
        tail = f" [{bounds}]" if bounds else ""
        print(f"{args.property}: {verdict.value}{cert}{tail}")
        if verdict.witness is not None:
            print("\n".join(render_witness(verdict.witness, indent="  ")))
    return 0


def parse_tuples(text, arity, size):
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        parts = tok.split(".") if "." in tok else list(tok)
        tup = tuple(int(p) for p in parts)
        if len(tup) != arity:
            raise PolyhomError(f"tuple {tok!r} does not have arity {arity}")
        for v in tup:
            if not (0 <= v < size):
                raise PolyhomError(f"tuple entry {v} outside 0..{size - 1}")
        out.append(tup)
    return out


def format_tuple(tup, size):
    sep = "." if size > 10 else ""
    return sep.join(str(v) for v in tup)


def cmd_closure(args):
    alg = load_algebra(args)
    _, _, limits = resolve_bounds(args, alg)
    seed = parse_tuples(args.tuples, args.arity, alg.size)
    if args.mode == "algebraic":
        closed = algebraic_closure(alg, seed, args.arity, limits=limits)
    else:
        closed = centralizer_closure(alg, seed, args.arity, limits=limits)
    for tup in sorted(closed):
        print(format_tuple(tup, alg.size))
    return 0


def cmd_qe(args):
    alg = load_algebra(args)
    formula = monounary.parse_formula(args.formula)
    result = monounary.eliminate_quantifier(alg, formula)
    print(monounary.format_formula(result))
    return 0


def cmd_selftest(args):
    from . import selftest

    failures = selftest.run(verbose=True)
    return 0 if not failures else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="polyhom",
        description="Homogeneity, closure and injectivity analysis of "
                    "finite algebras.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("analyze", help="full property report")
    add_algebra_args(p)
    add_bound_args(p)
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.set_defaults(func=cmd_analyze)

    p = subs.add_parser("check", help="single property verdict")
    p.add_argument("property", choices=CHECKS)
    add_algebra_args(p)
    add_bound_args(p)
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.set_defaults(func=cmd_check)

    p = subs.add_parser("closure", help="close a set of tuples")
    add_algebra_args(p)
    add_bound_args(p)
    p.add_argument("--arity", type=int, required=True)
    p.add_argument("--tuples", required=True,
                   help="comma-separated tuples, e.g. 01,10 (or 0.1,1.0)")
    p.add_argument("--mode", choices=("algebraic", "centralizer"),
                   default="algebraic")
    p.set_defaults(func=cmd_closure)

    p = subs.add_parser("qe", help="eliminate the quantifier of a formula "
                                   "over a monounary algebra")
    add_algebra_args(p)
    p.add_argument("--formula", required=True,
                   help="e.g. 'Ey. f^2(y)=x1 & f^1(y)=f^3(x2)'")
    p.set_defaults(func=cmd_qe)

    p = subs.add_parser("selftest", help="run the bundled invariant suite")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResourceBoundExceeded as exc:
        print(f"error: resource bound exceeded: {exc}", file=sys.stderr)
        return 2
    except (PolyhomError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
