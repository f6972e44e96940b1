"""Command-line front end.

Subcommands: solve, count, tree, polygon, bounds, tetra, oracle, bench.
Exit codes: 0 success, 1 computational error (budget, overflow), 2 usage
error.  Diagnostics go to stderr; results to stdout, as text or JSON.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time
from . import bounds as bounds_mod
from .arith import PAdicContext
from .binomial import separation_binomial
from .errors import PadicError
from .newton_polygon import build_arch, build_padic
from .nodal_tree import build_tree
from .oracle import count_qp_roots
from .sparsepoly import SparsePoly, parse_poly
from .tetranomial import TetraFamilyParams, collision_order, generate
from .trinomial import MODE_FULL, MODE_RESTRICTED, MODE_SMALL_GCD, solve_sparse


def _root_json(rt, digits: int | None):
    m = digits if digits else rt.precision
    return {
        "value": f"{rt.value.numerator}/{rt.value.denominator}",
        "valuation": str(rt.valuation),
        "digits": list(rt.unit_digits(m)),
        "degenerate": rt.degenerate,
        "multiplicity": rt.multiplicity,
        "inverted": rt.inverted,
    }


def _solve_json(res, f: SparsePoly, digits: int | None):
    out = {
        "p": res.p,
        "count": res.root_count,
        "mode": res.mode,
        "input": f.to_json_obj(),
        "roots": [_root_json(rt, digits) for rt in res.roots],
        "zero_root_multiplicity": res.zero_root_multiplicity,
        "normalization": {
            "candidates": [
                {"valuation": c.valuation, "k_used": c.k_used, "stabilized": c.stabilized,
                 "count": c.count}
                for c in res.candidates
            ],
        },
    }
    if res.plan is not None:
        out["precision"] = {
            "S0": res.plan.S0,
            "D": res.plan.D,
            "M_p": res.plan.M_p,
            "k": res.plan.k,
            "mode": res.plan.mode,
        }
    if res.discriminant is not None:
        rep = res.discriminant
        out["discriminant"] = {
            "is_zero": rep.is_zero,
            "method": rep.method,
            "value": str(rep.delta_tri) if rep.delta_tri is not None else None,
            "r": rep.r,
        }
    if res.reason:
        out["reason"] = res.reason
    return out


def _cmd_solve(args) -> int:
    f = parse_poly(args.poly)
    res = solve_sparse(
        f,
        args.p,
        mode=args.mode,
        paper_k=args.paper_k,
        exact_discriminant=args.exact,
    )
    if args.count_only:
        payload = {"p": res.p, "count": res.root_count, "mode": res.mode}
        print(json.dumps(payload) if args.json else f"{res.root_count}")
        return 0
    if args.json:
        print(json.dumps(_solve_json(res, f, args.digits), indent=2))
        return 0
    print(f"{res.root_count} root(s) of {f} in Q_{args.p}")
    if res.zero_root_multiplicity:
        print(f"  0 (multiplicity {res.zero_root_multiplicity})")
    for rt in res.roots:
        m = args.digits or rt.precision
        tag = " degenerate" if rt.degenerate else ""
        print(
            f"  valuation {rt.valuation}, digits {list(rt.unit_digits(m))},"
            f" start {rt.value}{tag}"
        )
    return 0


def _cmd_polygon(args) -> int:
    f = parse_poly(args.poly)
    if args.arch:
        edges = build_arch(f)
        data = [
            {
                "slope": e.slope,
                "length": e.horizontal_length,
                "log3_isolated": e.log3_isolated,
                "collinearity_uncertain": e.collinearity_uncertain,
            }
            for e in edges
        ]
    else:
        edges = build_padic(f, args.p)
        data = [
            {"slope": str(e.slope), "length": e.horizontal_length,
             "root_valuation": str(e.root_valuation)}
            for e in edges
        ]
    if args.json:
        print(json.dumps({"edges": data}, indent=2))
    else:
        for e in data:
            print(e)
    return 0


def _cmd_tree(args) -> int:
    f = parse_poly(args.poly)
    ctx = PAdicContext(args.p, args.k)
    tree = build_tree(f, ctx)
    s_step = {}
    for n in tree.root.walk():
        for child, s in zip(n.children, n.child_s):
            s_step[child.digit_path] = s
    if args.json:
        nodes = [
            {
                "digit_path": list(n.digit_path),
                "depth": n.depth,
                "k_local": n.k_local,
                "s_value": s_step.get(n.digit_path, 0),
                "s_consumed": n.s_consumed,
                "poly_mod_p": n.mod_p_coeffs(args.p),
                "nondegenerate_roots": n.nondegenerate_roots,
                "degenerate_roots": n.degenerate_roots,
            }
            for n in tree.root.walk()
        ]
        print(json.dumps({"p": args.p, "k": args.k, "nodes": nodes}, indent=2))
        return 0
    for n in tree.root.walk():
        pad = "  " * n.depth
        print(
            f"{pad}path={list(n.digit_path)} k={n.k_local} "
            f"s={s_step.get(n.digit_path, 0)}/{n.s_consumed} "
            f"mod-p={n.mod_p_coeffs(args.p)} simple={n.nondegenerate_roots} "
            f"degenerate={n.degenerate_roots}"
        )
    return 0


def _cmd_bounds(args) -> int:
    out = {
        "mahler_log": bounds_mod.mahler_bound(args.d, args.H),
        "trinomial_separation_log": bounds_mod.trinomial_separation_bound(
            args.d, args.H, args.p, degenerate=args.degenerate
        ),
        "two_term_valuation": bounds_mod.two_term_valuation_bound(args.d, args.H, args.p),
        "binomial_separation": separation_binomial(max(args.d, 2), args.p, args.H).__dict__,
    }
    if args.degenerate:
        out["degenerate_gap_log"] = bounds_mod.degenerate_valuation_gap_cap(args.d, args.H, 1)
    print(json.dumps(out, indent=2))
    return 0


def _cmd_tetra(args) -> int:
    params = TetraFamilyParams(p=args.p, h=args.h, d=args.d)
    rep = collision_order(params, args.precision)
    poly = generate(params)
    payload = {
        "poly": poly.to_json_obj(),
        "precision": rep.precision,
        "roots": [
            [(rep.root1 // args.p ** i) % args.p for i in range(rep.precision)],
            [(rep.root2 // args.p ** i) % args.p for i in range(rep.precision)],
        ],
        "collision_order": rep.collision_order,
        "derivative_valuation": rep.derivative_valuation,
    }
    print(json.dumps(payload, indent=2) if args.json else json.dumps(payload))
    return 0


def _cmd_oracle(args) -> int:
    f = parse_poly(args.poly)
    o = count_qp_roots(f, args.p)
    payload = {
        "p": args.p,
        "count": o.qp_count,
        "zero_root": o.zero_root,
        "degenerate_count": o.degenerate_count,
        "roots": [
            {
                "valuation": str(e["valuation"]),
                "residue": e["residue"],
                "k": e["k"],
                "degenerate": e["degenerate"],
            }
            for e in o.lifted
        ],
    }
    print(json.dumps(payload, indent=2) if args.json else json.dumps(payload))
    return 0


def _bench_poly(rng: random.Random, d: int, H: int) -> SparsePoly:
    while True:
        a2 = rng.randint(1, d - 1)
        c = lambda: rng.choice([x for x in range(-H, H + 1) if x])
        f = SparsePoly.from_terms([(0, c()), (a2, c()), (d, c())])
        if f.term_count == 3:
            return f


def _cmd_bench(args) -> int:
    rng = random.Random(args.seed)
    rows = []
    for p in args.p_list:
        for d in args.d_list:
            f = _bench_poly(rng, d, args.H)
            t0 = time.perf_counter()
            status = "ok"
            count = k_used = -1
            try:
                res = solve_sparse(f, p)
                count, k_used = res.root_count, res.k_used
            except PadicError as exc:
                status = type(exc).__name__
            rows.append(
                {
                    "p": p,
                    "d": d,
                    "H": args.H,
                    "wall_time": f"{time.perf_counter() - t0:.6f}",
                    "k_used": k_used,
                    "root_count": count,
                    "status": status,
                }
            )
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()))
    writer.writeheader()
    writer.writerows(rows)
    sys.stdout.write(buf.getvalue())
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="padicroots",
        description="Exact root counting and Newton-certified approximation over Q_p "
        "for sparse integer polynomials",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def add_poly_p(sp, need_p=True):
        sp.add_argument("poly", help="polynomial, e.g. '738 - 10*x^2 + x^20'")
        if need_p:
            sp.add_argument("--p", type=int, required=True, help="prime p")
        sp.add_argument("--json", action="store_true")

    s = sub.add_parser("solve", help="count and approximate all roots in Q_p")
    add_poly_p(s)
    s.add_argument("--mode", choices=[MODE_FULL, MODE_RESTRICTED, MODE_SMALL_GCD],
                   default=MODE_FULL)
    s.add_argument("--digits", type=int, default=None, help="certified digits to emit")
    s.add_argument("--paper-k", action="store_true",
                   help="force the worst-case tree precision (slow or infeasible)")
    s.add_argument("--exact", action="store_true",
                   help="force exact bigint discriminant evaluation")
    s.set_defaults(func=_cmd_solve, count_only=False)

    c = sub.add_parser("count", help="root count only")
    add_poly_p(c)
    c.add_argument("--mode", choices=[MODE_FULL, MODE_RESTRICTED, MODE_SMALL_GCD],
                   default=MODE_FULL)
    c.set_defaults(func=_cmd_solve, count_only=True, digits=None, paper_k=False, exact=False)

    pg = sub.add_parser("polygon", help="Newton polygon lower edges")
    add_poly_p(pg)
    pg.add_argument("--arch", action="store_true", help="Archimedean polygon")
    pg.set_defaults(func=_cmd_polygon)

    tr = sub.add_parser("tree", help="digit tree at a fixed precision")
    add_poly_p(tr)
    tr.add_argument("--k", type=int, required=True)
    tr.set_defaults(func=_cmd_tree)

    bd = sub.add_parser("bounds", help="separation/valuation bound calculators")
    bd.add_argument("--p", type=int, required=True)
    bd.add_argument("--d", type=int, required=True)
    bd.add_argument("--H", type=int, required=True)
    bd.add_argument("--degenerate", action="store_true")
    bd.set_defaults(func=_cmd_bounds)

    tt = sub.add_parser("tetra", help="colliding-root tetranomial family")
    tt.add_argument("--p", type=int, required=True)
    tt.add_argument("--h", type=int, required=True)
    tt.add_argument("--d", type=int, required=True)
    tt.add_argument("--precision", type=int, default=None)
    tt.add_argument("--json", action="store_true")
    tt.set_defaults(func=_cmd_tetra)

    orc = sub.add_parser("oracle", help="brute-force ground truth (desk scale)")
    add_poly_p(orc)
    orc.set_defaults(func=_cmd_oracle)

    bn = sub.add_parser("bench", help="grid timing of the solver, CSV to stdout")
    bn.add_argument("--p-list", type=int, nargs="+", required=True)
    bn.add_argument("--d-list", type=int, nargs="+", required=True)
    bn.add_argument("--H", type=int, default=50)
    bn.add_argument("--seed", type=int, default=0)
    bn.add_argument("--jobs", type=int, default=1, help="reserved; runs sequential")
    bn.set_defaults(func=_cmd_bench)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except PadicError as exc:
        if getattr(args, "json", False):
            print(json.dumps({"error": type(exc).__name__, "message": str(exc)}))
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
