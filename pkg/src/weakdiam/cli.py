"""Command line: gen, solve, verify, profile, export.

Exit status is 0 only when every verifier passes; 1 means a verifier
rejected something, 2 means bad input.
"""
import argparse
import json
import logging
import sys

from .covers import DIAGONAL, PRODUCT
from .generate import KINDS, GenParams, certify_roundness, generate
from .graphs import graph_power, intersection_graph
from .io import InstanceFormatError, export, load_instance, load_result, result_json, save_instance
from .pipeline import thread_count, verify_result, weak_diameter_coloring
from .report import WeakDiamError
from .spacefill import (EXACT, GREEDY, ExactCountRefused, SpacefillQuery, lemcons_check,
                        shallow_union_system, spacefill_count)

log = logging.getLogger("weakdiam")


def cmd_gen(args):
    p = GenParams(n=args.dimension, points=args.points, objects=args.objects,
                  radius=(args.rmin, args.rmax), seed=args.seed, cloud=args.cloud)
    inst = generate(args.kind, p)
    save_instance(inst, args.out)
    if args.roundness:
        print(json.dumps({"eta": certify_roundness(inst)}))
    return 0


def cmd_solve(args):
    inst = load_instance(args.input)
    construction = PRODUCT if args.product_covers else DIAGONAL
    colors, cert = weak_diameter_coloring(inst, args.radius, threads=thread_count(args.threads),
                                          construction=construction)
    text = result_json(args.radius, colors, cert)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    log.info("colors=%d bound=%s measured=%s passed=%s", cert["colors_used"], cert["bound"],
             cert["measured_diameter"], cert["passed"])
    return 0 if cert["passed"] else 1


def cmd_verify(args):
    inst = load_instance(args.input)
    rep = verify_result(inst, load_result(args.result))
    print(json.dumps(rep.to_dict(), default=str))
    return 0 if rep.ok else 1


def cmd_profile(args):
    inst = load_instance(args.input)
    with open(args.queries) as fh:
        spec = json.load(fh)
    queries = [SpacefillQuery(q["x"], q["r"], q["s"]) for q in spec["queries"]]
    rows = []
    for q in queries:
        try:
            count, mode = spacefill_count(inst.system, q, EXACT, args.limit), EXACT
        except ExactCountRefused:
            count, mode = spacefill_count(inst.system, q, GREEDY), GREEDY
        rows.append({"x": q.x, "r": q.r, "s": q.s, "count": count, "mode": mode})
    out = {"queries": rows}
    status = 0
    if "t" in spec:
        t = spec["t"]
        unions = shallow_union_system(inst.system, t)
        usable, skipped = [], []
        for q in queries:
            wide = SpacefillQuery(q.x, q.r + q.s, q.s / (2 * t + 2))
            try:
                spacefill_count(unions, q, EXACT, args.limit)
                spacefill_count(inst.system, wide, EXACT, args.limit)
                usable.append(q)
            except ExactCountRefused:
                skipped.append({"x": q.x, "r": q.r, "s": q.s})
        rep = lemcons_check(inst.system, t, usable, args.limit, unions=unions)
        out["shallow_unions"] = {**rep.to_dict(), "checked": len(usable), "skipped": skipped}
        status = 0 if rep.ok else 1
    print(json.dumps(out, default=str))
    return status


def cmd_export(args):
    inst = load_instance(args.input)
    result = load_result(args.result)
    G = intersection_graph(inst.space, inst.system)
    r = result["certificate"].get("radius", result["radius"])
    Gr = graph_power(G, r) if G.n else G
    coloring = dict(enumerate(result["colors"]))
    export(Gr, coloring, args.format, args.out, inst.space, inst.system)
    return 0


def build_parser():
    ap = argparse.ArgumentParser(prog="weakdiam", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a seeded instance")
    g.add_argument("--kind", choices=KINDS, default="disks")
    g.add_argument("--dimension", "-n", type=int, default=2)
    g.add_argument("--points", type=int, default=500)
    g.add_argument("--objects", type=int, default=50)
    g.add_argument("--rmin", type=float, default=1.0)
    g.add_argument("--rmax", type=float, default=2.0)
    g.add_argument("--cloud", choices=("random", "grid"), default="random")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--roundness", action="store_true", help="print the certified eta")
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve", help="color G^r and write the result with its certificate")
    s.add_argument("--input", required=True)
    s.add_argument("--radius", type=int, required=True)
    s.add_argument("--out")
    s.add_argument("--threads", type=int, default=None)
    s.add_argument("--product-covers", action="store_true")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="independently re-check a saved result")
    v.add_argument("--input", required=True)
    v.add_argument("--result", required=True)
    v.set_defaults(func=cmd_verify)

    p = sub.add_parser("profile", help="space-filling counts for a query file")
    p.add_argument("--input", required=True)
    p.add_argument("--queries", required=True)
    p.add_argument("--limit", type=int, default=25)
    p.set_defaults(func=cmd_profile)

    e = sub.add_parser("export", help="write G^r with its coloring as dot, svg or json")
    e.add_argument("--input", required=True)
    e.add_argument("--result", required=True)
    e.add_argument("--format", choices=("dot", "svg", "json"), required=True)
    e.add_argument("--out", required=True)
    e.set_defaults(func=cmd_export)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (InstanceFormatError, FileNotFoundError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except WeakDiamError as e:
        print(f"verification failed: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
