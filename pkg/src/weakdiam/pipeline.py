"""End to end: objects -> shallow unions -> web -> parts -> decompositions -> colorings.

For odd ``r = 2t + 1`` the graph ``G^r`` is the intersection graph of the
t-shallow unions. Each union is assigned to the first web family that
catches it; every part gets a tree decomposition whose bags are dominated
by ``k_i`` vertices and is 2-colored with its own pair of colors, giving at
most ``2 * families`` colors and G^r-diameter at most ``max_i w(k_i)``.
Even ``r`` is solved as ``r + 1`` with the bound doubled.
"""
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .coloring import ColoringTrace, two_color, w_bound
from .covers import DIAGONAL, grid_constant, scale_index
from .decomp import (bag_domination, build_tree_decomposition, verify_catch_bounds,
                     verify_domination, verify_tree_decomposition)
from .graphs import coloring_diameter, graph_power, intersection_graph
from .recheck import recheck
from .report import Report, ScaleRangeError, VerificationError
from .spacefill import shallow_union_system
from .web import build_web, catch_in_family

log = logging.getLogger(__name__)


@dataclass(eq=False)
class Instance:
    space: object
    system: object
    covers: dict = None      # scale -> Cover, for spaces without coordinates
    cover_K: float = None
    name: str = ""
    seed: int = 0
    extra: dict = field(default_factory=dict)


def thread_count(threads=None):
    if threads is None:
        threads = int(os.environ.get("WEAKDIAM_THREADS", "1") or 1)
    return max(1, int(threads))


def scale_range(K, diameters):
    positive = [d for d in diameters if d > 0]
    if not positive:
        return 0, 0
    return scale_index(K, min(positive)) - 1, scale_index(K, max(positive)) + 1


def _assign_families(web, unions):
    families = []
    for v, obj in enumerate(unions):
        for i in range(web.family_count):
            W = catch_in_family(web, i, obj)
            if W is not None:
                families.append((i, W.id))
                break
        else:
            return None, v
    return families, None


def _solve_part(space, web, unions, diameters, Gr, family, members, element_ids):
    G_part = Gr.induced(members)
    objects = [unions[v] for v in members]
    td = build_tree_decomposition(space, objects, web, family, elements=element_ids)
    checks = {}
    rep = verify_tree_decomposition(G_part, td)
    if not rep.ok:
        raise VerificationError(f"tree decomposition of part {family}", rep)
    checks["tree_decomposition"] = True
    k, _ = bag_domination(td, G_part)
    rep = verify_domination(td, G_part)
    if not rep.ok:
        raise VerificationError(f"bag domination of part {family}", rep)
    checks["domination"] = True
    rep = verify_catch_bounds(space, td, diameters[members], web.C)
    if not rep.ok:
        raise VerificationError(f"catch bounds of part {family}", rep)
    checks["catch_bounds"] = True
    trace = ColoringTrace()
    local = two_color(G_part, td, k, trace)
    checks["narrowness"] = trace.narrowness_violations == 0
    colors = {members[v]: 2 * family + c for v, c in local.items()}
    return {
        "family": family,
        "members": members,
        "k": k,
        "bound": w_bound(k),
        "part_diameter": coloring_diameter(G_part, local),
        "tree_nodes": len(td.nodes),
        "frames": trace.frames,
        "checks": checks,
        "colors": colors,
        "td": td,
    }


def weak_diameter_coloring(instance, r, threads=None, construction=DIAGONAL, keep=False):
    """Color ``G^r`` with at most ``2 * families`` colors; returns (colors, certificate).

    ``colors[v]`` is the color of object ``v``. With ``keep=True`` the
    certificate also carries the intermediate objects under ``"_debug"``.
    """
    if r < 1:
        raise ValueError(f"radius must be a positive integer, got {r}")
    space, system = instance.space, instance.system
    n_obj = len(system)
    r_eff = r if r % 2 else r + 1
    t = (r_eff - 1) // 2

    G = intersection_graph(space, system)
    unions = shallow_union_system(system, t, graph=G)
    Gr = intersection_graph(space, unions)
    if Gr != graph_power(G, r_eff):
        rep = Report("power-identity")
        rep.fail("edge-sets-differ", radius=r_eff)
        raise VerificationError("power identity", rep)
    diameters = unions.diameters

    if instance.covers is not None:
        K = float(instance.cover_K)
        lo, hi = min(instance.covers), max(instance.covers)
        build = lambda a, b: build_web(space, a, b, covers=instance.covers, K=K)
    else:
        K = grid_constant(space.dimension, space.metric, construction)
        lo, hi = scale_range(K, diameters)
        build = lambda a, b: build_web(space, a, b, construction=construction)
    web = build(lo, hi)
    assignment, missed = _assign_families(web, unions)
    widened = False
    if assignment is None and instance.covers is None:
        log.info("object %d escaped scales [%d, %d]; widening once", missed, lo, hi)
        lo, hi, widened = lo - 1, hi + 1, True
        web = build(lo, hi)
        assignment, missed = _assign_families(web, unions)
    if assignment is None:
        raise ScaleRangeError(f"object {missed} is caught by no family within scales [{lo}, {hi}]")

    parts = []
    for i in range(web.family_count):
        members = [v for v in range(n_obj) if assignment[v][0] == i]
        if members:
            parts.append((i, members, [assignment[v][1] for v in members]))
    jobs = lambda p: _solve_part(space, web, unions, diameters, Gr, p[0], p[1], p[2])
    workers = thread_count(threads)
    if workers > 1 and len(parts) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            solved = list(pool.map(jobs, parts))
    else:
        solved = [jobs(p) for p in parts]

    colors = [0] * n_obj
    for part in solved:
        for v, c in part["colors"].items():
            colors[v] = c
    coloring = dict(enumerate(colors))
    palette_ok = all(set(p["colors"].values()) <= {2 * p["family"] + 1, 2 * p["family"] + 2}
                     for p in solved)
    bound = max((p["bound"] for p in solved), default=0)
    measured = coloring_diameter(Gr, coloring)
    for p in solved:
        p["power_diameter"] = coloring_diameter(Gr, coloring, on=p["members"])
    color_limit = 2 * web.family_count
    independent = recheck(space, system.objects, r_eff, colors, bound, color_limit)

    checks = {
        "power_identity": True,
        "covers": True,
        "laminar": True,
        "tree_decompositions": all(p["checks"]["tree_decomposition"] for p in solved),
        "domination": all(p["checks"]["domination"] for p in solved),
        "catch_bounds": all(p["checks"]["catch_bounds"] for p in solved),
        "narrowness": all(p["checks"]["narrowness"] for p in solved),
        "palette": palette_ok and len(set(colors)) <= color_limit,
        "diameter": measured <= bound,
        "independent_recheck": independent.ok and independent.measured == measured,
    }
    certificate = {
        "requested_radius": r,
        "radius": r_eff,
        "t": t,
        "K": K,
        "C": web.C,
        "construction": construction if instance.covers is None else "user",
        "families": web.family_count,
        "scales": [lo, hi],
        "widened": widened,
        "objects": n_obj,
        "parts": [
            {
                "family": p["family"],
                "size": len(p["members"]),
                "k": p["k"],
                "bound": p["bound"],
                "part_diameter": p["part_diameter"],
                "power_diameter": p["power_diameter"],
                "tree_nodes": p["tree_nodes"],
                "frames": p["frames"],
                "palette": [2 * p["family"] + 1, 2 * p["family"] + 2],
            }
            for p in solved
        ],
        "colors_used": len(set(colors)),
        "color_limit": color_limit,
        "bound": bound,
        "measured_diameter": measured,
        "f_r": f"x -> f({2 * t + 2}*(x+1))",
        "even_radius": None,
        "checks": checks,
    }
    if r != r_eff:
        Gq = graph_power(G, r) if r > 1 else G
        certificate["even_radius"] = {
            "radius": r,
            "bound": 2 * bound,
            "measured_diameter": coloring_diameter(Gq, coloring),
        }
        checks["even_diameter"] = certificate["even_radius"]["measured_diameter"] <= 2 * bound
    certificate["passed"] = all(checks.values())
    if keep:
        certificate["_debug"] = {"web": web, "parts": solved, "G": G, "Gr": Gr, "unions": unions}
    return colors, certificate


def verify_result(instance, result):
    """Re-check a saved ``{"radius", "colors", "certificate"}`` against its instance.

    Uses only the independent recheck plus the certificate's own arithmetic.
    """
    report = Report("result")
    cert, colors = result["certificate"], result["colors"]
    if result["radius"] != cert.get("requested_radius"):
        report.fail("radius-mismatch", result=result["radius"], certificate=cert.get("requested_radius"))
    parts = cert.get("parts", [])
    bound = max((w_bound(p["k"]) for p in parts), default=0)
    if bound != cert.get("bound") or any(w_bound(p["k"]) != p["bound"] for p in parts):
        report.fail("bound-arithmetic", certificate=cert.get("bound"), recomputed=bound)
    if sum(p["size"] for p in parts) != len(colors):
        report.fail("partition", sizes=sum(p["size"] for p in parts), colors=len(colors))
    if len(parts) > 0 and any(c not in ((p["family"] + 1) * 2 - 1, (p["family"] + 1) * 2)
                              for p in parts for c in p["palette"]):
        report.fail("palette-layout")
    limit = cert.get("color_limit", 0)
    again = recheck(instance.space, instance.system.objects, cert["radius"], colors, bound, limit)
    for v in again.violations:
        report.fail(v.kind, **v.witness)
    if again.ok and again.measured != cert.get("measured_diameter"):
        report.fail("measured-mismatch", certificate=cert.get("measured_diameter"),
                    recomputed=again.measured)
    even = cert.get("even_radius")
    if even:
        again = recheck(instance.space, instance.system.objects, even["radius"], colors,
                        2 * bound, limit)
        if not again.ok or again.measured != even["measured_diameter"]:
            report.fail("even-radius", certificate=even["measured_diameter"],
                        recomputed=again.measured)
    if not cert.get("passed", False):
        report.fail("certificate-failed", checks=[k for k, v in cert.get("checks", {}).items() if not v])
    report.measured = getattr(again, "measured", None)
    return report
