"""Instance/result JSON files and graph exports (DOT, SVG, JSON)."""
import json
from pathlib import Path

import jsonschema
import numpy as np

from .covers import Cell, Cover
from .graphs import Graph
from .metric import MATRIX, METRIC_KINDS, Space
from .pipeline import Instance
from .system import ObjectSystem

_number_rows = {"type": "array", "items": {"type": "array", "items": {"type": "number"}}}
_index_rows = {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}}

INSTANCE_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["dimension", "metric", "points", "objects"],
    "properties": {
        "dimension": {"type": "integer", "minimum": 0},
        "metric": {"enum": list(METRIC_KINDS)},
        "points": _number_rows,
        "matrix": _number_rows,
        "objects": {"type": "array", "items": {"type": "array", "minItems": 1,
                                               "items": {"type": "integer"}}},
        "covers": {
            "type": "object",
            "additionalProperties": False,
            "required": ["K", "levels"],
            "properties": {
                "K": {"type": "number", "exclusiveMinimum": 1},
                "levels": {"type": "array", "items": {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["scale", "families"],
                    "properties": {
                        "scale": {"type": "integer"},
                        "families": {"type": "array", "items": _index_rows},
                    },
                }},
            },
        },
        "meta": {
            "type": "object",
            "additionalProperties": False,
            "properties": {"name": {"type": "string"}, "seed": {"type": "integer"}},
        },
    },
}

RESULT_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["radius", "colors", "certificate"],
    "properties": {
        "radius": {"type": "integer", "minimum": 1},
        "colors": {"type": "array", "items": {"type": "integer", "minimum": 1}},
        "certificate": {"type": "object"},
    },
}


class InstanceFormatError(ValueError):
    """Malformed instance or result file; the message names the location."""


def _field(path):
    out = ""
    for part in path:
        out += f"[{part}]" if isinstance(part, int) else (f".{part}" if out else part)
    return out or "<root>"


def _parse(text, schema, source):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InstanceFormatError(f"{source}: line {e.lineno}, column {e.colno}: {e.msg}") from None
    error = jsonschema.exceptions.best_match(jsonschema.Draft7Validator(schema).iter_errors(data))
    if error is not None:
        raise InstanceFormatError(f"{source}: field {_field(error.absolute_path)}: {error.message}")
    return data


def instance_from_dict(data, source="<instance>"):
    metric = data["metric"]
    try:
        if metric == MATRIX:
            if "matrix" not in data:
                raise InstanceFormatError(f"{source}: field matrix: required for metric 'matrix'")
            space = Space(MATRIX, matrix=np.array(data["matrix"], dtype=np.float64))
        else:
            pts = np.array(data["points"], dtype=np.float64)
            if pts.ndim != 2 or pts.shape[1] != data["dimension"]:
                raise InstanceFormatError(
                    f"{source}: field points: rows must all have length dimension={data['dimension']}")
            space = Space(metric, points=pts)
    except ValueError as e:
        if isinstance(e, InstanceFormatError):
            raise
        raise InstanceFormatError(f"{source}: {e}") from None
    for i, obj in enumerate(data["objects"]):
        bad = [p for p in obj if not 0 <= p < space.size]
        if bad:
            raise InstanceFormatError(
                f"{source}: field objects[{i}]: object {i} references point {bad[0]} "
                f"outside [0, {space.size})")
    system = ObjectSystem(space, data["objects"])
    meta = data.get("meta", {})
    inst = Instance(space, system, name=meta.get("name", ""), seed=meta.get("seed", 0))
    if "covers" in data:
        K = float(data["covers"]["K"])
        covers = {}
        q = 2 * K + 1
        for level in data["covers"]["levels"]:
            ell = level["scale"]
            fams = [[Cell(i, (j,), np.unique(np.asarray(c, dtype=np.int64)))
                     for j, c in enumerate(fam)] for i, fam in enumerate(level["families"])]
            covers[ell] = Cover(q ** ell, None, [], fams, K, "user")
        inst.covers, inst.cover_K = covers, K
    return inst


def instance_to_dict(inst):
    space = inst.space
    data = {
        "dimension": space.dimension,
        "metric": space.metric,
        "points": [] if space.metric == MATRIX else space.points.tolist(),
    }
    if space.metric == MATRIX:
        data["matrix"] = space.matrix.tolist()
    data["objects"] = [o.tolist() for o in inst.system]
    if inst.covers is not None:
        data["covers"] = {
            "K": inst.cover_K,
            "levels": [{"scale": ell, "families": [[c.members.tolist() for c in fam]
                                                   for fam in inst.covers[ell].families]}
                       for ell in sorted(inst.covers)],
        }
    data["meta"] = {"name": inst.name, "seed": int(inst.seed)}
    return data


def load_instance(path):
    path = Path(path)
    return instance_from_dict(_parse(path.read_text(), INSTANCE_SCHEMA, str(path)), str(path))


def save_instance(inst, path):
    Path(path).write_text(json.dumps(instance_to_dict(inst)) + "\n")


def result_json(r, colors, certificate):
    cert = {k: v for k, v in certificate.items() if not k.startswith("_")}
    return json.dumps({"radius": int(r), "colors": [int(c) for c in colors],
                       "certificate": cert}, sort_keys=True, indent=1) + "\n"


def save_result(r, colors, certificate, path):
    Path(path).write_text(result_json(r, colors, certificate))


def load_result(path):
    path = Path(path)
    return _parse(path.read_text(), RESULT_SCHEMA, str(path))


# exports

PALETTE = ["#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a6a600",
           "#a65628", "#f781bf", "#999999", "#66c2a5"]


def _hex(c):
    return PALETTE[(int(c) - 1) % len(PALETTE)]


def to_dot(G, coloring):
    lines = ["graph G {"]
    for v in range(G.n):
        c = coloring[v]
        lines.append(f'  {v} [color={c}, fillcolor="{_hex(c)}", style=filled];')
    for u, v in G.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(G, coloring):
    return json.dumps({"n": G.n, "adjacency": [list(map(int, a)) for a in G.adj],
                       "colors": [int(coloring[v]) for v in range(G.n)]}) + "\n"


def from_json(text):
    data = json.loads(text)
    G = Graph(data["n"], data["adjacency"])
    return G, dict(enumerate(data["colors"]))


def to_svg(space, system, coloring, width=800):
    """Objects as convex hulls of their points, filled by color class."""
    from shapely.geometry import MultiPoint

    if space.metric == MATRIX or space.dimension != 2:
        raise ValueError("svg export needs a 2-D coordinate instance")
    pts = space.points
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    span = float(max(hi - lo)) or 1.0
    pad = 0.05 * span
    body = []
    for i, obj in enumerate(system):
        hull = MultiPoint(pts[obj].tolist()).convex_hull.buffer(0.01 * span)
        ring = " ".join(f"{x:.4f},{hi[1] + lo[1] - y:.4f}" for x, y in hull.exterior.coords)
        body.append(f'<polygon points="{ring}" fill="{_hex(coloring[i])}" '
                    f'fill-opacity="0.45" stroke="#333" stroke-width="{0.002 * span:.4f}">'
                    f"<title>{i}: color {coloring[i]}</title></polygon>")
    view = f"{lo[0] - pad:.4f} {lo[1] - pad:.4f} {span + 2 * pad:.4f} {span + 2 * pad:.4f}"
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{width}" '
            f'viewBox="{view}">')
    return "\n".join([head, *body, "</svg>"]) + "\n"


def export(G, coloring, fmt, path, space=None, system=None):
    if set(range(G.n)) - set(coloring):
        raise ValueError("export needs a color for every vertex")
    if fmt == "dot":
        text = to_dot(G, coloring)
    elif fmt == "json":
        text = to_json(G, coloring)
    elif fmt == "svg":
        if space is None or system is None:
            raise ValueError("svg export needs the instance geometry")
        text = to_svg(space, system, coloring)
    else:
        raise ValueError(f"unknown export format {fmt!r}")
    Path(path).write_text(text)
    return text
