"""JSON and DOT serialization for trees, resolution points, interval
configurations, cell indices, contraction graphs, and Reedy data.

Conventions: rationals are strings ``"p/q"`` in lowest terms (plain integer
strings when the denominator is 1); JSON is emitted with sorted keys so the
byte output is stable; every ``*_from_json`` inverts the matching
``*_to_json``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Optional

from .bv import BVPoint, raw_bv
from .cells import ContractionGraph, ReedyData, UpsilonIndex
from .operads import CubeConfig, Operad, operad_by_name
from .trees import PlanarTree, Tree
from .wb import WBPoint, raw_wb


# ---------------------------------------------------------------------------
# Rationals
# ---------------------------------------------------------------------------


def frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_frac(s: str) -> Fraction:
    if not isinstance(s, str):
        raise ValueError(f"rational must be a string, got {s!r}")
    return Fraction(s)


# ---------------------------------------------------------------------------
# Trees
# ---------------------------------------------------------------------------


def shape_to_json(t: PlanarTree) -> dict:
    counter = {"leaf": 0}

    def go(sub: PlanarTree) -> dict:
        kids = []
        for c in sub.children:
            if c is None:
                counter["leaf"] += 1
                kids.append({"leaf": counter["leaf"]})
            else:
                kids.append(go(c))
        return {"node": {"children": kids}}

    return go(t)


def shape_from_json(data: dict) -> PlanarTree:
    def go(d: dict) -> PlanarTree:
        if "node" not in d:
            raise ValueError(f"expected a node object, got {d!r}")
        kids = []
        for c in d["node"]["children"]:
            if "leaf" in c:
                kids.append(None)
            else:
                kids.append(go(c))
        return PlanarTree(tuple(kids))

    return go(data)


def tree_to_json(t: Tree) -> dict:
    out = shape_to_json(t.shape)
    out["sigma"] = list(t.labels)
    return out


def tree_from_json(data: dict) -> Tree:
    shape = shape_from_json(data)
    sigma = data.get("sigma")
    if sigma is None:
        sigma = list(range(1, shape.n_leaves + 1))
    return Tree(shape, tuple(int(v) for v in sigma))


# ---------------------------------------------------------------------------
# Resolution points
# ---------------------------------------------------------------------------


def bv_to_json(p: BVPoint) -> dict:
    return {
        "operad": p.operad_name,
        "tree": tree_to_json(p.tree),
        "labels": [p.operad.encode(x) for x in p.labels],
        "edgeParams": {
            str(v): frac_str(p.params[v - 1])
            for v in range(1, p.n_vertices)
        },
    }


def bv_from_json(data: dict, operad: Optional[Operad] = None) -> BVPoint:
    if operad is None:
        operad = operad_by_name(data["operad"])
    tree = tree_from_json(data["tree"])
    labels = tuple(operad.decode(x) for x in data["labels"])
    n_v = tree.shape.n_vertices
    params = tuple(
        parse_frac(data["edgeParams"][str(v)]) for v in range(1, n_v)
    )
    return raw_bv(operad, tree.shape, labels, params, tree.labels)


def wb_to_json(p: WBPoint) -> dict:
    return {
        "operad": p.operad_name,
        "tree": tree_to_json(p.tree),
        "vertices": [
            {"t": frac_str(p.heights[v]), "bv": bv_to_json(p.labels[v])}
            for v in range(p.n_main_vertices)
        ],
    }


def wb_from_json(data: dict, operad: Optional[Operad] = None) -> WBPoint:
    if operad is None:
        operad = operad_by_name(data["operad"])
    tree = tree_from_json(data["tree"])
    heights = tuple(parse_frac(v["t"]) for v in data["vertices"])
    labels = tuple(bv_from_json(v["bv"], operad) for v in data["vertices"])
    return raw_wb(operad, tree.shape, labels, heights, tree.labels)


# ---------------------------------------------------------------------------
# Interval configurations
# ---------------------------------------------------------------------------


def cubes_to_json(c: CubeConfig) -> dict:
    return {"cubes": [[frac_str(a), frac_str(b)] for a, b in c.intervals]}


def cubes_from_json(data: dict) -> CubeConfig:
    return CubeConfig(
        tuple((parse_frac(a), parse_frac(b)) for a, b in data["cubes"])
    )


# ---------------------------------------------------------------------------
# Cell indices, graphs, Reedy data
# ---------------------------------------------------------------------------


def upsilon_to_json(idx: UpsilonIndex) -> dict:
    return {
        "main": shape_to_json(idx.main),
        "aux": [shape_to_json(a) for a in idx.aux],
    }


def upsilon_from_json(data: dict) -> UpsilonIndex:
    return UpsilonIndex(
        shape_from_json(data["main"]),
        tuple(shape_from_json(a) for a in data["aux"]),
    )


def graph_to_json(g: ContractionGraph) -> dict:
    return {
        "k": g.k,
        "l": g.l,
        "classes": [
            {
                "representative": upsilon_to_json(c.representative),
                "size": c.size,
                "level": c.level,
            }
            for c in g.classes
        ],
        "edges": [[a, b] for a, b in g.edges],
        "components": [list(c) for c in g.components],
        "initials": list(g.initials),
    }


def reedy_to_json(r: ReedyData) -> dict:
    return {
        "objects": [
            {"object": list(o), "degree": r.degree(o)} for o in r.objects
        ],
        "morphisms": [
            {"name": face, "source": list(pair), "target": list(getattr(r, face)(pair))}
            for pair in r.pair_objects
            for face in ("d0", "d1")
        ],
    }


# ---------------------------------------------------------------------------
# Canonical text
# ---------------------------------------------------------------------------


def dumps(obj: Any) -> str:
    """Byte-stable JSON text: sorted keys, no trailing whitespace."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------------------
# DOT emitters
# ---------------------------------------------------------------------------


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def dot_tree(t: Tree, name: str = "tree") -> str:
    """Vertices as circles, leaves as numbered stubs."""
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    counter = {"leaf": 0, "v": 0}

    def go(sub: PlanarTree) -> str:
        me = f"v{counter['v']}"
        counter["v"] += 1
        lines.append(f'  {me} [shape=circle, label=""];')
        for c in sub.children:
            if c is None:
                counter["leaf"] += 1
                lid = f"l{counter['leaf']}"
                lab = t.labels[counter["leaf"] - 1]
                lines.append(f'  {lid} [shape=plaintext, label="{lab}"];')
                lines.append(f"  {lid} -> {me};")
            else:
                child = go(c)
                lines.append(f"  {child} -> {me};")
        return me

    go(t.shape)
    lines.append("}")
    return "\n".join(lines) + "\n"


def dot_bv(p: BVPoint, name: str = "bv") -> str:
    """Vertex circles labeled by operad elements; inner edges annotated with
    their length parameter."""
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    counter = {"leaf": 0, "v": 0}

    def go(sub: PlanarTree) -> str:
        v = counter["v"]
        me = f"v{v}"
        counter["v"] += 1
        lab = _dot_escape(str(p.operad.encode(p.labels[v])))
        lines.append(f'  {me} [shape=circle, label="{lab}"];')
        for c in sub.children:
            if c is None:
                counter["leaf"] += 1
                lid = f"l{counter['leaf']}"
                word = p.tree.labels[counter["leaf"] - 1]
                lines.append(f'  {lid} [shape=plaintext, label="{word}"];')
                lines.append(f"  {lid} -> {me};")
            else:
                cv = counter["v"]
                child = go(c)
                t = frac_str(p.params[cv - 1])
                lines.append(f'  {child} -> {me} [label="{t}"];')
        return me

    go(p.tree.shape)
    lines.append("}")
    return "\n".join(lines) + "\n"


def dot_wb(p: WBPoint, name: str = "wb") -> str:
    """Main vertices as boxes labeled with their height and inlined
    resolution label; leaves as numbered stubs."""
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    counter = {"leaf": 0, "v": 0}

    def go(sub: PlanarTree) -> str:
        v = counter["v"]
        me = f"m{v}"
        counter["v"] += 1
        bv = p.labels[v]
        lab = _dot_escape(
            f"t={frac_str(p.heights[v])}\n{bv.tree.shape!r} "
            f"{[bv.operad.encode(x) for x in bv.labels]}"
        )
        lines.append(f'  {me} [shape=box, label="{lab}"];')
        for c in sub.children:
            if c is None:
                counter["leaf"] += 1
                lid = f"l{counter['leaf']}"
                word = p.tree.labels[counter["leaf"] - 1]
                lines.append(f'  {lid} [shape=plaintext, label="{word}"];')
                lines.append(f"  {lid} -> {me};")
            else:
                child = go(c)
                lines.append(f"  {child} -> {me};")
        return me

    go(p.tree.shape)
    lines.append("}")
    return "\n".join(lines) + "\n"


def dot_graph(g: ContractionGraph, name: str = "contractions") -> str:
    """Classes as nodes (initial elements doubled), contractions as arrows."""
    lines = [f"digraph {name} {{"]
    initial = set(g.initials)
    for i, c in enumerate(g.classes):
        rep = c.representative
        lab = _dot_escape(f"{rep.main!r} | {' '.join(repr(a) for a in rep.aux)}")
        shape = "doublecircle" if i in initial else "ellipse"
        lines.append(f'  c{i} [shape={shape}, label="{lab}"];')
    for a, b in g.edges:
        lines.append(f"  c{a} -> c{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
