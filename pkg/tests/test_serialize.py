"""Serialization layer: JSON round-trips over several operads, graph and
category exports with known counts, and DOT rendering."""

import json
from random import Random

from operad_forge.cells import build_graph, enumerate_upsilon, reedy_of
from operad_forge.operads import AssocOperad, EndOperad, operad_by_name
from operad_forge.sampling import random_bv, random_cubes, random_wb
from operad_forge.serialize import (
    bv_from_json,
    bv_to_json,
    cubes_from_json,
    cubes_to_json,
    dot_bv,
    dot_graph,
    dot_tree,
    dot_wb,
    dumps,
    graph_to_json,
    reedy_to_json,
    upsilon_from_json,
    upsilon_to_json,
    wb_from_json,
    wb_to_json,
)


def _roundtrip(d):
    return json.loads(dumps(d))


def test_point_roundtrips_over_operads():
    rng = Random(1)
    ops = [
        AssocOperad(),
        EndOperad(2),
        operad_by_name("free:m=2:5"),
        operad_by_name("com"),
    ]
    for op in ops:
        # the free operad has no arity-0 generators, so stay positive there
        ma = 1 if op.name.startswith("free") else 0
        for _ in range(40):
            p = random_bv(rng, op, min_arity=ma)
            q = bv_from_json(_roundtrip(bv_to_json(p)))
            assert q == p and q.operad_name == p.operad_name
            w = random_wb(rng, op, min_arity=ma)
            assert wb_from_json(_roundtrip(wb_to_json(w))) == w
            # DOT output renders without error and names every vertex
            assert dot_bv(p).count("label=") >= p.n_vertices
            assert dot_wb(w).startswith("digraph")
            assert dot_tree(p.tree).startswith("digraph")


def test_cube_roundtrip():
    rng = Random(2)
    for _ in range(40):
        c = random_cubes(rng, rng.randint(1, 3))
        assert cubes_from_json(_roundtrip(cubes_to_json(c))) == c


def test_index_roundtrip():
    for idx in enumerate_upsilon(4, 3, False)[::17]:
        assert upsilon_from_json(_roundtrip(upsilon_to_json(idx))) == idx


def test_graph_and_category_exports():
    g = build_graph(4, 3)
    gj = _roundtrip(graph_to_json(g))
    assert len(gj["classes"]) == 63
    assert len(gj["edges"]) == 41
    rj = _roundtrip(reedy_to_json(reedy_of(g)))
    # each contraction edge contributes its two face morphisms
    assert len(rj["morphisms"]) == 2 * 41
    s = dot_graph(g)
    assert s.count("->") == 41
    assert s.count("doublecircle") == len(g.initials)
