"""Tree layer: enumeration against generate-and-filter oracles, grafting
arithmetic, automorphisms against a recursive product-formula oracle, and
canonical forms against pairwise isomorphism search."""

from random import Random

from operad_forge.trees import (
    PlanarTree,
    Tree,
    canonical_form,
    compose_iso,
    corolla,
    enumerate_trees,
    graft,
    identity_iso,
    inverse_iso,
    isomorphisms,
    nonplanar_iso,
    planar_presentations,
    planar_trees,
)
from operad_forge.trees import automorphisms


def _oracle_trees(max_vertices: int) -> list[PlanarTree]:
    """Independent enumeration: grow trees one vertex at a time by replacing
    a leaf (or the root slot) with a fresh vertex of any arity 0..4,
    deduplicated by planar shape."""
    seen = {repr(corolla(a)): corolla(a) for a in range(5)}
    frontier = list(seen.values())
    for _ in range(max_vertices - 1):
        nxt = []
        for t in frontier:
            for i in range(1, t.n_leaves + 1):
                for a in range(5):
                    g = graft(t, i, corolla(a))
                    if repr(g) not in seen:
                        seen[repr(g)] = g
                        nxt.append(g)
        frontier = nxt
    return list(seen.values())


def test_planar_trees_against_growth_oracle():
    oracle = _oracle_trees(3)
    for nl in range(0, 5):
        for nv in range(1, 4):
            got = planar_trees(nl, nv)
            want = [
                t for t in oracle
                if t.n_leaves == nl and t.n_vertices == nv
                and all(s.arity <= 4 for s in t.subtrees)
            ]
            got_f = [t for t in got if all(s.arity <= 4 for s in t.subtrees)]
            assert sorted(map(repr, got_f)) == sorted(map(repr, want))
            assert len(set(map(repr, got))) == len(got)


def test_enumerate_trees_is_generate_and_filter():
    for k in range(1, 5):
        for l in range(1, 5):
            want = sorted(
                repr(t)
                for nl in range(0, k + 1)
                for t in planar_trees(nl, l)
                if t.geometric_inputs == k
            )
            assert sorted(map(repr, enumerate_trees(k, l))) == want


def test_enumerate_trees_degenerate_arities():
    # one geometric input, one vertex: the 0-corolla (univalent vertex)
    # and the 1-corolla both qualify.
    assert sorted(map(repr, enumerate_trees(1, 1))) == sorted(
        map(repr, [corolla(0), corolla(1)])
    )


def test_graft_leaf_arithmetic():
    rng = Random(3)
    pool = planar_trees(2, 2) + planar_trees(3, 2)
    for _ in range(60):
        base = rng.choice(pool)
        scion = rng.choice(pool)
        i = rng.randint(1, base.n_leaves)
        g = graft(base, i, scion)
        assert g.n_leaves == base.n_leaves + scion.n_leaves - 1
        assert g.n_vertices == base.n_vertices + scion.n_vertices


def test_graft_parallel_slots_commute():
    base = PlanarTree((None, None, None))
    a, b = corolla(2), PlanarTree((None,))
    # grafting at slot 3 first leaves slot 1 untouched and vice versa
    assert graft(graft(base, 1, a), 1 + a.n_leaves + 1, b) == graft(
        graft(base, 3, b), 1, a
    )


def _oracle_aut_order(t: PlanarTree) -> int:
    """Product formula: at each vertex, identical child subtrees (leaves
    count as one kind) permute freely; multiply the per-block factorials and
    recurse into the children."""
    from math import factorial

    def _enc(c):
        if c is None:
            return (0,)
        return (1, tuple(sorted(_enc(k) for k in c.children)))

    def go(c: PlanarTree) -> int:
        counts: dict = {}
        total = 1
        for k in c.children:
            kk = _enc(k)
            counts[kk] = counts.get(kk, 0) + 1
            if k is not None:
                total *= go(k)
        for v in counts.values():
            total *= factorial(v)
        return total

    return go(t)


def test_automorphisms_against_product_formula():
    for nv in range(1, 4):
        for nl in range(0, 4):
            for t in planar_trees(nl, nv):
                assert len(automorphisms(t)) == _oracle_aut_order(t)


def test_caterpillar_automorphism_group_order():
    # 3-leaf caterpillar: root(leaf, C2); only the two lower leaves swap.
    cat = PlanarTree((None, corolla(2)))
    assert len(automorphisms(cat)) == 2


def test_iso_group_structure():
    t = PlanarTree((corolla(2), corolla(2)))
    auts = automorphisms(t)
    assert identity_iso(t) in auts
    for f in auts:
        assert compose_iso(f, inverse_iso(f)) == identity_iso(t)
    reprs = {(f.vertex_map, f.input_perms) for f in auts}
    assert len(reprs) == len(auts)


def test_canonical_form_decides_nonplanar_iso():
    pool = [
        Tree(s, tuple(range(1, s.n_leaves + 1)))
        for s in planar_trees(3, 2) + planar_trees(2, 3)
    ]
    for a in pool:
        for b in pool:
            same = canonical_form(a) == canonical_form(b)
            assert same == (nonplanar_iso(a, b) is not None)


def test_canonical_form_fixed_point():
    for s in planar_trees(3, 3):
        t = Tree(s, tuple(range(1, 4)))
        c = canonical_form(t)
        assert canonical_form(c) == c


def test_planar_presentations_cover_orbit():
    shape = PlanarTree((corolla(1), None))
    pres = list(planar_presentations(shape))
    assert len({repr(p) for p, _ in pres}) == len(pres)
    base = Tree(shape, (1, 2))
    for p, perm in pres:
        # perm records the original planar position of each presented leaf
        assert sorted(perm) == list(range(1, shape.n_leaves + 1))
        assert nonplanar_iso(base, Tree(p, perm)) is not None


def test_isomorphisms_respect_leaf_labels():
    s = corolla(2)
    a = Tree(s, (1, 2))
    assert len(isomorphisms(s, s)) == 2
    assert len(isomorphisms(s, s, labels_a=(1, 2), labels_b=(1, 2))) == 1
    assert len(isomorphisms(s, s, labels_a=(1, 2), labels_b=(2, 1))) == 1
    assert a == a  # sanity


def test_vertex_accessors_consistent():
    t = PlanarTree((corolla(2), None, PlanarTree((None,))))
    assert t.n_vertices == 3
    assert t.arity_of(0) == 3
    parents = t.vertex_parents
    assert parents[0][0] == -1
    for (p, s), v in t.child_vertex.items():
        assert parents[v] == (p, s)
    assert t.geometric_inputs == t.n_leaves + t.n_univalent
