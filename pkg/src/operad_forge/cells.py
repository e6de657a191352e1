"""Cell-indexing combinatorics for the bimodule resolution.

A cell index pairs a main planar tree with one auxiliary planar tree per
main vertex (the auxiliary tree's leaves are the vertex's input slots).
This module enumerates those indices by geometric-input count and total
auxiliary vertex count, groups them into classes under families of
non-planar isomorphisms, builds the directed graphs whose edges contract a
single inner edge of the main tree (splicing the two auxiliary trees), and
derives from each graph a Reedy-category index structure.  It also provides
the height polytopes attached to an index (membership predicates over
main-vertex heights and auxiliary-edge parameters) and the explicit
two-stage straightening homotopy on them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Iterator, Union

from .operads import Perm, all_perms, identity_perm, perm_compose
from .trees import (
    PlanarTree,
    Tree,
    TreeIso,
    canonical_form,
    graft,
    isomorphisms,
    planar_trees,
)

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)


# ---------------------------------------------------------------------------
# Cell indices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UpsilonIndex:
    """A main planar tree together with one auxiliary planar tree per main
    vertex (in preorder); auxiliary tree ``aux[v]`` has one leaf per input
    slot of main vertex ``v``."""

    main: PlanarTree
    aux: tuple[PlanarTree, ...]

    def __post_init__(self) -> None:
        if len(self.aux) != self.main.n_vertices:
            raise ValueError(
                f"expected {self.main.n_vertices} auxiliary trees, "
                f"got {len(self.aux)}"
            )
        for v, a in enumerate(self.aux):
            if a.n_leaves != self.main.arity_of(v):
                raise ValueError(
                    f"auxiliary tree at vertex {v} has {a.n_leaves} leaves, "
                    f"vertex arity is {self.main.arity_of(v)}"
                )

    @property
    def geometric_inputs(self) -> int:
        """Main-tree leaves plus univalent auxiliary vertices."""
        return self.main.n_leaves + sum(a.n_univalent for a in self.aux)

    @property
    def aux_vertex_count(self) -> int:
        return sum(a.n_vertices for a in self.aux)

    @property
    def level(self) -> int:
        """Excess of auxiliary vertices over main vertices; zero exactly
        when every auxiliary tree is a corolla."""
        return self.aux_vertex_count - self.main.n_vertices


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All ways to write ``total`` as an ordered sum of ``parts`` positive
    integers."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for cuts in combinations(range(1, total), parts - 1):
        prev = 0
        out = []
        for c in cuts:
            out.append(c - prev)
            prev = c
        out.append(total - prev)
        yield tuple(out)


def enumerate_upsilon(
    k: int, l: int, require_nontrivial_main: bool = False
) -> list[UpsilonIndex]:
    """All cell indices with ``k`` geometric inputs and ``l`` auxiliary
    vertices in total, in a fixed deterministic order; the flag drops
    indices whose main tree is a corolla."""
    if k < 1 or l < 1:
        raise ValueError("both grading parameters must be >= 1")
    out: list[UpsilonIndex] = []
    min_p = 2 if require_nontrivial_main else 1
    for p in range(min_p, l + 1):  # main vertices; each needs >= 1 aux vertex
        for m in range(0, k + 1):  # main leaves
            for main in planar_trees(m, p):
                arities = [main.arity_of(v) for v in range(p)]
                for counts in _compositions(l, p):
                    options = [
                        planar_trees(arities[v], counts[v]) for v in range(p)
                    ]
                    if any(not opt for opt in options):
                        continue
                    for combo in product(*options):
                        idx = UpsilonIndex(main, tuple(combo))
                        if idx.geometric_inputs == k:
                            out.append(idx)
    return out


# ---------------------------------------------------------------------------
# Classes under families of non-planar isomorphisms
# ---------------------------------------------------------------------------
#
# Two indices are in the same class when there is an isomorphism f of the
# main trees together with, for every main vertex v, an isomorphism g_v of
# the auxiliary trees at v and f(v) whose induced leaf permutation equals
# the slot permutation that f induces at v.  The class key below is a
# bottom-up canonical form: at each main vertex we minimize, over all slot
# permutations, the pair (canonical labeled auxiliary tree, reordered child
# keys), where the auxiliary leaves are labeled by the slot permutation so
# that a label-respecting auxiliary isomorphism is exactly the matching
# condition above.

_LEAF_KEY = (0,)


def _tree_key(t: Tree):
    return (repr(t.shape), t.labels)


def _vertex_key(idx: UpsilonIndex, v: int):
    sub = idx.main.subtrees[v]
    m = sub.arity
    # Child entry per slot: a leaf marker or the child's key.
    entries = []
    w = v + 1
    for c in sub.children:
        if c is None:
            entries.append(_LEAF_KEY)
        else:
            entries.append((1, _vertex_key(idx, w)))
            w += c.n_vertices
    best = None
    for pi in all_perms(m):
        # pi sends slot s to position pi[s-1]; the auxiliary leaf s gets
        # label pi(s) so that leaf order tracks the slot reordering.
        aux_labeled = canonical_form(Tree(idx.aux[v], pi))
        reordered = [None] * m
        for s in range(1, m + 1):
            reordered[pi[s - 1] - 1] = entries[s - 1]
        cand = (_tree_key(aux_labeled), tuple(reordered))
        if best is None or cand < best:
            best = cand
    if best is None:  # m == 0: single empty permutation
        best = (_tree_key(canonical_form(Tree(idx.aux[v], ()))), ())
    return best


def class_key(idx: UpsilonIndex):
    """A canonical hashable key equal for two indices exactly when they are
    related by a family of non-planar isomorphisms."""
    return _vertex_key(idx, 0)


@dataclass(frozen=True)
class TreeClass:
    """An isomorphism class of cell indices: a representative, all planar
    members of the class found in the census, and the canonical key."""

    representative: UpsilonIndex
    members: tuple[UpsilonIndex, ...]
    key: tuple = field(compare=False, repr=False)

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def level(self) -> int:
        return self.representative.level


def classify(indices: list[UpsilonIndex]) -> list[TreeClass]:
    """Partition a census of indices into isomorphism classes, preserving
    first-seen order."""
    order: list[tuple] = []
    buckets: dict[tuple, list[UpsilonIndex]] = {}
    for idx in indices:
        key = class_key(idx)
        if key not in buckets:
            buckets[key] = []
            order.append(key)
        buckets[key].append(idx)
    return [
        TreeClass(buckets[key][0], tuple(buckets[key]), key) for key in order
    ]


def automorphism_families(
    idx: UpsilonIndex,
) -> list[tuple[TreeIso, tuple[TreeIso, ...]]]:
    """All self-families ``(f, (g_v)_v)``: a main-tree automorphism ``f``
    plus, per main vertex ``v``, an auxiliary isomorphism ``g_v`` onto the
    auxiliary tree at ``f(v)`` whose leaf permutation equals the slot
    permutation of ``f`` at ``v``."""
    out: list[tuple[TreeIso, tuple[TreeIso, ...]]] = []
    p = idx.main.n_vertices
    for f in isomorphisms(idx.main, idx.main):
        options: list[list[TreeIso]] = []
        ok = True
        for v in range(p):
            w = f.vertex_map[v]
            pi = f.input_perms[v]
            ident = identity_perm(len(pi))
            opts = isomorphisms(
                idx.aux[v], idx.aux[w], labels_a=pi, labels_b=ident
            )
            if not opts:
                ok = False
                break
            options.append(opts)
        if not ok:
            continue
        for combo in product(*options):
            out.append((f, tuple(combo)))
    return out


def stab(
    cls: TreeClass, main_vertex: int, aux_vertex: int
) -> list[Perm]:
    """Coset representatives of the input permutations of an auxiliary
    vertex under the automorphism families fixing it; the identity comes
    first and represents the class of induced automorphisms."""
    rep = cls.representative
    if not 0 <= main_vertex < rep.main.n_vertices:
        raise ValueError(f"no main vertex {main_vertex}")
    a = rep.aux[main_vertex]
    if not 0 <= aux_vertex < a.n_vertices:
        raise ValueError(
            f"no auxiliary vertex {aux_vertex} at main vertex {main_vertex}"
        )
    m = a.arity_of(aux_vertex)
    induced: set[Perm] = set()
    for f, gs in automorphism_families(rep):
        if f.vertex_map[main_vertex] != main_vertex:
            continue
        g = gs[main_vertex]
        if g.vertex_map[aux_vertex] != aux_vertex:
            continue
        induced.add(g.input_perms[aux_vertex])
    reps: list[Perm] = []
    covered: set[Perm] = set()
    ident = identity_perm(m)
    for sigma in [ident] + sorted(all_perms(m)):
        if sigma in covered:
            continue
        reps.append(sigma)
        for tau in induced:
            covered.add(perm_compose(tau, sigma))
    return reps


# ---------------------------------------------------------------------------
# Contraction graphs
# ---------------------------------------------------------------------------


def _nested(idx: UpsilonIndex) -> list:
    """Mutable nested form ``[aux_tree, [child-or-None, ...]]``."""

    def go(sub: PlanarTree, v: int) -> tuple[list, int]:
        kids: list = []
        nxt = v + 1
        for c in sub.children:
            if c is None:
                kids.append(None)
            else:
                node, nxt = go(c, nxt)
                kids.append(node)
        return [idx.aux[v], kids], nxt

    node, _ = go(idx.main, 0)
    return node


def _from_nested(node: list) -> UpsilonIndex:
    aux: list[PlanarTree] = []

    def go(n: list) -> PlanarTree:
        aux.append(n[0])
        return PlanarTree(
            tuple(None if c is None else go(c) for c in n[1])
        )

    main = go(node)
    return UpsilonIndex(main, tuple(aux))


def _preorder_nodes(node: list) -> list[list]:
    out = [node]
    for c in node[1]:
        if c is not None:
            out.extend(_preorder_nodes(c))
    return out


def contract_main_edge(
    idx: UpsilonIndex, parent: int, slot: int
) -> UpsilonIndex:
    """Contract the main-tree inner edge from ``parent``'s ``slot`` to its
    child vertex; the child's auxiliary tree is grafted into the parent's at
    the leaf matching the slot, and the child's slots replace the slot."""
    if (parent, slot) not in idx.main.child_vertex:
        raise ValueError(f"no inner edge at vertex {parent}, slot {slot}")
    root = _nested(idx)
    nodes = _preorder_nodes(root)
    pnode = nodes[parent]
    child = pnode[1][slot - 1]
    assert child is not None
    pnode[0] = graft(pnode[0], slot, child[0])
    pnode[1][slot - 1 : slot] = child[1]
    return _from_nested(root)


@dataclass(frozen=True)
class ContractionGraph:
    """Classes of cell indices with non-corolla main trees, with a directed
    edge whenever contracting one inner main edge of a member lands in the
    target class.  ``witnesses[(i, j)]`` records one such contraction."""

    k: int
    l: int
    classes: tuple[TreeClass, ...]
    edges: tuple[tuple[int, int], ...]
    witnesses: dict[tuple[int, int], tuple[UpsilonIndex, int, int]]
    components: tuple[tuple[int, ...], ...]
    initials: tuple[int, ...]

    def successors(self, i: int) -> list[int]:
        return [b for a, b in self.edges if a == i]


def _finish_graph(
    k: int,
    l: int,
    classes: list[TreeClass],
    edges: list[tuple[int, int]],
    witnesses: dict[tuple[int, int], tuple[UpsilonIndex, int, int]],
) -> ContractionGraph:
    parent = list(range(len(classes)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        parent[find(a)] = find(b)
    comp_map: dict[int, list[int]] = {}
    for i in range(len(classes)):
        comp_map.setdefault(find(i), []).append(i)
    components = tuple(tuple(v) for v in comp_map.values())
    initials = tuple(
        i for i, c in enumerate(classes) if c.level == 0
    )
    return ContractionGraph(
        k, l, tuple(classes), tuple(edges), witnesses, components, initials
    )


def build_graph(k: int, l: int) -> ContractionGraph:
    """The contraction graph over all classes with ``k`` geometric inputs,
    ``l`` auxiliary vertices, and a non-corolla main tree."""
    census = enumerate_upsilon(k, l, require_nontrivial_main=True)
    classes = classify(census)
    key_to_idx = {c.key: i for i, c in enumerate(classes)}
    edges: list[tuple[int, int]] = []
    witnesses: dict[tuple[int, int], tuple[UpsilonIndex, int, int]] = {}
    seen: set[tuple[int, int]] = set()
    for ci, cls in enumerate(classes):
        for member in cls.members:
            for (parent, slot) in member.main.child_vertex:
                target = contract_main_edge(member, parent, slot)
                if target.main.n_vertices == 1:
                    continue  # corolla main trees are outside the graph
                tj = key_to_idx[class_key(target)]
                if (ci, tj) not in seen:
                    seen.add((ci, tj))
                    edges.append((ci, tj))
                    witnesses[(ci, tj)] = (member, parent, slot)
    return _finish_graph(k, l, classes, edges, witnesses)


def subgraph_i(g: ContractionGraph, i: int) -> ContractionGraph:
    """The two-level graph on classes of level 0 and level ``i``, with an
    edge when a chain of ``i`` contractions connects them; level 0 gives the
    edgeless graph on the level-0 classes."""
    if not 0 <= i <= g.l - 2:
        raise ValueError(f"level {i} out of range 0..{g.l - 2}")
    keep = [
        j for j, c in enumerate(g.classes) if c.level in (0, i)
    ]
    remap = {j: p for p, j in enumerate(keep)}
    adj: dict[int, list[int]] = {}
    for a, b in g.edges:
        adj.setdefault(a, []).append(b)
    edges: list[tuple[int, int]] = []
    if i > 0:
        for j in keep:
            if g.classes[j].level != 0:
                continue
            frontier = {j}
            for _ in range(i):  # every contraction raises the level by 1
                frontier = {b for a in frontier for b in adj.get(a, [])}
            for b in sorted(frontier):
                if g.classes[b].level == i:
                    edges.append((remap[j], remap[b]))
    return _finish_graph(
        g.k, g.l, [g.classes[j] for j in keep], edges, {}
    )


# ---------------------------------------------------------------------------
# Reedy index data
# ---------------------------------------------------------------------------

ReedyObject = Union[tuple[str, int], tuple[str, int, int]]


@dataclass(frozen=True)
class ReedyData:
    """The Reedy-category index structure of a directed graph: one degree-1
    object per graph vertex, one degree-0 object per edge, and two
    degree-lowering morphisms per edge object (to its endpoints)."""

    vertex_objects: tuple[ReedyObject, ...]
    pair_objects: tuple[ReedyObject, ...]

    @property
    def objects(self) -> tuple[ReedyObject, ...]:
        return self.vertex_objects + self.pair_objects

    def degree(self, obj: ReedyObject) -> int:
        if obj in self.vertex_objects:
            return 1
        if obj in self.pair_objects:
            return 0
        raise ValueError(f"unknown object {obj!r}")

    def d0(self, obj: ReedyObject) -> ReedyObject:
        """The face sending an edge object to its source vertex."""
        if obj not in self.pair_objects:
            raise ValueError(f"{obj!r} is not an edge object")
        return ("vertex", obj[1])

    def d1(self, obj: ReedyObject) -> ReedyObject:
        """The face sending an edge object to its target vertex."""
        if obj not in self.pair_objects:
            raise ValueError(f"{obj!r} is not an edge object")
        return ("vertex", obj[2])


def reedy_of(g: ContractionGraph) -> ReedyData:
    return ReedyData(
        tuple(("vertex", i) for i in range(len(g.classes))),
        tuple(("pair", a, b) for a, b in g.edges),
    )


def latching_index(
    r: ReedyData, obj: ReedyObject
) -> list[tuple[str, ReedyObject]]:
    """The index set of the latching object: all non-identity morphisms into
    ``obj`` from strictly lower degree, as ``(face name, edge object)``
    pairs; empty for degree-0 objects."""
    if r.degree(obj) == 0:
        return []
    out: list[tuple[str, ReedyObject]] = []
    for pair in r.pair_objects:
        if r.d0(pair) == obj:
            out.append(("d0", pair))
        if r.d1(pair) == obj:
            out.append(("d1", pair))
    return out


# ---------------------------------------------------------------------------
# Height polytopes and the straightening homotopy
# ---------------------------------------------------------------------------

Heights = tuple[Fraction, ...]
AuxParams = tuple[tuple[Fraction, ...], ...]

_VARIANTS = {
    "H": "H",
    "H-": "H-",
    "Hminus": "H-",
    "H(T;T')": "HT",
    "HT": "HT",
}


def _check_point(
    idx: UpsilonIndex, heights: Heights, aux_params: AuxParams
) -> None:
    if len(heights) != idx.main.n_vertices:
        raise ValueError(
            f"expected {idx.main.n_vertices} heights, got {len(heights)}"
        )
    if len(aux_params) != len(idx.aux):
        raise ValueError(
            f"expected {len(idx.aux)} auxiliary parameter tuples, "
            f"got {len(aux_params)}"
        )
    for v, a in enumerate(idx.aux):
        if len(aux_params[v]) != a.n_vertices - 1:
            raise ValueError(
                f"auxiliary tree at vertex {v} has {a.n_vertices - 1} inner "
                f"edges, got {len(aux_params[v])} parameters"
            )
    for t in heights:
        if not ZERO <= t <= ONE:
            raise ValueError(f"height {t} outside [0, 1]")
    for ps in aux_params:
        for s in ps:
            if not ZERO <= s <= ONE:
                raise ValueError(f"edge parameter {s} outside [0, 1]")


def h_membership(
    idx: UpsilonIndex,
    heights: Heights,
    aux_params: AuxParams,
    variant: str = "H",
) -> bool:
    """Membership in the height polytope of an index.

    ``H``: every inner edge of the main tree has its leafward endpoint at
    least as high as its rootward endpoint.  ``H-``: additionally some
    auxiliary edge parameter is 0 or some main height lies in {0, 1}.
    ``H(T;T')``: additionally (to ``H``) some auxiliary edge parameter is 1.
    """
    if variant not in _VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    kind = _VARIANTS[variant]
    _check_point(idx, heights, aux_params)
    for child, (par, _slot) in enumerate(idx.main.vertex_parents):
        if par >= 0 and heights[child] < heights[par]:
            return False
    if kind == "H-":
        return (
            any(s == ZERO for ps in aux_params for s in ps)
            or any(t in (ZERO, ONE) for t in heights)
        )
    if kind == "HT":
        return any(s == ONE for ps in aux_params for s in ps)
    return True


def max_vertices(main: PlanarTree) -> frozenset[int]:
    """The main vertices with no vertex children (no inner edge has them as
    its rootward endpoint)."""
    return frozenset(
        v for v, sub in enumerate(main.subtrees)
        if all(c is None for c in sub.children)
    )


def homotopy_H(
    idx: UpsilonIndex,
    heights: Heights,
    aux_params: AuxParams,
    u: Fraction,
) -> tuple[Heights, AuxParams]:
    """The two-stage straightening homotopy on the height polytope.

    The first half pushes the heights of the childless main vertices to 1,
    the root to 0, and everything else to 1/2, keeping auxiliary parameters
    fixed; the second half pushes every auxiliary edge parameter to 1.  At
    ``u = 0`` it is the identity; it preserves membership in ``H`` (and in
    ``H-``) for every ``u``.
    """
    u = Fraction(u)
    if not ZERO <= u <= ONE:
        raise ValueError(f"homotopy parameter {u} outside [0, 1]")
    if idx.main.n_vertices == 1:
        raise ValueError("the homotopy needs a non-corolla main tree")
    if not h_membership(idx, heights, aux_params, "H"):
        raise ValueError("input point is outside the height polytope")
    mx = max_vertices(idx.main)

    def stage1(w: Fraction) -> Heights:
        out = []
        for v, t in enumerate(heights):
            if v in mx:
                out.append((ONE - t) * w + t)
            elif v == 0:
                out.append((ONE - w) * t)
            else:
                out.append((HALF - t) * w + t)
        return tuple(out)

    if u <= HALF:
        return stage1(2 * u), aux_params
    w = 2 * u - ONE
    new_aux = tuple(
        tuple(s + (ONE - s) * w for s in ps) for ps in aux_params
    )
    return stage1(ONE), new_aux
