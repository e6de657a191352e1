"""Points of the bimodule resolution: a main tree whose vertices carry
monotone rational heights in [0,1] and labels from the operad resolution of
``bv``.

Relations oriented into a rewriting system by ``wb_normalize``:
(i) a main vertex labeled by the unit point is deleted; (ii) the symmetric
action is pushed into child reorderings (canonical presentation); (iii)
adjacent main vertices with equal heights are merged by composing their
labels; (iv) a label at height 0 or 1 is collapsed to the corolla on its
operad image.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from random import Random
from typing import Any, Optional

from .bv import BVPoint, bv_act, bv_compose, bv_normalize, iota, mu, raw_bv
from .operads import AssocOperad, Operad, Perm, perm_compose, perm_inverse
from .trees import PlanarTree, Tree, corolla

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class WBPoint:
    """A point of the bimodule resolution.  ``heights[v]`` and ``labels[v]``
    decorate preorder main-tree vertex ``v``; ``tree.labels`` is the leaf
    word of the main tree."""

    operad: Operad = field(compare=False, repr=False)
    operad_name: str = field(default="")
    tree: Tree = field(default=None)
    heights: tuple[Fraction, ...] = ()
    labels: tuple[BVPoint, ...] = ()
    canonical: bool = field(default=False, compare=False)

    @property
    def arity(self) -> int:
        return self.tree.n

    @property
    def n_main_vertices(self) -> int:
        return self.tree.shape.n_vertices

    @property
    def geometric_inputs(self) -> int:
        """Main-tree leaves plus univalent vertices of the auxiliary trees."""
        return self.tree.shape.n_leaves + sum(
            x.tree.shape.n_univalent for x in self.labels
        )

    @property
    def aux_vertex_count(self) -> int:
        return sum(x.n_vertices for x in self.labels)

    def __repr__(self) -> str:
        return (
            f"WBPoint({self.operad_name}, {self.tree.shape!r}, "
            f"heights={tuple(str(t) for t in self.heights)}, "
            f"labels={self.labels}, word={self.tree.labels})"
        )


def raw_wb(
    operad: Operad,
    shape: PlanarTree,
    labels: tuple[BVPoint, ...],
    heights: tuple[Fraction, ...],
    word: Optional[tuple[int, ...]] = None,
) -> WBPoint:
    tree = Tree(shape, word if word is not None else tuple(range(1, shape.n_leaves + 1)))
    p = WBPoint(operad, operad.name, tree, tuple(heights), tuple(labels), False)
    _validate_raw(p)
    return p


def _validate_raw(p: WBPoint) -> None:
    shape = p.tree.shape
    if len(p.labels) != shape.n_vertices or len(p.heights) != shape.n_vertices:
        raise ValueError("one label and one height per main vertex required")
    for v, sub in enumerate(shape.subtrees):
        if p.labels[v].arity != sub.arity:
            raise ValueError(
                f"label arity {p.labels[v].arity} != vertex arity {sub.arity}"
                f" at main vertex {v}"
            )
        if not 0 <= p.heights[v] <= 1:
            raise ValueError(f"height {p.heights[v]} outside [0,1]")
    for v, (parent, _) in enumerate(shape.vertex_parents):
        if parent >= 0 and p.heights[v] < p.heights[parent]:
            raise ValueError(
                f"height monotonicity violated: vertex {v} at {p.heights[v]} "
                f"below parent {parent} at {p.heights[parent]}"
            )


# ---------------------------------------------------------------------------
# Nested working form
# ---------------------------------------------------------------------------


class _W:
    __slots__ = ("label", "t", "kids")

    def __init__(self, label: BVPoint, t: Fraction, kids):
        self.label = label
        self.t = t
        self.kids = kids  # list of _W | int (leaf input label)


def _to_nested_wb(p: WBPoint) -> _W:
    word = p.tree.labels
    counters = {"v": 0, "leaf": 0}

    def build(sub: PlanarTree) -> _W:
        v = counters["v"]
        counters["v"] += 1
        kids: list[Any] = []
        for c in sub.children:
            if c is None:
                kids.append(word[counters["leaf"]])
                counters["leaf"] += 1
            else:
                kids.append(build(c))
        return _W(p.labels[v], p.heights[v], kids)

    return build(p.tree.shape)


def _from_nested_wb(operad: Operad, root: _W, canonical: bool) -> WBPoint:
    labels: list[BVPoint] = []
    heights: list[Fraction] = []
    word: list[int] = []

    def walk(n: _W) -> PlanarTree:
        labels.append(n.label)
        heights.append(n.t)
        kids: list[Optional[PlanarTree]] = []
        for c in n.kids:
            if isinstance(c, _W):
                kids.append(walk(c))
            else:
                word.append(c)
                kids.append(None)
        return PlanarTree(tuple(kids))

    shape = walk(root)
    return WBPoint(
        operad, operad.name, Tree(shape, tuple(word)), tuple(heights),
        tuple(labels), canonical,
    )


# ---------------------------------------------------------------------------
# Rewriting
# ---------------------------------------------------------------------------


def _is_unit_bv(operad: Operad, x: BVPoint) -> bool:
    return x.is_corolla and operad.is_unit(x.labels[0])


def _wb_redexes(operad: Operad, root: _W):
    """(kind, node, parent, slot) with kind in unit / merge / collapse."""
    out = []

    def walk(n: _W, parent: Optional[_W], slot: int):
        if _is_unit_bv(operad, n.label):
            if not (parent is None and not isinstance(n.kids[0], _W)):
                out.append(("unit", n, parent, slot))
        if parent is not None and n.t == parent.t:
            out.append(("merge", n, parent, slot))
        if n.t in (ZERO, ONE) and n.label.n_vertices > 1:
            out.append(("collapse", n, parent, slot))
        for s, c in enumerate(n.kids, start=1):
            if isinstance(c, _W):
                walk(c, n, s)

    walk(root, None, 0)
    return out


def _apply_wb_redex(operad: Operad, root: _W, redex) -> _W:
    kind, node, parent, slot = redex
    if kind == "unit":
        # Relation (i): delete the unit vertex; its height is forgotten.
        child = node.kids[0]
        if parent is None:
            assert isinstance(child, _W)
            return child
        parent.kids[slot - 1] = child
        return root
    if kind == "merge":
        # Relation (iii): contract the main edge using the resolution's
        # operadic composition on the labels.
        parent.label = bv_compose(parent.label, slot, node.label)
        parent.kids = parent.kids[: slot - 1] + node.kids + parent.kids[slot:]
        return root
    # Relation (iv): at heights 0/1 only the operad image of the label matters.
    node.label = iota(operad, mu(node.label))
    return root


def _wb_fixpoint(operad: Operad, root: _W, rng: Optional[Random]) -> _W:
    while True:
        redexes = _wb_redexes(operad, root)
        if not redexes:
            return root
        redex = rng.choice(redexes) if rng is not None else redexes[0]
        root = _apply_wb_redex(operad, root, redex)


def _bv_key(x: BVPoint) -> str:
    return json.dumps(
        [
            repr(x.tree.shape),
            [x.operad.encode(a) for a in x.labels],
            list(x.tree.labels),
            [str(t) for t in x.params],
        ]
    )


def _tie_break_perms(encs: list, m: int):
    """Slot permutations sorting the child encodings, varying only inside
    blocks of equal encodings."""
    order = sorted(range(1, m + 1), key=lambda s: encs[s - 1])
    blocks = []
    i = 0
    while i < m:
        j = i
        while j + 1 < m and encs[order[j + 1] - 1] == encs[order[i] - 1]:
            j += 1
        blocks.append(order[i : j + 1])
        i = j + 1
    for choice in product(*(permutations(b) for b in blocks)):
        yield tuple(s for blk in choice for s in blk)


def _wb_canonicalize(root: _W):
    """Relation (ii): choose the minimal planar presentation bottom-up,
    compensating child reorderings through the labels' symmetric action."""
    encs = []
    for c in root.kids:
        if isinstance(c, _W):
            encs.append(_wb_canonicalize(c))
        else:
            encs.append(("L", c))
    m = len(root.kids)
    # Children are compared before the label: the leaf numbering keeps the
    # encodings almost always distinct, so only ties cost extra label acts.
    best = None
    for pi in _tie_break_perms(encs, m):
        label2 = bv_act(root.label, perm_inverse(pi))
        key = (tuple(encs[p - 1] for p in pi), _bv_key(label2))
        if best is None or key < best[0]:
            best = (key, pi, label2)
    _, pi, label2 = best
    root.label = label2
    root.kids = [root.kids[p - 1] for p in pi]
    return ("N", str(root.t), best[0][0], best[0][1])


def _normalize_labels(n: _W) -> None:
    """Rewriting reads the labels (unit detection, merges), so they must be
    canonical resolution points first."""
    if not n.label.canonical:
        n.label = bv_normalize(n.label)
    for c in n.kids:
        if isinstance(c, _W):
            _normalize_labels(c)


def wb_normalize(raw: WBPoint, rng: Optional[Random] = None) -> WBPoint:
    """Canonical form; idempotent and rewrite-order independent (tested)."""
    _validate_raw(raw)
    operad = raw.operad
    nested = _to_nested_wb(raw)
    _normalize_labels(nested)
    nested = _wb_fixpoint(operad, nested, rng)
    # The fully degenerate point: a single unit-labeled vertex.  Fix its
    # height at 0 as the canonical representative.
    if _is_unit_bv(operad, nested.label) and not isinstance(nested.kids[0], _W):
        nested.t = ZERO
    _wb_canonicalize(nested)
    out = _from_nested_wb(operad, nested, True)
    _validate_raw(out)  # height monotonicity must be preserved
    return out


# ---------------------------------------------------------------------------
# Bimodule structure
# ---------------------------------------------------------------------------


def wb_gamma0(operad: Operad, a0) -> WBPoint:
    """The arity-0 structure map: a corolla at height 0."""
    if operad.arity(a0) != 0:
        raise ValueError("wb_gamma0 needs an arity-0 element")
    return wb_normalize(raw_wb(operad, corolla(0), (iota(operad, a0),), (ZERO,)))


def wb_right(x: WBPoint, i: int, a) -> WBPoint:
    """Right action: graft the corolla (iota(a); 1) above input ``i``."""
    if not 1 <= i <= x.arity:
        raise IndexError(f"input {i} out of range 1..{x.arity}")
    operad = x.operad
    m = operad.arity(a)
    pos = x.tree.labels.index(i)
    nested = _to_nested_wb(x)
    new_word = AssocOperad().compose(
        x.tree.labels, i, tuple(range(1, m + 1))
    )
    counter = {"leaf": 0}
    cap = _W(iota(operad, a), ONE, [0] * m)

    def graft_at(n: _W) -> bool:
        for s, c in enumerate(n.kids):
            if isinstance(c, _W):
                if graft_at(c):
                    return True
            else:
                if counter["leaf"] == pos:
                    n.kids[s] = cap
                    counter["leaf"] += 1
                    return True
                counter["leaf"] += 1
        return False

    if not graft_at(nested):
        raise AssertionError("input leaf not found")
    _assign_word(nested, new_word)
    return wb_normalize(_from_nested_wb(operad, nested, False))


def wb_left(a, xs: list[WBPoint]) -> WBPoint:
    """Left action: graft the points onto the corolla (iota(a); 0)."""
    if not xs:
        raise ValueError("left action needs at least one argument in this form")
    operad = xs[0].operad
    m = operad.arity(a)
    if len(xs) != m:
        raise ValueError(f"need {m} arguments, got {len(xs)}")
    kids = [_to_nested_wb(x) for x in xs]
    root = _W(iota(operad, a), ZERO, kids)
    word: list[int] = []
    offset = 0
    for x in xs:
        word.extend(w + offset for w in x.tree.labels)
        offset += x.arity
    _assign_word(root, tuple(word))
    return wb_normalize(_from_nested_wb(operad, root, False))


def _assign_word(root: _W, word: tuple[int, ...]) -> None:
    it = iter(word)

    def relabel(n: _W) -> None:
        for s, c in enumerate(n.kids):
            if isinstance(c, _W):
                relabel(c)
            else:
                n.kids[s] = next(it)

    relabel(root)


def wb_act(x: WBPoint, sigma: Perm) -> WBPoint:
    """Symmetric action on the main-tree leaf word."""
    new_word = perm_compose(x.tree.labels, sigma)
    p = WBPoint(
        x.operad, x.operad_name, Tree(x.tree.shape, new_word), x.heights,
        x.labels, False,
    )
    return wb_normalize(p)


def mu_tilde(x: WBPoint) -> Any:
    """Send all heights to 0: compose all labels along the main tree and take
    the operad image."""
    operad = x.operad
    nested = _to_nested_wb(x)

    def val(n: _W) -> BVPoint:
        v = n.label
        for slot in range(len(n.kids), 0, -1):
            c = n.kids[slot - 1]
            if isinstance(c, _W):
                v = bv_compose(v, slot, val(c))
        return v

    return operad.act(mu(val(nested)), x.tree.labels)


# ---------------------------------------------------------------------------
# Prime decomposition
# ---------------------------------------------------------------------------


def wb_is_prime(x: WBPoint) -> bool:
    """All main heights strictly inside ]0,1[."""
    return all(0 < t < 1 for t in x.heights)


@dataclass(frozen=True)
class WBDecomposition:
    """Removal pattern of the boundary-height vertices.

    ``frame`` is a nested entry: ``("leaf",)``, ``("comp", idx)``, or
    ``("frame", label, height, kids)`` for a removed vertex (height 0 or 1).
    ``components[idx]`` is ``(raw_point, attachments)`` where the raw point is
    the interior component in its original planar presentation (identity
    word) and attachments list ``(leaf_position, cap_entry)`` pairs for the
    removed height-1 vertices that sat above it.
    """

    operad: Operad = field(compare=False, repr=False)
    frame: tuple = ()
    components: tuple = ()
    word: Perm = ()


def wb_decompose(x: WBPoint) -> WBDecomposition:
    if not x.canonical:
        x = wb_normalize(x)
    operad = x.operad
    nested = _to_nested_wb(x)
    components: list = []

    def removed(n: _W) -> bool:
        return n.t in (ZERO, ONE)

    def encode(n) -> tuple:
        if not isinstance(n, _W):
            return ("leaf",)
        if removed(n):
            return ("frame", n.label, n.t, tuple(encode(c) for c in n.kids))
        idx = len(components)
        components.append(None)  # reserve position
        components[idx] = _extract_component(operad, n)
        return ("comp", idx)

    frame = encode(nested)
    return WBDecomposition(operad, frame, tuple(components), x.tree.labels)


def _extract_component(operad: Operad, n: _W):
    """Copy the maximal interior subtree at ``n``; height-1 caps above it
    become leaves, recorded as attachments by leaf position."""
    attachments: list[tuple[int, tuple]] = []
    pos = {"leaf": 0}

    def copy(m: _W) -> _W:
        kids: list[Any] = []
        for c in m.kids:
            if isinstance(c, _W):
                if c.t in (ZERO, ONE):
                    pos["leaf"] += 1
                    attachments.append(
                        (pos["leaf"], ("frame", c.label, c.t, tuple(("leaf",) for _ in c.kids)))
                    )
                    kids.append(0)
                else:
                    kids.append(copy(c))
            else:
                pos["leaf"] += 1
                kids.append(0)
        return _W(m.label, m.t, kids)

    root = copy(n)
    _assign_word(root, tuple(range(1, pos["leaf"] + 1)))
    raw = _from_nested_wb(operad, root, False)
    return (raw, tuple(attachments))


def wb_reassemble(d: WBDecomposition) -> WBPoint:
    """Rebuild the point from the frame and components, then normalize."""
    operad = d.operad

    def build(entry) -> Any:
        if entry[0] == "leaf":
            return 0
        if entry[0] == "frame":
            _, label, t, kids = entry
            return _W(label, t, [build(k) for k in kids])
        _, idx = entry
        raw, attachments = d.components[idx]
        nested = _to_nested_wb(raw)
        caps = dict(attachments)
        counter = {"leaf": 0}

        def splice(m: _W) -> None:
            for s, c in enumerate(m.kids):
                if isinstance(c, _W):
                    splice(c)
                else:
                    counter["leaf"] += 1
                    if counter["leaf"] in caps:
                        m.kids[s] = build(caps[counter["leaf"]])

        splice(nested)
        return nested

    root = build(d.frame)
    if not isinstance(root, _W):
        raise ValueError("degenerate frame cannot be reassembled")
    _assign_word(root, d.word)
    return wb_normalize(_from_nested_wb(operad, root, False))


def wb_prime_components(x: WBPoint) -> list[WBPoint]:
    d = wb_decompose(x)
    return [wb_normalize(raw) for raw, _ in d.components]


# ---------------------------------------------------------------------------
# Filtration and cells
# ---------------------------------------------------------------------------


def wb_geometric_inputs(x: WBPoint) -> int:
    return x.geometric_inputs


def wb_filtration(x: WBPoint, k: int, l: Optional[int] = None) -> bool:
    """Membership in the k-th filtration stage (substage ``l`` counts the
    total auxiliary-tree vertices), tested on prime components."""
    if not x.canonical:
        x = wb_normalize(x)
    for comp in wb_prime_components(x):
        g = comp.geometric_inputs
        if l is None:
            if g > k:
                return False
        else:
            if not (g <= k - 1 or (g == k and comp.aux_vertex_count <= l)):
                return False
    return True


def y_cell_membership(x: WBPoint, k: int, l: int) -> frozenset[str]:
    """Classify raw cell-representative data.  Flags (not mutually
    exclusive): ``interior``, ``dY``, ``Y1``, ``Y2``, ``Y1capY2``,
    ``dYprime``, ``outside``.

    The input is deliberately not normalized: the cells quotient only by the
    symmetric relation and the equal-height contraction, so boundary strata
    survive on representatives.
    """
    _validate_raw(x)
    flags: set[str] = set()
    if x.geometric_inputs != k or x.aux_vertex_count != l:
        return frozenset({"outside"})

    boundary = False
    if any(t in (ZERO, ONE) for t in x.heights):
        boundary = True
    if any(t == 0 for lab in x.labels for t in lab.params):
        boundary = True
    for lab in x.labels:
        for v, sub in enumerate(lab.tree.shape.subtrees):
            if sub.arity == 1 and x.operad.is_unit(lab.labels[v]):
                boundary = True
    if boundary:
        flags.add("dY")
    else:
        flags.add("interior")

    main_is_corolla = x.n_main_vertices == 1
    if not main_is_corolla:
        flags.add("Y1")
        eps = x.heights[0]
        if eps in (ZERO, ONE) and all(t == eps for t in x.heights):
            flags.add("Y1capY2")
    else:
        if x.heights[0] in (ZERO, ONE):
            flags.add("Y2")
            if any(t == 1 for t in x.labels[0].params):
                flags.add("Y1capY2")
    if "Y1" in flags or "Y2" in flags:
        flags.add("dYprime")
    return frozenset(flags)
