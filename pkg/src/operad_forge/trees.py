"""Rooted planar trees with ordered inputs, leaf labelings, grafting,
enumeration, and non-planar isomorphism with canonical forms.

A planar tree is a purely structural value: every vertex carries an ordered
tuple of child slots, and each slot holds either another vertex (a
``PlanarTree``) or ``None``, which denotes a leaf half-edge.  Vertices are
identified positionally by their preorder index (root = 0), so structural
equality of trees is value equality.

A ``Tree`` adds a leaf labeling: a permutation of ``{1..n}`` listing, in
planar left-to-right order, the abstract input carried by each leaf.

``TreeIso`` records a non-planar isomorphism as a vertex bijection plus a
per-vertex permutation of input slots.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import permutations
from typing import Iterator, Optional


# ---------------------------------------------------------------------------
# Planar trees
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PlanarTree:
    """A rooted planar tree; ``None`` children are leaf half-edges."""

    children: tuple[Optional["PlanarTree"], ...] = ()

    @property
    def arity(self) -> int:
        """Number of input slots of the root vertex."""
        return len(self.children)

    @cached_property
    def n_leaves(self) -> int:
        return sum(1 if c is None else c.n_leaves for c in self.children)

    @cached_property
    def n_vertices(self) -> int:
        return 1 + sum(c.n_vertices for c in self.children if c is not None)

    @cached_property
    def n_univalent(self) -> int:
        own = 1 if not self.children else 0
        return own + sum(c.n_univalent for c in self.children if c is not None)

    @property
    def geometric_inputs(self) -> int:
        """Leaves plus univalent vertices."""
        return self.n_leaves + self.n_univalent

    @cached_property
    def subtrees(self) -> tuple["PlanarTree", ...]:
        """All vertices in preorder, each as the subtree it roots."""
        out: list[PlanarTree] = [self]
        for c in self.children:
            if c is not None:
                out.extend(c.subtrees)
        return tuple(out)

    @cached_property
    def vertex_parents(self) -> tuple[tuple[int, int], ...]:
        """Per preorder vertex index, ``(parent_index, slot)``; root is (-1, -1).

        Slots are 1-based positions in the parent's ordered child tuple.
        """
        out: list[tuple[int, int]] = [(-1, -1)]

        def walk(sub: PlanarTree, my_idx: int) -> int:
            next_idx = my_idx + 1
            for slot, c in enumerate(sub.children, start=1):
                if c is not None:
                    out.append((my_idx, slot))
                    next_idx = walk(c, next_idx)
            return next_idx

        walk(self, 0)
        return tuple(out)

    @cached_property
    def child_vertex(self) -> dict[tuple[int, int], int]:
        """Map ``(vertex_index, slot)`` -> preorder index of the child vertex."""
        return {
            (p, s): v for v, (p, s) in enumerate(self.vertex_parents) if p >= 0
        }

    @cached_property
    def leaf_spans(self) -> tuple[tuple[int, int], ...]:
        """Per preorder vertex, the half-open range of absolute leaf positions
        (1-based) covered by its subtree."""
        out: list[tuple[int, int]] = []

        def walk(sub: PlanarTree, start: int) -> int:
            slot_idx = len(out)
            out.append((0, 0))  # placeholder
            pos = start
            for c in sub.children:
                if c is None:
                    pos += 1
                else:
                    pos = walk(c, pos)
            out[slot_idx] = (start, pos)
            return pos

        walk(self, 1)
        return tuple(out)

    def arity_of(self, v: int) -> int:
        return self.subtrees[v].arity

    def __repr__(self) -> str:  # compact, e.g. (..) for a 2-corolla
        inner = "".join("." if c is None else repr(c) for c in self.children)
        return f"({inner})"


def corolla(n: int) -> PlanarTree:
    """The tree with one vertex and ``n`` leaves (``n`` = 0 gives the
    univalent-vertex tree)."""
    if n < 0:
        raise ValueError("corolla arity must be >= 0")
    return PlanarTree((None,) * n)


def graft(base: PlanarTree, i: int, scion: PlanarTree) -> PlanarTree:
    """Replace the ``i``-th leaf of ``base`` (planar order, 1-based) by
    ``scion``; the scion's root edge becomes a new inner edge."""
    if not 1 <= i <= base.n_leaves:
        raise IndexError(f"leaf index {i} out of range 1..{base.n_leaves}")

    def go(sub: PlanarTree, target: int) -> PlanarTree:
        new_children: list[Optional[PlanarTree]] = []
        done = False
        for c in sub.children:
            if done:
                new_children.append(c)
                continue
            if c is None:
                if target == 1:
                    new_children.append(scion)
                    done = True
                else:
                    new_children.append(c)
                    target -= 1
            else:
                nl = c.n_leaves
                if target <= nl:
                    new_children.append(go(c, target))
                    done = True
                else:
                    new_children.append(c)
                    target -= nl
        return PlanarTree(tuple(new_children))

    return go(base, i)


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _forests_gi(g: int, n: int) -> tuple[tuple[Optional[PlanarTree], ...], ...]:
    """Ordered child tuples with total geometric inputs g and total vertices n."""
    if g == 0 and n == 0:
        return ((),)
    if g <= 0 or n < 0:
        return ()
    out: list[tuple[Optional[PlanarTree], ...]] = []
    for rest in _forests_gi(g - 1, n):
        out.append((None,) + rest)
    for n1 in range(1, n + 1):
        for g1 in range(1, g + 1):
            for t in _trees_gi(g1, n1):
                for rest in _forests_gi(g - g1, n - n1):
                    out.append((t,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def _trees_gi(g: int, n: int) -> tuple[PlanarTree, ...]:
    if n <= 0 or g <= 0:
        return ()
    out: list[PlanarTree] = []
    if g == 1 and n == 1:
        out.append(PlanarTree(()))
    for ch in _forests_gi(g, n - 1):
        if ch:
            out.append(PlanarTree(ch))
    return tuple(out)


def enumerate_trees(k: int, l: int) -> list[PlanarTree]:
    """All planar trees with ``k`` geometric inputs (leaves + univalent
    vertices) and ``l`` vertices, in a fixed deterministic order."""
    if l <= 0 or k <= 0:
        return []
    return list(_trees_gi(k, l))


@lru_cache(maxsize=None)
def _forests_lv(p: int, n: int) -> tuple[tuple[Optional[PlanarTree], ...], ...]:
    """Ordered child tuples with total leaf count p and total vertices n."""
    if p == 0 and n == 0:
        return ((),)
    if p < 0 or n < 0:
        return ()
    out: list[tuple[Optional[PlanarTree], ...]] = []
    if p >= 1:
        for rest in _forests_lv(p - 1, n):
            out.append((None,) + rest)
    for n1 in range(1, n + 1):
        for p1 in range(0, p + 1):
            for t in _trees_lv(p1, n1):
                for rest in _forests_lv(p - p1, n - n1):
                    out.append((t,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def _trees_lv(p: int, n: int) -> tuple[PlanarTree, ...]:
    if n <= 0 or p < 0:
        return ()
    out: list[PlanarTree] = []
    if p == 0 and n == 1:
        out.append(PlanarTree(()))
    for ch in _forests_lv(p, n - 1):
        if ch:
            out.append(PlanarTree(ch))
    return tuple(out)


def planar_trees(n_leaves: int, n_vertices: int) -> list[PlanarTree]:
    """All planar trees with the given leaf and vertex counts."""
    if n_vertices <= 0 or n_leaves < 0:
        return []
    return list(_trees_lv(n_leaves, n_vertices))


# ---------------------------------------------------------------------------
# Labeled trees
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Tree:
    """A planar tree plus a leaf labeling: ``labels[p-1]`` is the abstract
    input carried by the leaf at planar position ``p``."""

    shape: PlanarTree
    labels: tuple[int, ...]

    def __post_init__(self) -> None:
        n = self.shape.n_leaves
        if sorted(self.labels) != list(range(1, n + 1)):
            raise ValueError(
                f"labels {self.labels} are not a permutation of 1..{n}"
            )

    @property
    def n(self) -> int:
        return self.shape.n_leaves


def identity_tree(shape: PlanarTree) -> Tree:
    return Tree(shape, tuple(range(1, shape.n_leaves + 1)))


# ---------------------------------------------------------------------------
# Isomorphisms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TreeIso:
    """A non-planar isomorphism between two planar trees.

    ``vertex_map[v]`` is the image (preorder index in the target) of source
    vertex ``v``; ``input_perms[v][s-1]`` is the target slot to which slot
    ``s`` of source vertex ``v`` is sent.
    """

    vertex_map: tuple[int, ...]
    input_perms: tuple[tuple[int, ...], ...]

    @property
    def is_identity(self) -> bool:
        return all(m == v for v, m in enumerate(self.vertex_map)) and all(
            p == tuple(range(1, len(p) + 1)) for p in self.input_perms
        )


def identity_iso(t: PlanarTree) -> TreeIso:
    return TreeIso(
        tuple(range(t.n_vertices)),
        tuple(tuple(range(1, s.arity + 1)) for s in t.subtrees),
    )


def compose_iso(f: TreeIso, g: TreeIso) -> TreeIso:
    """The composite applying ``f`` first, then ``g``."""
    vm = tuple(g.vertex_map[m] for m in f.vertex_map)
    ip = tuple(
        tuple(g.input_perms[f.vertex_map[v]][s - 1] for s in f.input_perms[v])
        for v in range(len(f.vertex_map))
    )
    return TreeIso(vm, ip)


def inverse_iso(f: TreeIso) -> TreeIso:
    n = len(f.vertex_map)
    vm_inv = [0] * n
    for v, m in enumerate(f.vertex_map):
        vm_inv[m] = v
    ip_inv: list[tuple[int, ...]] = [()] * n
    for v, perm in enumerate(f.input_perms):
        inv = [0] * len(perm)
        for s, img in enumerate(perm, start=1):
            inv[img - 1] = s
        ip_inv[f.vertex_map[v]] = tuple(inv)
    return TreeIso(tuple(vm_inv), tuple(ip_inv))


def _preorder_index_map(t: PlanarTree) -> dict[int, PlanarTree]:
    return dict(enumerate(t.subtrees))


def _match(
    a: PlanarTree,
    a_leaf0: int,
    b: PlanarTree,
    b_leaf0: int,
    labels_a: Optional[tuple[int, ...]],
    labels_b: Optional[tuple[int, ...]],
) -> Iterator[tuple]:
    """Yield local isomorphism records ``(slot_perm, child_records)``.

    ``slot_perm[s-1]`` is the b-slot matched to a-slot ``s``; child_records
    holds, for each a-slot that is a vertex, the recursive record.  Leaf
    offsets track absolute planar positions for label comparison.
    """
    if a.arity != b.arity:
        return
    m = a.arity
    # Precompute per-slot leaf offsets for both trees.
    a_off: list[int] = []
    pos = a_leaf0
    for c in a.children:
        a_off.append(pos)
        pos += 1 if c is None else c.n_leaves
    b_off = []
    pos = b_leaf0
    for c in b.children:
        b_off.append(pos)
        pos += 1 if c is None else c.n_leaves

    def slot_ok(sa: int, sb: int) -> Iterator[tuple]:
        ca, cb = a.children[sa], b.children[sb]
        if ca is None and cb is None:
            if labels_a is not None and (
                labels_a[a_off[sa]] != labels_b[b_off[sb]]
            ):
                return
            yield ()
        elif ca is not None and cb is not None:
            yield from _match(
                ca, a_off[sa], cb, b_off[sb], labels_a, labels_b
            )

    # Backtracking over injective slot assignments; identity-first order.
    def assign(sa: int, used: tuple[bool, ...], acc: list) -> Iterator[tuple]:
        if sa == m:
            perm = tuple(p + 1 for p, _ in acc)
            records = tuple(r for _, r in acc if r != ())
            yield (perm, records)
            return
        order = [s for s in range(m) if not used[s]]
        for sb in order:
            for rec in slot_ok(sa, sb):
                new_used = used[:sb] + (True,) + used[sb + 1 :]
                acc.append((sb, rec))
                yield from assign(sa + 1, new_used, acc)
                acc.pop()

    yield from assign(0, (False,) * m, [])


def _records_to_iso(
    a: PlanarTree, b: PlanarTree, record: tuple
) -> TreeIso:
    """Flatten a nested local-isomorphism record into a TreeIso."""
    n = a.n_vertices
    vertex_map = [0] * n
    input_perms: list[tuple[int, ...]] = [()] * n

    def walk(
        sub_a: PlanarTree, idx_a: int, sub_b: PlanarTree, idx_b: int, rec: tuple
    ) -> None:
        perm, child_records = rec
        vertex_map[idx_a] = idx_b
        input_perms[idx_a] = perm
        # Preorder indices of b's vertex children, by slot.
        b_child_idx: dict[int, int] = {}
        nxt = idx_b + 1
        for slot, c in enumerate(sub_b.children, start=1):
            if c is not None:
                b_child_idx[slot] = nxt
                nxt += c.n_vertices
        nxt_a = idx_a + 1
        rec_i = 0
        for slot, c in enumerate(sub_a.children, start=1):
            if c is not None:
                tgt_slot = perm[slot - 1]
                tgt_child = sub_b.children[tgt_slot - 1]
                assert tgt_child is not None
                walk(c, nxt_a, tgt_child, b_child_idx[tgt_slot], child_records[rec_i])
                rec_i += 1
                nxt_a += c.n_vertices

    walk(a, 0, b, 0, record)
    return TreeIso(tuple(vertex_map), tuple(input_perms))


def isomorphisms(
    a: PlanarTree,
    b: PlanarTree,
    labels_a: Optional[tuple[int, ...]] = None,
    labels_b: Optional[tuple[int, ...]] = None,
) -> list[TreeIso]:
    """All non-planar isomorphisms a -> b (respecting leaf labels when
    given).  With ``a is b`` and no labels this is the automorphism group."""
    out = []
    for rec in _match(a, 0, b, 0, labels_a, labels_b):
        out.append(_records_to_iso(a, b, rec))
    return out


def automorphisms(a: PlanarTree) -> list[TreeIso]:
    """The full automorphism group of ``a`` (leaf labels ignored)."""
    return isomorphisms(a, a)


def nonplanar_iso(a: Tree, b: Tree) -> Optional[TreeIso]:
    """A label-respecting isomorphism between labeled trees, or ``None``.

    ``nonplanar_iso(a, a)`` is the identity (identity-first search order).
    """
    for iso in _iter_isos_labeled(a, b):
        return iso
    return None


def _iter_isos_labeled(a: Tree, b: Tree) -> Iterator[TreeIso]:
    if a.n != b.n:
        return
    for rec in _match(a.shape, 0, b.shape, 0, a.labels, b.labels):
        yield _records_to_iso(a.shape, b.shape, rec)


# ---------------------------------------------------------------------------
# Canonical forms
# ---------------------------------------------------------------------------


def _enc_labeled(sub: Optional[PlanarTree], labels: tuple[int, ...], leaf0: int):
    """Canonical encoding (children sorted) of a subtree whose leftmost leaf
    sits at absolute planar position ``leaf0`` (0-based here)."""
    if sub is None:
        return (0, labels[leaf0])
    encs = []
    pos = leaf0
    for c in sub.children:
        encs.append(_enc_labeled(c, labels, pos))
        pos += 1 if c is None else c.n_leaves
    return (1, tuple(sorted(encs)))


def _dec_labeled(enc) -> tuple[Optional[PlanarTree], list[int]]:
    if enc[0] == 0:
        return None, [enc[1]]
    children: list[Optional[PlanarTree]] = []
    labels: list[int] = []
    for ce in enc[1]:
        c, ls = _dec_labeled(ce)
        children.append(c)
        labels.extend(ls)
    return PlanarTree(tuple(children)), labels


def canonical_form(a: Tree) -> Tree:
    """The canonical representative of the non-planar isomorphism class of a
    labeled tree: the lexicographically minimal planar presentation obtained
    by sorting children bottom-up (labels travel with their leaves)."""
    enc = _enc_labeled(a.shape, a.labels, 0)
    shape, labels = _dec_labeled(enc)
    assert shape is not None
    return Tree(shape, tuple(labels))


# ---------------------------------------------------------------------------
# Planar presentations (all child reorderings, with tracked leaf permutation)
# ---------------------------------------------------------------------------


def planar_presentations(
    t: PlanarTree,
) -> Iterator[tuple[PlanarTree, tuple[int, ...]]]:
    """Yield every planar presentation of ``t`` reachable by reordering the
    children of its vertices, together with the induced leaf permutation.

    The permutation ``perm`` satisfies: the leaf at planar position ``p`` of
    the presented tree is the leaf at original position ``perm[p-1]``.
    """

    def go(
        sub: PlanarTree, positions: tuple[int, ...]
    ) -> Iterator[tuple[PlanarTree, tuple[int, ...]]]:
        # positions: original 1-based planar positions of sub's leaves.
        # Split positions among children.
        slices: list[tuple[Optional[PlanarTree], tuple[int, ...]]] = []
        i = 0
        for c in sub.children:
            w = 1 if c is None else c.n_leaves
            slices.append((c, positions[i : i + w]))
            i += w
        # Presentations of each child.
        child_opts: list[list[tuple[Optional[PlanarTree], tuple[int, ...]]]] = []
        for c, pos in slices:
            if c is None:
                child_opts.append([(None, pos)])
            else:
                child_opts.append([(p, q) for p, q in go(c, pos)])

        def pick(idx: int, acc: list) -> Iterator[list]:
            if idx == len(child_opts):
                yield list(acc)
                return
            for opt in child_opts[idx]:
                acc.append(opt)
                yield from pick(idx + 1, acc)
                acc.pop()

        m = len(sub.children)
        for chosen in pick(0, []):
            for order in permutations(range(m)):
                kids = tuple(chosen[j][0] for j in order)
                pos = tuple(x for j in order for x in chosen[j][1])
                yield PlanarTree(kids), pos

    if t.n_leaves == 0:
        # no leaves: presentations still vary structurally
        for shape, pos in go(t, ()):
            yield shape, pos
    else:
        yield from go(t, tuple(range(1, t.n_leaves + 1)))
