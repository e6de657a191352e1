"""Bimodule-resolution layer: rewriting relations, bimodule structure, the
counit, prime decomposition, filtration, and cell-membership flags."""

from fractions import Fraction as F
from random import Random

import pytest

from operad_forge.bv import bv_unit, iota
from operad_forge.operads import AssocOperad, ComOperad, EndOperad, identity_perm
from operad_forge.sampling import random_perm, random_wb
from operad_forge.trees import PlanarTree, corolla
from operad_forge.wb import (
    mu_tilde,
    raw_wb,
    wb_act,
    wb_decompose,
    wb_filtration,
    wb_gamma0,
    wb_is_prime,
    wb_left,
    wb_normalize,
    wb_prime_components,
    wb_reassemble,
    wb_right,
    y_cell_membership,
)

A = AssocOperad()


def _corolla_point(word, t):
    return wb_normalize(raw_wb(A, corolla(len(word)), (iota(A, word),), (t,)))


def test_unit_main_vertex_deleted():
    # a unit-labeled unary main vertex disappears regardless of height
    shape = PlanarTree((PlanarTree((None, None)),))
    raw = raw_wb(
        A, shape, (bv_unit(A), iota(A, (2, 1))), (F(1, 4), F(1, 2))
    )
    assert wb_normalize(raw) == _corolla_point((2, 1), F(1, 2))


def test_degenerate_unit_point_is_canonical():
    one = raw_wb(A, corolla(1), (bv_unit(A),), (F(2, 3),))
    other = raw_wb(A, corolla(1), (bv_unit(A),), (F(1, 5),))
    assert wb_normalize(one) == wb_normalize(other)


def test_equal_heights_merge_main_vertices():
    # parent and child at the same height merge into one vertex whose label
    # grafts the child's resolution label at length 1
    shape = PlanarTree((PlanarTree((None, None)), None))
    t = F(3, 7)
    raw = raw_wb(A, shape, (iota(A, (1, 2)), iota(A, (2, 1))), (t, t))
    got = wb_normalize(raw)
    assert got.n_main_vertices == 1
    assert got.heights == (t,)
    label = got.labels[0]
    assert label.n_vertices == 2 and label.params == (F(1),)


def test_mu_tilde_on_generators():
    for n in range(1, 5):
        for w in A.elements(n):
            for t in (F(0), F(1, 3), F(1)):
                assert mu_tilde(_corolla_point(w, t)) == w
    assert mu_tilde(wb_gamma0(ComOperad(), 0)) == 0


def test_right_action_structure():
    rng = Random(6)
    for _ in range(80):
        x = wb_normalize(random_wb(rng, A))
        if x.arity == 0:
            continue
        a = random_perm(rng, rng.randint(1, 3))
        i = rng.randint(1, x.arity)
        r = wb_right(x, i, a)
        assert r.arity == x.arity + len(a) - 1
        assert mu_tilde(r) == A.compose(mu_tilde(x), i, a)
        assert wb_right(x, i, A.unit()) == x


def test_left_action_structure():
    rng = Random(16)
    pool = [
        wb_normalize(random_wb(rng, A, max_main_vertices=2)) for _ in range(30)
    ]
    for _ in range(50):
        m = rng.randint(1, 3)
        a = random_perm(rng, m)
        xs = [rng.choice(pool) for _ in range(m)]
        lx = wb_left(a, xs)
        assert lx.arity == sum(x.arity for x in xs)
        want = a
        for i in range(m, 0, -1):
            want = A.compose(want, i, mu_tilde(xs[i - 1]))
        assert mu_tilde(lx) == want
    x = pool[0]
    assert wb_left(A.unit(), [x]) == x


def test_symmetric_action_laws():
    rng = Random(26)
    for _ in range(60):
        x = wb_normalize(random_wb(rng, A))
        n = x.arity
        s, t = random_perm(rng, n), random_perm(rng, n)
        st = tuple(t[s[j] - 1] for j in range(n))
        assert wb_act(wb_act(x, s), t) == wb_act(x, st)
        assert wb_act(x, identity_perm(n)) == x
        assert mu_tilde(wb_act(x, s)) == A.act(mu_tilde(x), s)


def test_normalize_idempotent_and_confluent():
    rng = Random(31)
    for op in (A, EndOperad(2)):
        for _ in range(60):
            p = random_wb(rng, op)
            forms = {
                repr(wb_normalize(p, Random(s) if s else None))
                for s in (0, 5, 17)
            }
            assert len(forms) == 1
            q = wb_normalize(p)
            assert wb_normalize(q) == q


def test_prime_decomposition_roundtrip():
    rng = Random(41)
    found = 0
    while found < 60:
        x = wb_normalize(random_wb(rng, A))
        for c in wb_prime_components(x):
            assert wb_is_prime(c)
        if not wb_is_prime(x):
            found += 1
            assert wb_reassemble(wb_decompose(x)) == x


def test_boundary_heights_make_points_composite():
    x = _corolla_point((2, 1), F(0))
    y = _corolla_point((2, 1), F(1))
    z = _corolla_point((2, 1), F(1, 2))
    assert not wb_is_prime(x) and not wb_is_prime(y)
    assert wb_is_prime(z)


def test_filtration_monotone():
    rng = Random(51)
    for _ in range(60):
        x = wb_normalize(random_wb(rng, A))
        comps = wb_prime_components(x)
        k = max((c.geometric_inputs for c in comps), default=0)
        l = max(
            (c.aux_vertex_count for c in comps if c.geometric_inputs == k),
            default=0,
        )
        assert wb_filtration(x, max(k, 1))
        assert wb_filtration(x, max(k, 1) + 1)
        assert wb_filtration(x, max(k, 1), l)
        assert wb_filtration(x, max(k, 1), l + 1)
        if k > 1:
            assert not wb_filtration(x, k - 1)


def test_y_cell_membership_flags():
    # raw two-vertex main data with three geometric inputs, two aux vertices
    shape = PlanarTree((PlanarTree((None, None)), None))

    def point(t_root, t_child):
        return raw_wb(
            A, shape, (iota(A, (1, 2)), iota(A, (2, 1))), (t_root, t_child)
        )

    interior = y_cell_membership(point(F(1, 3), F(1, 2)), 3, 2)
    assert "interior" in interior and "outside" not in interior
    at_boundary = y_cell_membership(point(F(0), F(1, 2)), 3, 2)
    assert "dY" in at_boundary
    wrong_k = y_cell_membership(point(F(1, 3), F(1, 2)), 4, 2)
    assert wrong_k == frozenset({"outside"})
    # non-corolla main tree lies in the first closed stratum
    assert "Y1" in y_cell_membership(point(F(1, 3), F(1, 2)), 3, 2)
    # an extreme-height corolla lies in the second
    cor = raw_wb(A, corolla(3), (iota(A, (1, 3, 2)),), (F(1),))
    flags = y_cell_membership(cor, 3, 1)
    assert "Y2" in flags and "dYprime" in flags


def test_validation_errors():
    with pytest.raises(ValueError):
        raw_wb(A, corolla(2), (iota(A, (1, 2, 3)),), (F(1, 2),))
    with pytest.raises(ValueError):
        raw_wb(A, corolla(2), (iota(A, (1, 2)),), (F(3, 2),))
    with pytest.raises(IndexError):
        wb_right(_corolla_point((1, 2), F(1, 2)), 5, (1,))
