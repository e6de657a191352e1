"""Property-based checks: algebraic laws over generated inputs."""

from random import Random

from hypothesis import given, settings
from hypothesis import strategies as st

from operad_forge.bv import bv_act, bv_normalize, mu
from operad_forge.operads import AssocOperad, perm_compose, perm_inverse
from operad_forge.sampling import random_bv, random_perm
from operad_forge.trees import graft, planar_trees

A = AssocOperad()

perms = st.integers(1, 5).flatmap(
    lambda n: st.permutations(list(range(1, n + 1))).map(tuple)
)


@settings(max_examples=60, deadline=None)
@given(s=perms, t=perms, u=perms, data=st.data())
def test_sequential_composition_is_associative(s, t, u, data):
    i = data.draw(st.integers(1, len(s)))
    j = data.draw(st.integers(1, len(t)))
    lhs = A.compose(A.compose(s, i, t), i + j - 1, u)
    rhs = A.compose(s, i, A.compose(t, j, u))
    assert lhs == rhs


@settings(max_examples=60, deadline=None)
@given(s=perms, t=perms)
def test_permutation_inverse_laws(s, t):
    assert perm_inverse(perm_inverse(s)) == s
    if len(s) == len(t):
        assert perm_inverse(perm_compose(s, t)) == perm_compose(
            perm_inverse(t), perm_inverse(s)
        )


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**9))
def test_normal_forms_are_stable_and_counit_equivariant(seed):
    rng = Random(seed)
    x = bv_normalize(random_bv(rng, A))
    assert bv_normalize(x) == x
    sigma = random_perm(rng, x.arity)
    assert mu(bv_act(x, sigma)) == A.act(mu(x), sigma)


@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_graft_counts_add_up(data):
    pool = planar_trees(2, 2) + planar_trees(3, 2) + planar_trees(3, 3)
    base = data.draw(st.sampled_from(pool))
    scion = data.draw(st.sampled_from(pool))
    i = data.draw(st.integers(1, base.n_leaves))
    g = graft(base, i, scion)
    assert g.n_leaves == base.n_leaves + scion.n_leaves - 1
    assert g.n_vertices == base.n_vertices + scion.n_vertices
