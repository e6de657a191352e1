"""A guided tour of the delooping machinery.

Builds resolution points over the permutation operad, watches the rewriting
system put them in canonical form, wraps an operad self-map into a loop of
resolution maps, and evaluates the induced bimodule map — including a
closed-form example small enough to check by hand.

Run:  python3 demos/delooping_walkthrough.py
"""

from fractions import Fraction as F

from operad_forge.bv import bv_compose, bv_normalize, iota, mu, raw_bv
from operad_forge.mapping import (
    assoc_reversal_eta,
    constant_loop,
    eta_mu_tilde,
    validate_loop,
    window_loop,
    xi,
)
from operad_forge.operads import AssocOperad, identity_eta
from operad_forge.serialize import dot_wb
from operad_forge.trees import PlanarTree, corolla
from operad_forge.wb import mu_tilde, raw_wb, wb_normalize

A = AssocOperad()


def main() -> None:
    # --- 1. resolution points and canonical forms --------------------------
    print("== 1. canonical forms in the operad resolution ==")
    shape = PlanarTree((PlanarTree((None, None)),))
    raw = raw_bv(A, shape, (A.unit(), (2, 1)), (F(1, 3),))
    print("raw point: unit vertex over a transposition, edge length 1/3")
    print("normal form equals the bare transposition:",
          bv_normalize(raw) == iota(A, (2, 1)))

    x = bv_compose(iota(A, (2, 1)), 1, iota(A, (1, 2)))
    print("composition inserts a length-1 inner edge; counit recovers")
    print("the operadic composite:", mu(x) == A.compose((2, 1), 1, (1, 2)))

    # --- 2. loops of resolution maps ---------------------------------------
    print("\n== 2. loops of resolution maps ==")
    eta = identity_eta(A)
    g0 = constant_loop(eta)
    gw = window_loop(eta, assoc_reversal_eta())
    samples = [iota(A, (2, 1)), iota(A, (1, 3, 2)), x]
    print("constant loop passes the loop laws:",
          validate_loop(g0, samples).ok)
    print("window loop (reversal inside (1/3, 2/3)) passes:",
          validate_loop(gw, samples).ok)
    print("at time 1/2 the window loop reverses:",
          gw(iota(A, (1, 3, 2)), F(1, 2)))

    # --- 3. the delooping ---------------------------------------------------
    print("\n== 3. delooping a loop into a bimodule map ==")
    f0 = eta_mu_tilde(eta)
    fw = xi(gw)
    y = wb_normalize(raw_wb(A, corolla(3), (iota(A, (1, 3, 2)),), (F(1, 2),)))
    print("bimodule point: a corolla at height 1/2 labeled (1,3,2)")
    print("basepoint map sends it to its underlying element:", f0(y))
    print("the delooped window map reverses it:", fw(y))

    # --- 4. a closed-form evaluation ---------------------------------------
    print("\n== 4. closed-form check of the evaluation rule ==")
    # main tree: root with a 2-ary child at the root's height and a 3-ary
    # child strictly higher; the two equal-height vertices merge, so the
    # value factors as g(merged; t_r) composed with g(child; t_2).
    tr, t2 = F(2, 5), F(4, 5)
    shape = PlanarTree((PlanarTree((None, None)), PlanarTree((None, None, None))))
    xr, x1, x2 = (2, 1), (1, 2), (3, 1, 2)
    y2 = wb_normalize(raw_wb(
        A, shape, (iota(A, xr), iota(A, x1), iota(A, x2)), (tr, tr, t2)
    ))
    got = fw(y2)
    merged = bv_compose(iota(A, xr), 1, iota(A, x1))
    want = A.compose(gw(merged, tr), 3, gw(iota(A, x2), t2))
    print("xi(g)(y) == g(root o_1 child1; t_r) o_3 g(child2; t_2):",
          got == want)
    print("value:", got)

    # --- 5. rendering -------------------------------------------------------
    print("\n== 5. DOT rendering of the two-level point ==")
    print(dot_wb(y2))
    print("counit of the point (sanity):", mu_tilde(y2))


if __name__ == "__main__":
    main()
