"""A tour of the cell-complex layer.

Enumerates the index census for small stages, groups it into isomorphism
classes, builds the contraction graph with its unique initial element per
component, inspects the induced direct category, and runs the straightening
deformation on a membership polytope.

Run:  python3 demos/cell_complex_tour.py
"""

from fractions import Fraction as F

from operad_forge.cells import (
    UpsilonIndex,
    build_graph,
    classify,
    enumerate_upsilon,
    h_membership,
    homotopy_H,
    latching_index,
    reedy_of,
)
from operad_forge.serialize import dot_graph
from operad_forge.trees import PlanarTree, corolla


def main() -> None:
    # --- 1. census and classes ---------------------------------------------
    print("== 1. index census ==")
    for k, l in ((3, 2), (4, 3)):
        census = enumerate_upsilon(k, l, require_nontrivial_main=True)
        classes = classify(census)
        print(f"stage ({k},{l}): {len(census)} indices, "
              f"{len(classes)} isomorphism classes")

    # --- 2. the contraction graph ------------------------------------------
    print("\n== 2. contraction graph at stage (4,3) ==")
    g = build_graph(4, 3)
    print(f"{len(g.classes)} classes, {len(g.edges)} contraction edges, "
          f"{len(g.components)} components")
    print("each component has one initial class with all-corolla "
          "auxiliaries:",
          all(
              sum(1 for i in comp if g.classes[i].level == 0) == 1
              for comp in g.components
          ))
    dot = dot_graph(g)
    print(f"DOT rendering: {dot.count('->')} arrows, "
          f"{dot.count('doublecircle')} initials marked")

    # --- 3. the direct category --------------------------------------------
    print("\n== 3. direct category over the graph ==")
    r = reedy_of(g)
    print(f"{len(r.vertex_objects)} degree-1 objects, "
          f"{len(r.pair_objects)} degree-0 pair objects")
    v0 = r.vertex_objects[0]
    print(f"latching index of the first vertex object has "
          f"{len(latching_index(r, v0))} entries")

    # --- 4. membership polytopes and the deformation -----------------------
    print("\n== 4. straightening deformation ==")
    idx = UpsilonIndex(
        PlanarTree((PlanarTree((None,)),)),
        (corolla(1), PlanarTree((PlanarTree((None,)),))),
    )
    hts = (F(1, 4), F(1, 2))
    aps = ((), (F(1, 3),))
    print("start point lies in the closed polytope:",
          h_membership(idx, hts, aps, "H"))
    for u in (F(0), F(1, 4), F(1, 2), F(3, 4), F(1)):
        h, a = homotopy_H(idx, hts, aps, u)
        print(f"  u={u}: heights={h} auxParams={a}")
    h1, a1 = homotopy_H(idx, hts, aps, F(1))
    print("endpoint has extreme heights and aux parameters:",
          h1 == (F(0), F(1)) and a1 == ((), (F(1),)))


if __name__ == "__main__":
    main()
