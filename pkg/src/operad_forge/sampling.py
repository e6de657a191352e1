"""Seeded random generators for points, labels and interval configurations.

Everything is driven by a caller-supplied ``random.Random`` so that test
runs are reproducible; all coordinates are exact rationals drawn from small
denominator grids.
"""

from __future__ import annotations

from fractions import Fraction
from random import Random
from typing import Optional

from .bv import BVPoint, raw_bv
from .operads import (
    AssocOperad,
    ComOperad,
    CubeConfig,
    EndOperad,
    Operad,
)
from .trees import PlanarTree, planar_trees
from .wb import WBPoint, raw_wb


def random_fraction(
    rng: Random, lo=Fraction(0), hi=Fraction(1), den: int = 8,
    endpoints: bool = True,
) -> Fraction:
    lo, hi = Fraction(lo), Fraction(hi)
    lo_k = 0 if endpoints else 1
    hi_k = den if endpoints else den - 1
    k = rng.randint(lo_k, hi_k)
    return lo + (hi - lo) * Fraction(k, den)


def random_perm(rng: Random, n: int) -> tuple[int, ...]:
    return tuple(rng.sample(range(1, n + 1), n))


def random_element(rng: Random, operad: Operad, n: int):
    """A uniform-ish random arity-n element, without materializing the full
    per-arity domain for the large builtin operads."""
    if isinstance(operad, AssocOperad):
        return random_perm(rng, n)
    if isinstance(operad, ComOperad):
        return n
    if isinstance(operad, EndOperad):
        size = operad.size
        return (n, tuple(rng.randrange(size) for _ in range(size**n)))
    pool = operad.elements(n)
    if not pool:
        raise ValueError(f"operad {operad.name} has no arity-{n} elements")
    return rng.choice(pool)


def random_shape(
    rng: Random, max_vertices: int = 4, max_arity: int = 3,
    min_vertices: int = 1, min_arity: int = 0,
) -> PlanarTree:
    """A random planar tree grown top-down with a global vertex budget."""
    budget = {"v": rng.randint(min_vertices, max_vertices) - 1}

    def grow() -> PlanarTree:
        ar = rng.randint(min_arity, max_arity)
        kids = []
        for _ in range(ar):
            if budget["v"] > 0 and rng.random() < 0.45:
                budget["v"] -= 1
                kids.append(grow())
            else:
                kids.append(None)
        return PlanarTree(tuple(kids))

    return grow()


def random_bv(
    rng: Random,
    operad: Operad,
    max_vertices: int = 4,
    max_arity: int = 3,
    allow_boundary_params: bool = True,
    allow_units: bool = True,
    word: Optional[tuple[int, ...]] = None,
    min_arity: int = 0,
) -> BVPoint:
    """A random raw point of the operad resolution."""
    shape = random_shape(rng, max_vertices, max_arity, min_arity=min_arity)
    labels = []
    for sub in shape.subtrees:
        lab = random_element(rng, operad, sub.arity)
        if not allow_units and sub.arity == 1:
            for _ in range(8):
                if not operad.is_unit(lab):
                    break
                lab = random_element(rng, operad, 1)
        labels.append(lab)
    params = tuple(
        random_fraction(rng, endpoints=allow_boundary_params)
        for _ in range(shape.n_vertices - 1)
    )
    if word is None and rng.random() < 0.5:
        word = random_perm(rng, shape.n_leaves)
    return raw_bv(operad, shape, tuple(labels), params, word)


def random_bv_of_arity(
    rng: Random,
    operad: Operad,
    arity: int,
    max_vertices: int = 3,
    allow_boundary_params: bool = True,
    min_arity: int = 0,
) -> BVPoint:
    """A random raw resolution point with a prescribed number of inputs,
    drawn from the enumerated shapes of that leaf count."""
    shapes: list[PlanarTree] = []
    for nv in range(1, max_vertices + 1):
        for t in planar_trees(arity, nv):
            if min_arity and any(
                s.arity < min_arity for s in t.subtrees
            ):
                continue
            shapes.append(t)
    shape = rng.choice(shapes)
    labels = tuple(
        random_element(rng, operad, sub.arity) for sub in shape.subtrees
    )
    params = tuple(
        random_fraction(rng, endpoints=allow_boundary_params)
        for _ in range(shape.n_vertices - 1)
    )
    return raw_bv(operad, shape, labels, params)


def random_wb(
    rng: Random,
    operad: Operad,
    max_main_vertices: int = 3,
    max_main_arity: int = 3,
    max_aux_vertices: int = 2,
    allow_boundary_heights: bool = True,
    word: Optional[tuple[int, ...]] = None,
    min_arity: int = 0,
) -> WBPoint:
    """A random raw point of the bimodule resolution: a random main shape,
    monotone random heights, and a random resolution point on each vertex."""
    shape = random_shape(rng, max_main_vertices, max_main_arity, min_arity=min_arity)
    heights: list[Fraction] = [Fraction(0)] * shape.n_vertices
    labels: list[BVPoint] = []
    parents = shape.vertex_parents
    for v, sub in enumerate(shape.subtrees):
        lo = heights[parents[v][0]] if parents[v][0] >= 0 else Fraction(0)
        heights[v] = random_fraction(
            rng, lo=lo, endpoints=allow_boundary_heights
        )
        labels.append(
            random_bv_of_arity(
                rng, operad, sub.arity, max_aux_vertices, min_arity=min_arity
            )
        )
    if word is None and rng.random() < 0.5:
        word = random_perm(rng, shape.n_leaves)
    return raw_wb(operad, shape, tuple(labels), tuple(heights), word)


def random_cubes(rng: Random, n: int, den: int = 24) -> CubeConfig:
    """A random sorted configuration of n disjoint rational subintervals."""
    while True:
        cuts = sorted(rng.sample(range(den + 1), 2 * n))
        intervals = tuple(
            (Fraction(cuts[2 * j], den), Fraction(cuts[2 * j + 1], den))
            for j in range(n)
        )
        if all(a < b for a, b in intervals):
            return CubeConfig(intervals)
