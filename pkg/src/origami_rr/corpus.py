"""Named polytopes and templates used by the checks and experiment scripts."""

from __future__ import annotations

from .geometry import Polytope
from .template import (
    FoldSpec,
    OrigamiTemplate,
    SignedPolytope,
    gen_box,
    gen_cube,
    gen_hirzebruch,
    gen_product,
    gen_simplex,
    gen_sphere_template,
    single_polytope_template,
    two_copy_template,
)


def polytope_corpus() -> dict[str, Polytope]:
    """Integral Delzant polytopes: simplices, boxes, products, Hirzebruch trapezoids."""
    out: dict[str, Polytope] = {}
    for n in (1, 2, 3):
        for k in (1, 2, 3, 4):
            out[f"{k}simplex{n}"] = gen_simplex(n, k)
    out["square"] = gen_cube(2)
    out["box2x3"] = gen_box([2, 3])
    out["cube"] = gen_cube(3)
    out["box1x2x1"] = gen_box([1, 2, 1])
    out["simplex2xsegment"] = gen_product(gen_simplex(2, 1), gen_simplex(1, 2))
    out["segmentx2simplex2"] = gen_product(gen_simplex(1, 1), gen_simplex(2, 2))
    for a in (0, 1, 2, 3):
        out[f"hirzebruch{a}"] = gen_hirzebruch(a, (a + 2, 1))
    out["hirzebruch3_tall"] = gen_hirzebruch(3, (7, 2))
    return out


def zigzag_squares() -> OrigamiTemplate:
    """Three unit squares folded plus|minus along x = 1 and minus|plus2 along y = 1."""
    sq = gen_cube(2)
    return OrigamiTemplate(
        2,
        (SignedPolytope("plus", sq, 1), SignedPolytope("minus", sq, -1), SignedPolytope("plus2", sq, 1)),
        (FoldSpec(("plus", 1), ("minus", 1)), FoldSpec(("minus", 3), ("plus2", 3))),
    )


def template_corpus() -> dict[str, OrigamiTemplate]:
    out: dict[str, OrigamiTemplate] = {}
    for n in (1, 2, 3):
        for k in (1, 2, 3):
            out[f"sphere{n}_{k}"] = gen_sphere_template(n, k)
    polys = polytope_corpus()
    for name in ("2simplex2", "3simplex2", "square", "cube", "hirzebruch1", "simplex2xsegment"):
        out[f"single_{name}"] = single_polytope_template(polys[name])
    out["twocopy_square"] = two_copy_template(polys["square"], 0)
    out["twocopy_hirzebruch2"] = two_copy_template(polys["hirzebruch2"], 2)
    out["twocopy_3simplex2"] = two_copy_template(polys["3simplex2"], 2)
    out["zigzag_squares"] = zigzag_squares()
    return out
