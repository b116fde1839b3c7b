"""Equivariant Riemann-Roch characters of toric origami manifolds."""

from .characters import Character, RationalFunctionQ, char_monomial, dimension_of, specialize
from .geometry import Halfspace, Polytope, is_delzant, lattice_points
from .quantization import danilov_polytope, danilov_template
from .template import (
    OrigamiTemplate,
    gen_cube,
    gen_hirzebruch,
    gen_product,
    gen_simplex,
    gen_sphere_template,
    parse_template,
    render_template,
    validate_template,
)

__all__ = [
    "Character",
    "Halfspace",
    "OrigamiTemplate",
    "Polytope",
    "RationalFunctionQ",
    "char_monomial",
    "danilov_polytope",
    "danilov_template",
    "dimension_of",
    "gen_cube",
    "gen_hirzebruch",
    "gen_product",
    "gen_simplex",
    "gen_sphere_template",
    "is_delzant",
    "lattice_points",
    "parse_template",
    "render_template",
    "specialize",
    "validate_template",
]
