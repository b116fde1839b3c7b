"""Riemann-Roch characters as signed lattice-point sums."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .characters import Character, char_monomial, char_sum, dimension_of
from .geometry import (
    Face,
    NotDelzant,
    Polytope,
    face_interior_lattice_points,
    is_delzant,
    is_integral,
)
from .template import OrigamiTemplate, require_valid


@dataclass
class RRResult:
    character: Character
    per_polytope: dict[str, Character] = field(default_factory=dict)
    per_face: dict[tuple[str, Face], Character] = field(default_factory=dict)

    @property
    def dimension(self) -> int:
        return dimension_of(self.character)


def _require_delzant(P: Polytope):
    report = is_delzant(P)
    if not report.accepted:
        raise NotDelzant("; ".join(report.reasons))


def danilov_polytope(P: Polytope) -> Character:
    """Sum of t^xi over the lattice points of a Delzant polytope."""
    _require_delzant(P)
    return char_sum((char_monomial(x) for x in P.lattice_points), P.dim)


def danilov_template(t: OrigamiTemplate) -> RRResult:
    """Signed lattice-point character of a validated template, with its face breakdown.

    Polytopes are counted independently (multiset semantics), so overlapping
    same-sign polytopes contribute once each.
    """
    require_valid(t)
    n = t.dimension
    result = RRResult(Character.zero(n))
    for sp in t.polytopes:
        P = sp.polytope
        faces = []
        for face in P.faces:
            ch = char_sum((char_monomial(x) for x in face_interior_lattice_points(P, face)), n)
            result.per_face[(sp.name, face)] = ch * sp.sign
            faces.append(ch)
        result.per_polytope[sp.name] = char_sum(faces, n) * sp.sign
    result.character = char_sum(result.per_polytope.values(), n)
    return result


def vertex_contribution(P: Polytope, v: Sequence) -> Character:
    """t^v at a lattice vertex, 0 at a non-integral one."""
    P.vertex_index(v)
    if is_integral(v):
        return char_monomial(tuple(int(c) for c in v))
    return Character.zero(P.dim)
