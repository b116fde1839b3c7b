"""Fixed-point route to the same character: Brion's vertex-cone sum.

Each integral vertex v of a Delzant polytope contributes
``q^<v,a> / prod_w (1 - q^<w,a>)`` over its edge generators w once the torus
is restricted to the circle ``t_i = q^{a_i}``. The sum over vertices is a
Laurent polynomial and must agree with the specialized lattice-point sum.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import _linalg as la
from .characters import RationalFunctionQ, specialize
from .geometry import (
    NotDelzant,
    Polytope,
    edge_generators_at_vertex,
    format_vector,
    is_delzant,
    is_integral,
)
from .quantization import danilov_template
from .template import OrigamiTemplate, require_valid


class NonIntegralVertex(ValueError):
    pass


class NonGenericDirection(ValueError):
    def __init__(self, message, edge=None, vertex=None):
        super().__init__(message)
        self.edge = edge
        self.vertex = vertex


def _edge_data(P: Polytope):
    report = is_delzant(P)
    if not report.accepted:
        raise NotDelzant("; ".join(report.reasons))
    return [(vc.vertex, vc.edge_generators) for vc in report.vertices]


def _is_generic(data, a) -> bool:
    for vertex, gens in data:
        if any(la.dot(w, a) == 0 for w in gens):
            return False
    values = [la.dot(v, a) for v, _ in data]
    return len(set(values)) == len(values)


def generic_directions(polytopes: Iterable[Polytope]):
    """Positive integer vectors, by max-norm then lexicographically, that are
    nonzero on every edge generator and separate the vertices of each polytope."""
    data = [_edge_data(P) for P in polytopes]
    if not data:
        raise ValueError("no polytopes given")
    n = len(data[0][0][0])
    norm = 1
    while True:
        for a in itertools.product(range(1, norm + 1), repeat=n):
            if max(a) == norm and all(_is_generic(d, a) for d in data):
                yield a
        norm += 1


def find_generic_direction(polytopes: Iterable[Polytope]) -> tuple[int, ...]:
    return next(generic_directions(polytopes))


def brion_vertex_term(P: Polytope, v: Sequence, a: Sequence[int]) -> RationalFunctionQ:
    if not is_integral(v):
        raise NonIntegralVertex(f"vertex {format_vector(v)} is not a lattice point")
    gens = edge_generators_at_vertex(P, v)
    term = RationalFunctionQ.monomial(int(la.dot(v, a)))
    one = RationalFunctionQ([1])
    for w in gens:
        k = la.dot(w, a)
        if k == 0:
            raise NonGenericDirection(
                f"direction {tuple(a)} is orthogonal to edge {w} at vertex {format_vector(v)}", w, v
            )
        term = term / (one - RationalFunctionQ.monomial(k))
    return term


def fixed_point_character(P: Polytope, a: Sequence[int]) -> RationalFunctionQ:
    total = RationalFunctionQ(())
    for v in P.vertices:
        total = total + brion_vertex_term(P, v, a)
    return total


@dataclass
class OracleReport:
    direction: tuple[int, ...]
    fixed_point_side: RationalFunctionQ
    lattice_side: RationalFunctionQ

    @property
    def passed(self) -> bool:
        return self.fixed_point_side == self.lattice_side

    def to_dict(self):
        return {
            "direction": list(self.direction),
            "fixed_point": self.fixed_point_side.to_text(),
            "lattice": self.lattice_side.to_text(),
            "passed": self.passed,
        }


def check_direction(polytopes: Iterable[Polytope], a: Sequence[int]):
    """Raise ``NonGenericDirection`` naming the first edge generator orthogonal to ``a``."""
    for P in polytopes:
        for vertex, gens in _edge_data(P):
            for w in gens:
                if la.dot(w, a) == 0:
                    raise NonGenericDirection(
                        f"direction {tuple(a)} is orthogonal to edge {w} at vertex {format_vector(vertex)}",
                        w, vertex,
                    )


def oracle_check_template(t: OrigamiTemplate, a: Sequence[int] | None = None) -> OracleReport:
    """Compare the signed Brion sum with the specialized lattice-point character."""
    require_valid(t)
    polys = [sp.polytope for sp in t.polytopes]
    for sp in t.polytopes:
        for v in sp.polytope.vertices:
            if not is_integral(v):
                raise NonIntegralVertex(
                    f"polytope {sp.name!r} has vertex {format_vector(v)}; use lattice-only verification"
                )
    if a is None:
        a = find_generic_direction(polys)
    a = tuple(int(c) for c in a)
    if len(a) != t.dimension:
        raise ValueError(f"direction must have {t.dimension} entries")
    check_direction(polys, a)
    fp = RationalFunctionQ(())
    for sp in t.polytopes:
        fp = fp + fixed_point_character(sp.polytope, a) * sp.sign
    lattice = RationalFunctionQ.from_laurent(specialize(danilov_template(t).character, a))
    return OracleReport(a, fp, lattice)


def evaluate_at_one(f: RationalFunctionQ) -> Fraction:
    """Value of a Laurent polynomial at q = 1 (the dimension)."""
    if not f.is_laurent():
        raise ValueError("not a Laurent polynomial")
    return sum(f.numerator, Fraction(0))
