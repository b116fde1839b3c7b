"""Exact convex geometry for rational simple polytopes.

Polytopes are given by halfspaces ``<normal, x> + offset >= 0`` with primitive
integer inward normals. Everything is computed with ``int`` and
``fractions.Fraction``; nothing here touches floating point.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from . import _linalg as la

Vector = tuple  # tuple of int or Fraction


class GeometryError(ValueError):
    pass


class UnboundedPolytope(GeometryError):
    pass


class EmptyPolytope(GeometryError):
    pass


class EmptyInterior(GeometryError):
    """The feasible set is nonempty but lower dimensional."""


class RedundantHalfspace(GeometryError):
    pass


class NotSimple(GeometryError):
    pass


class NotDelzant(GeometryError):
    pass


def _as_fraction_vector(x) -> tuple[Fraction, ...]:
    return tuple(Fraction(c) for c in x)


def is_integral(x: Sequence) -> bool:
    return all(Fraction(c).denominator == 1 for c in x)


def as_int_vector(x: Sequence) -> tuple[int, ...]:
    if not is_integral(x):
        raise ValueError(f"{format_vector(x)} is not a lattice point")
    return tuple(int(c) for c in x)


def format_vector(x: Sequence) -> str:
    return "(" + ", ".join(str(Fraction(c)) for c in x) + ")"


@dataclass(frozen=True)
class Halfspace:
    """The set ``{x : <normal, x> + offset >= 0}``."""

    normal: tuple[int, ...]
    offset: Fraction

    def __post_init__(self):
        normal = tuple(int(c) for c in self.normal)
        if not any(normal):
            raise GeometryError("halfspace normal must be nonzero")
        if math.gcd(*normal) != 1:
            raise GeometryError(f"halfspace normal {normal} is not primitive")
        object.__setattr__(self, "normal", normal)
        object.__setattr__(self, "offset", Fraction(self.offset))

    @classmethod
    def normalized(cls, normal: Sequence[int], offset) -> "Halfspace":
        """Build a halfspace, dividing out the content of a non-primitive normal."""
        normal = tuple(int(c) for c in normal)
        g = math.gcd(*normal)
        if g == 0:
            raise GeometryError("halfspace normal must be nonzero")
        return cls(tuple(c // g for c in normal), Fraction(offset) / g)

    @property
    def dim(self) -> int:
        return len(self.normal)

    def value(self, x: Sequence) -> Fraction:
        return Fraction(la.dot(self.normal, x)) + self.offset

    def contains(self, x: Sequence) -> bool:
        return self.value(x) >= 0

    def flipped(self) -> "Halfspace":
        return Halfspace(tuple(-c for c in self.normal), -self.offset)

    def translated(self, shift: Sequence[int]) -> "Halfspace":
        # P + s = {y : <n, y - s> + c >= 0}
        return Halfspace(self.normal, self.offset - la.dot(self.normal, shift))


def _recession_cone_is_trivial(normals: list[tuple[int, ...]], n: int) -> bool:
    if la.rank(normals) < n:
        return False
    # a pointed cone {d : N d >= 0} is nonzero iff it has an extreme ray,
    # which is cut out by n - 1 independent tight rows
    for subset in itertools.combinations(range(len(normals)), n - 1):
        rows = [normals[i] for i in subset]
        if la.rank(rows) != n - 1:
            continue
        (d,) = la.nullspace(rows, n)
        for ray in (d, tuple(-x for x in d)):
            if all(la.dot(nu, ray) >= 0 for nu in normals):
                return False
    return True


def vertices_of(halfspaces: Sequence[Halfspace], n: int) -> list[tuple[Fraction, ...]]:
    """All vertices of the polyhedron cut out by ``halfspaces`` in Q^n, sorted.

    Raises ``UnboundedPolytope`` or ``EmptyPolytope``. Lower-dimensional
    feasible sets are returned as-is; ``Polytope`` rejects them.
    """
    if not halfspaces:
        raise UnboundedPolytope("no halfspaces given")
    for h in halfspaces:
        if h.dim != n:
            raise GeometryError(f"normal {h.normal} does not have length {n}")
    normals = [h.normal for h in halfspaces]
    found = set()
    for subset in itertools.combinations(range(len(halfspaces)), n):
        a = [halfspaces[i].normal for i in subset]
        b = [-halfspaces[i].offset for i in subset]
        x = la.solve_square(a, b)
        if x is None or x in found:
            continue
        if all(h.contains(x) for h in halfspaces):
            found.add(x)
    if la.rank(normals) < n:
        raise UnboundedPolytope("facet normals do not span; the feasible set contains a line or is empty")
    if not _recession_cone_is_trivial(normals, n):
        if not found:
            raise UnboundedPolytope("recession cone is nonzero")
        raise UnboundedPolytope("polytope is unbounded in some direction")
    if not found:
        raise EmptyPolytope("halfspaces have no common point")
    return sorted(found)


@dataclass(frozen=True)
class Face:
    """A nonempty face, identified by the facets containing it."""

    dim: int
    facet_set: frozenset[int]
    vertex_ids: tuple[int, ...]

    def key(self):
        return (self.dim, tuple(sorted(self.facet_set)))


@dataclass(frozen=True)
class VertexCheck:
    vertex: tuple[Fraction, ...]
    facets: tuple[int, ...]
    normal_det: int | None
    edge_generators: tuple[tuple[int, ...], ...] | None
    edge_det: int | None

    @property
    def unimodular(self) -> bool:
        return self.normal_det is not None and abs(self.normal_det) == 1


@dataclass
class DelzantReport:
    accepted: bool
    simple: bool
    vertices: list[VertexCheck] = field(default_factory=list)
    reasons: list[str] = field(default_factory=list)

    def to_dict(self):
        return {
            "accepted": self.accepted,
            "simple": self.simple,
            "reasons": list(self.reasons),
            "vertices": [
                {
                    "vertex": [str(c) for c in vc.vertex],
                    "facets": list(vc.facets),
                    "normal_det": vc.normal_det,
                    "edge_generators": None if vc.edge_generators is None else [list(w) for w in vc.edge_generators],
                    "edge_det": vc.edge_det,
                }
                for vc in self.vertices
            ],
        }


@dataclass(frozen=True)
class Polytope:
    """A full-dimensional bounded polytope in H-representation.

    Construction is cheap; ``vertices`` (and everything derived from it)
    validates boundedness, full-dimensionality and irredundancy on first use.
    """

    halfspaces: tuple[Halfspace, ...]
    dim: int

    def __post_init__(self):
        object.__setattr__(self, "halfspaces", tuple(self.halfspaces))
        if self.dim < 1:
            raise GeometryError("dimension must be positive")

    @classmethod
    def from_inequalities(cls, rows: Iterable[tuple[Sequence[int], object]]) -> "Polytope":
        hs = tuple(Halfspace.normalized(normal, offset) for normal, offset in rows)
        if not hs:
            raise UnboundedPolytope("no halfspaces given")
        return cls(hs, hs[0].dim)

    def contains(self, x: Sequence) -> bool:
        return all(h.contains(x) for h in self.halfspaces)

    @cached_property
    def vertices(self) -> tuple[tuple[Fraction, ...], ...]:
        verts = vertices_of(self.halfspaces, self.dim)
        if la.affine_dimension(verts) < self.dim:
            raise EmptyInterior("feasible set is not full-dimensional")
        if len(set(self.halfspaces)) != len(self.halfspaces):
            raise RedundantHalfspace("duplicate halfspace")
        for i, h in enumerate(self.halfspaces):
            on = [v for v in verts if h.value(v) == 0]
            if la.affine_dimension(on) < self.dim - 1:
                raise RedundantHalfspace(f"halfspace {i} does not support a facet")
        return tuple(verts)

    @cached_property
    def vertex_facets(self) -> tuple[frozenset[int], ...]:
        """Indices of the halfspaces tight at each vertex."""
        return tuple(
            frozenset(i for i, h in enumerate(self.halfspaces) if h.value(v) == 0)
            for v in self.vertices
        )

    @cached_property
    def is_simple(self) -> bool:
        return all(len(t) == self.dim for t in self.vertex_facets)

    def vertex_index(self, v: Sequence) -> int:
        v = _as_fraction_vector(v)
        try:
            return self.vertices.index(v)
        except ValueError:
            raise GeometryError(f"{format_vector(v)} is not a vertex") from None

    @cached_property
    def faces(self) -> tuple[Face, ...]:
        if not self.is_simple:
            raise NotSimple("some vertex lies on more than n facets")
        by_facets: dict[frozenset[int], Face] = {}
        vf = self.vertex_facets
        for tight in vf:
            for size in range(len(tight) + 1):
                for s in itertools.combinations(sorted(tight), size):
                    s = frozenset(s)
                    ids = tuple(j for j, t in enumerate(vf) if s <= t)
                    facet_set = frozenset.intersection(*(vf[j] for j in ids))
                    if facet_set not in by_facets:
                        by_facets[facet_set] = Face(self.dim - len(facet_set), facet_set, ids)
        return tuple(sorted(by_facets.values(), key=Face.key))

    def faces_of_dim(self, j: int) -> list[Face]:
        return [f for f in self.faces if f.dim == j]

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self.faces_of_dim(j)) for j in range(self.dim + 1))

    def face_vertices(self, face: Face) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(self.vertices[i] for i in face.vertex_ids)

    def facet_face(self, index: int) -> Face:
        for f in self.faces:
            if f.facet_set == frozenset([index]):
                return f
        raise GeometryError(f"halfspace {index} is not a facet")

    def in_face_closure(self, face: Face, x: Sequence) -> bool:
        return self.contains(x) and all(self.halfspaces[i].value(x) == 0 for i in face.facet_set)

    def in_relative_interior(self, face: Face, x: Sequence) -> bool:
        return all(
            (h.value(x) == 0) if i in face.facet_set else (h.value(x) > 0)
            for i, h in enumerate(self.halfspaces)
        )

    def carrier_face(self, x: Sequence) -> Face:
        """The unique face whose relative interior contains ``x``."""
        tight = frozenset(i for i, h in enumerate(self.halfspaces) if h.value(x) == 0)
        for f in self.faces:
            if f.facet_set == tight:
                return f
        raise GeometryError(f"{format_vector(x)} is not in the polytope")

    @cached_property
    def lattice_points(self) -> tuple[tuple[int, ...], ...]:
        return tuple(lattice_points(self))

    def translated(self, shift: Sequence[int]) -> "Polytope":
        return Polytope(tuple(h.translated(shift) for h in self.halfspaces), self.dim)

    def transformed(self, g: Sequence[Sequence[int]]) -> "Polytope":
        """Image under x -> g x for g in GL(n, Z)."""
        d = la.det(g)
        if abs(d) != 1:
            raise GeometryError("transformation is not unimodular")
        # <n, g^-1 y>: the new normal is g^-T n
        n = self.dim
        cols = [la.solve_square(g, [1 if i == j else 0 for i in range(n)]) for j in range(n)]
        hs = []
        for h in self.halfspaces:
            new_normal = tuple(int(sum(h.normal[r] * cols[c][r] for r in range(n))) for c in range(n))
            hs.append(Halfspace(new_normal, h.offset))
        return Polytope(tuple(hs), self.dim)


def face_lattice(polytope: Polytope) -> dict[int, list[Face]]:
    return {j: polytope.faces_of_dim(j) for j in range(polytope.dim + 1)}


def edge_generators_at_vertex(polytope: Polytope, vertex: Sequence) -> list[tuple[int, ...]]:
    """Primitive directions of the edges leaving a vertex, in lexicographic order."""
    idx = polytope.vertex_index(vertex)
    tight = sorted(polytope.vertex_facets[idx])
    if len(tight) != polytope.dim:
        raise NotDelzant(f"vertex {format_vector(vertex)} is not simple")
    gens = _edge_directions(polytope, tight)
    if abs(la.det([polytope.halfspaces[i].normal for i in tight])) != 1:
        raise NotDelzant(f"vertex cone at {format_vector(vertex)} is not unimodular")
    return gens


def _edge_directions(polytope: Polytope, tight: list[int]) -> list[tuple[int, ...]]:
    normals = [polytope.halfspaces[i].normal for i in tight]
    gens = []
    for k in range(len(tight)):
        others = normals[:k] + normals[k + 1:]
        (d,) = la.nullspace(others, polytope.dim)
        if la.dot(normals[k], d) < 0:
            d = tuple(-x for x in d)
        gens.append(la.primitive(d))
    return sorted(gens)


def is_delzant(polytope: Polytope) -> DelzantReport:
    """Check simplicity and unimodularity of every vertex cone."""
    report = DelzantReport(accepted=True, simple=polytope.is_simple)
    for v, tight in zip(polytope.vertices, polytope.vertex_facets):
        tight_sorted = tuple(sorted(tight))
        if len(tight) != polytope.dim:
            report.vertices.append(VertexCheck(v, tight_sorted, None, None, None))
            report.reasons.append(f"vertex {format_vector(v)} lies on {len(tight)} facets")
            report.accepted = False
            continue
        normal_det = int(la.det([polytope.halfspaces[i].normal for i in tight_sorted]))
        gens = _edge_directions(polytope, list(tight_sorted))
        edge_det = int(la.det(gens))
        vc = VertexCheck(v, tight_sorted, normal_det, tuple(gens), edge_det)
        report.vertices.append(vc)
        if abs(normal_det) != 1:
            report.accepted = False
            report.reasons.append(f"vertex {format_vector(v)} has |det| = {abs(normal_det)}")
    return report


def lattice_points(polytope: Polytope) -> list[tuple[int, ...]]:
    """Integer points of the closed polytope in lexicographic order."""
    verts = polytope.vertices
    ranges = []
    for c in range(polytope.dim):
        lo = math.ceil(min(v[c] for v in verts))
        hi = math.floor(max(v[c] for v in verts))
        if lo > hi:
            return []
        ranges.append(range(lo, hi + 1))
    return [x for x in itertools.product(*ranges) if polytope.contains(x)]


def face_interior_lattice_points(polytope: Polytope, face: Face) -> list[tuple[int, ...]]:
    return [x for x in polytope.lattice_points if polytope.in_relative_interior(face, x)]


def squared_distance_to_affine_hull(polytope: Polytope, face: Face, x: Sequence) -> Fraction:
    """Squared Euclidean distance from ``x`` to the affine span of ``face``."""
    rows = sorted(face.facet_set)
    if not rows:
        return Fraction(0)
    normals = [polytope.halfspaces[i].normal for i in rows]
    resid = [polytope.halfspaces[i].value(x) for i in rows]
    gram = [[la.dot(a, b) for b in normals] for a in normals]
    y = la.solve_square(gram, resid)
    return sum((a * b for a, b in zip(resid, y)), Fraction(0))


def project_to_affine_hull(polytope: Polytope, face: Face, x: Sequence) -> tuple[Fraction, ...]:
    rows = sorted(face.facet_set)
    x = _as_fraction_vector(x)
    if not rows:
        return x
    normals = [polytope.halfspaces[i].normal for i in rows]
    resid = [polytope.halfspaces[i].value(x) for i in rows]
    gram = [[la.dot(a, b) for b in normals] for a in normals]
    y = la.solve_square(gram, resid)
    return tuple(
        xc - sum(yk * nk[c] for yk, nk in zip(y, normals)) for c, xc in enumerate(x)
    )


def squared_distance_to_face(polytope: Polytope, face: Face, x: Sequence) -> Fraction:
    """Exact squared Euclidean distance from ``x`` to the closed face.

    The nearest point lies in the relative interior of some subface, where it
    is the orthogonal projection onto that subface's affine hull.
    """
    best = None
    for g in polytope.faces:
        if not face.facet_set <= g.facet_set:
            continue
        p = project_to_affine_hull(polytope, g, x)
        if not polytope.in_face_closure(g, p):
            continue
        d = sum(((a - b) ** 2 for a, b in zip(p, x)), Fraction(0))
        if best is None or d < best:
            best = d
    assert best is not None
    return best
