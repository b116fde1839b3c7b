"""Covering of an origami polytope by face neighbourhoods, fold band and cracks.

Regions are never materialized; they are membership predicates on lattice
points decided with exact squared Euclidean distances. For a point x of
polytope P the tag is the first that applies:

1. ``crack``: x lies on a non-fold facet adjacent to a fold of P and its
   distance to that fold hyperplane is in [eps/2, eps];
2. ``fold_band``: 0 < dist(x, fold hyperplane) < eps;
3. ``face`` (j, F) for j = 0, ..., n-1: dist(x, F) < eps, faces taken in
   order of dimension;
4. ``face`` (n, P): everything else.

Lattice points lying on a fold hyperplane are not in the band; they go to
their face region in every polytope sharing the fold and cancel by sign.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import _linalg as la
from .characters import Character, char_monomial, char_sum
from .geometry import Face, Polytope, face_interior_lattice_points, squared_distance_to_face
from .quantization import danilov_template
from .template import OrigamiTemplate, require_valid


class InadmissibleEpsilon(ValueError):
    pass


class DegenerateTemplate(ValueError):
    pass


class AuditFailure(AssertionError):
    def __init__(self, message, polytope=None, point=None, region=None):
        super().__init__(message)
        self.polytope = polytope
        self.point = point
        self.region = region


@dataclass(frozen=True)
class CoveringParams:
    epsilon: Fraction

    def __post_init__(self):
        eps = Fraction(self.epsilon)
        if eps <= 0:
            raise ValueError("epsilon must be positive")
        object.__setattr__(self, "epsilon", eps)

    @property
    def half_band(self) -> Fraction:
        return self.epsilon / 2


@dataclass(frozen=True)
class EpsilonBound:
    """Admissible iff eps^2 < ``squared_bound`` (``None``: every eps is admissible)."""

    squared_bound: Fraction | None
    witness: str | None = None

    def admits(self, eps) -> bool:
        eps = Fraction(eps)
        return eps > 0 and (self.squared_bound is None or eps * eps < self.squared_bound)

    def suggested_epsilon(self) -> Fraction:
        """Largest eps = 1/2^k (k >= 0) strictly inside the bound."""
        eps = Fraction(1)
        while not self.admits(eps):
            eps /= 2
        return eps


@dataclass(frozen=True)
class RegionTag:
    kind: str  # "face", "fold_band" or "crack"
    polytope: str
    step: int | None = None  # face dimension for kind == "face"
    face: Face | None = None
    fold: int | None = None
    facet: int | None = None

    def label(self, P: Polytope | None = None) -> str:
        if self.kind == "face":
            verts = ""
            if P is not None:
                verts = " " + ",".join(_vec(v) for v in P.face_vertices(self.face))
            return f"{self.polytope}:face[{self.step}]{{{','.join(map(str, sorted(self.face.facet_set)))}}}{verts}"
        if self.kind == "fold_band":
            return f"{self.polytope}:fold_band[{self.fold}]"
        return f"{self.polytope}:crack[fold {self.fold}, facet {self.facet}]"

    def sort_key(self):
        order = {"fold_band": 0, "crack": 1, "face": 2}[self.kind]
        face_key = self.face.key() if self.face is not None else ()
        return (self.polytope, order, self.step if self.step is not None else -1,
                face_key, self.fold if self.fold is not None else -1,
                self.facet if self.facet is not None else -1)


def _vec(v) -> str:
    return "(" + ",".join(str(Fraction(c)) for c in v) + ")"


def _fold_halfspaces(t: OrigamiTemplate, name: str):
    P = t.by_name(name).polytope
    return [(k, facet, P.halfspaces[facet]) for k, facet in t.fold_facets(name)]


def _sq_dist_hyperplane(h, x) -> Fraction:
    v = h.value(x)
    return v * v / la.dot(h.normal, h.normal)


def max_admissible_epsilon(t: OrigamiTemplate) -> EpsilonBound:
    """Supremum (as a squared bound) of admissible covering radii.

    An eps is admissible when no lattice point of any polytope lies within eps
    of a fold hyperplane unless on it, and no lattice point lies within eps of
    a proper face not containing it. Crack points are a subset of the former.
    """
    require_valid(t)
    best: Fraction | None = None
    witness = None

    def offer(d, why):
        nonlocal best, witness
        if best is None or d < best:
            best, witness = d, why

    for sp in t.polytopes:
        P = sp.polytope
        for k, facet, h in _fold_halfspaces(t, sp.name):
            fold_face = P.facet_face(facet)
            for x in P.lattice_points:
                d = _sq_dist_hyperplane(h, x)
                if d == 0:
                    if not P.in_face_closure(fold_face, x):
                        raise DegenerateTemplate(
                            f"lattice point {_vec(x)} of {sp.name!r} is on fold {k} but off its facet"
                        )
                    continue
                offer(d, f"{sp.name}: {_vec(x)} to fold {k}")
        for face in P.faces:
            if face.dim == P.dim:
                continue
            for x in P.lattice_points:
                if P.in_face_closure(face, x):
                    continue
                offer(squared_distance_to_face(P, face, x),
                      f"{sp.name}: {_vec(x)} to face {{{','.join(map(str, sorted(face.facet_set)))}}}")
    return EpsilonBound(best, witness)


@dataclass
class PointAssignment:
    point: tuple[int, ...]
    tag: RegionTag
    candidates: int  # faces within eps at the winning step (1 when unambiguous)
    on_fold: bool = False

    @property
    def ambiguous(self) -> bool:
        return self.candidates > 1


class Covering:
    """Implicit region family for one template and radius."""

    def __init__(self, t: OrigamiTemplate, params: CoveringParams):
        self.template = t
        self.params = params
        self._folds = {sp.name: _fold_halfspaces(t, sp.name) for sp in t.polytopes}

    def _eps_sq(self):
        return self.params.epsilon ** 2

    def in_fold_band(self, name: str, x) -> int | None:
        for k, _, h in self._folds[name]:
            d = _sq_dist_hyperplane(h, x)
            if 0 < d < self._eps_sq():
                return k
        return None

    def in_crack(self, name: str, x) -> tuple[int, int] | None:
        P = self.template.by_name(name).polytope
        eps2 = self._eps_sq()
        half2 = self.params.half_band ** 2
        for k, facet, h in self._folds[name]:
            d = _sq_dist_hyperplane(h, x)
            if not half2 <= d <= eps2:
                continue
            for j, other in enumerate(P.halfspaces):
                if j == facet or other.value(x) != 0 or not P.contains(x):
                    continue
                # adjacent: the two facets meet in a codimension-2 face
                if any(g.facet_set == frozenset((j, facet)) for g in P.faces_of_dim(P.dim - 2)):
                    return k, j
        return None

    def classify(self, name: str, x) -> PointAssignment:
        P = self.template.by_name(name).polytope
        on_fold = any(h.value(x) == 0 for _, _, h in self._folds[name])
        crack = self.in_crack(name, x)
        if crack is not None:
            return PointAssignment(tuple(x), RegionTag("crack", name, fold=crack[0], facet=crack[1]), 1, on_fold)
        band = self.in_fold_band(name, x)
        if band is not None:
            return PointAssignment(tuple(x), RegionTag("fold_band", name, fold=band), 1, on_fold)
        eps2 = self._eps_sq()
        for j in range(P.dim):
            near = [f for f in P.faces_of_dim(j) if squared_distance_to_face(P, f, x) < eps2]
            if near:
                return PointAssignment(tuple(x), RegionTag("face", name, j, near[0]), len(near), on_fold)
        whole = P.faces_of_dim(P.dim)[0]
        return PointAssignment(tuple(x), RegionTag("face", name, P.dim, whole), 1, on_fold)

    def assignment(self) -> dict[str, list[PointAssignment]]:
        return {
            sp.name: [self.classify(sp.name, x) for x in sp.polytope.lattice_points]
            for sp in self.template.polytopes
        }


def build_covering(t: OrigamiTemplate, params: CoveringParams, strict: bool = True) -> Covering:
    require_valid(t)
    if strict:
        bound = max_admissible_epsilon(t)
        if not bound.admits(params.epsilon):
            raise InadmissibleEpsilon(
                f"epsilon {params.epsilon} is not admissible (need eps^2 < {bound.squared_bound}; {bound.witness})"
            )
    return Covering(t, params)


@dataclass
class RegionEntry:
    tag: RegionTag
    sign: int
    points: list[tuple[int, ...]]
    label: str

    @property
    def character_unsigned(self) -> Character:
        n = len(self.points[0]) if self.points else None
        return char_sum((char_monomial(x) for x in self.points), n) if n else None


@dataclass
class AuditReport:
    epsilon: Fraction
    bound: EpsilonBound
    admissible: bool
    regions: list[RegionEntry]
    contributions: dict[str, Character]
    total: Character
    expected: Character
    checks: dict[str, bool] = field(default_factory=dict)
    ambiguous: list[tuple[str, tuple[int, ...]]] = field(default_factory=list)
    crack_residuals: dict[int, Character] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)
    polytopes: dict[str, Polytope] = field(default_factory=dict, repr=False)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def region_pairing(self) -> dict[tuple, Character]:
        """Signed sum of face-region contributions grouped by geometric face.

        For two opposite-sign copies of one polytope every group is zero.
        """
        groups: dict[tuple, Character] = {}
        for entry in self.regions:
            if entry.tag.kind != "face":
                continue
            P = self.polytopes[entry.tag.polytope]
            key = (entry.tag.step, tuple(sorted(P.face_vertices(entry.tag.face))))
            groups[key] = groups.get(key, Character.zero(self.total.num_vars)) + self.contributions[entry.label]
        return groups

    def to_dict(self) -> dict:
        return {
            "epsilon": str(self.epsilon),
            "max_admissible_epsilon_squared": None if self.bound.squared_bound is None else str(self.bound.squared_bound),
            "admissible": self.admissible,
            "passed": self.passed,
            "checks": dict(sorted(self.checks.items())),
            "regions": [
                {
                    "region": e.label,
                    "kind": e.tag.kind,
                    "sign": e.sign,
                    "points": [
                        {"point": list(x), "term": (char_monomial(x) * e.sign).to_text()} for x in e.points
                    ],
                    "character": self.contributions[e.label].to_text(),
                }
                for e in self.regions
            ],
            "ambiguous": [{"polytope": name, "point": list(x)} for name, x in self.ambiguous],
            "total": self.total.to_text(),
            "expected": self.expected.to_text(),
            "failures": list(self.failures),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        bound = "unbounded" if self.bound.squared_bound is None else f"eps^2 < {self.bound.squared_bound}"
        lines = [
            f"epsilon = {self.epsilon} ({'admissible' if self.admissible else 'NOT admissible'}; {bound})",
        ]
        for e in self.regions:
            pts = " ".join(_vec(x) for x in e.points) if e.points else "-"
            lines.append(f"  {'+' if e.sign > 0 else '-'} {e.label}: {pts} -> {self.contributions[e.label].to_text()}")
        for name, x in self.ambiguous:
            lines.append(f"  ambiguous: {name} {_vec(x)}")
        for name, ok in sorted(self.checks.items()):
            lines.append(f"  check {name}: {'PASS' if ok else 'FAIL'}")
        lines.extend(f"  failure: {f}" for f in self.failures)
        lines.append(f"total = {self.total.to_text()}")
        lines.append(f"audit: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


def audit_localization(t: OrigamiTemplate, params: CoveringParams, override: bool = False) -> AuditReport:
    """Reassemble the character from per-region contributions and check it.

    Without ``override`` an inadmissible eps raises ``AuditFailure`` naming the
    first lattice point caught by a fold band, crack, or foreign face region.
    With ``override`` the report records those failures instead, along with
    the pairing of crack points across each fold.
    """
    require_valid(t)
    n = t.dimension
    bound = max_admissible_epsilon(t)
    admissible = bound.admits(params.epsilon)
    cov = Covering(t, params)
    polys = {sp.name: sp.polytope for sp in t.polytopes}
    signs = {sp.name: sp.sign for sp in t.polytopes}

    grouped: dict[RegionTag, list[tuple[int, ...]]] = {}
    failures: list[tuple[str, str, tuple, RegionTag]] = []
    ambiguous = []
    for sp in t.polytopes:
        P = sp.polytope
        # every face region is listed, empty or not
        for face in P.faces:
            grouped.setdefault(RegionTag("face", sp.name, face.dim, face), [])
        for k, facet, _ in cov._folds[sp.name]:
            grouped.setdefault(RegionTag("fold_band", sp.name, fold=k), [])
            for g in P.faces_of_dim(P.dim - 2):
                if facet in g.facet_set:
                    (j,) = g.facet_set - {facet}
                    grouped.setdefault(RegionTag("crack", sp.name, fold=k, facet=j), [])
        for a in (cov.classify(sp.name, x) for x in P.lattice_points):
            grouped.setdefault(a.tag, []).append(a.point)
            if a.ambiguous:
                ambiguous.append((sp.name, a.point))
            if a.tag.kind != "face":
                failures.append((f"lattice point {_vec(a.point)} of {sp.name!r} lies in {a.tag.label()}",
                                 sp.name, a.point, a.tag))
            elif not P.in_face_closure(a.tag.face, a.point):
                failures.append((f"lattice point {_vec(a.point)} of {sp.name!r} is captured by "
                                 f"{a.tag.label(P)} which does not contain it", sp.name, a.point, a.tag))

    if failures and not override:
        msg, name, point, tag = failures[0]
        raise AuditFailure(msg, name, point, tag)

    regions = []
    contributions: dict[str, Character] = {}
    for tag in sorted(grouped, key=RegionTag.sort_key):
        P = polys[tag.polytope]
        label = tag.label(P)
        pts = sorted(grouped[tag])
        sign = signs[tag.polytope]
        regions.append(RegionEntry(tag, sign, pts, label))
        contributions[label] = char_sum((char_monomial(x) for x in pts), n) * sign

    checks = {}
    checks["fold_band_empty"] = all(not e.points for e in regions if e.tag.kind == "fold_band")
    checks["crack_empty"] = all(not e.points for e in regions if e.tag.kind == "crack")
    face_ok = True
    for e in regions:
        if e.tag.kind != "face":
            continue
        P = polys[e.tag.polytope]
        if sorted(face_interior_lattice_points(P, e.tag.face)) != e.points:
            face_ok = False
    checks["face_regions_match_face_interiors"] = face_ok
    total = char_sum((contributions[e.label] for e in regions if e.tag.kind == "face"), n)
    expected = danilov_template(t).character
    checks["reassembly"] = total == expected

    # crack points pair off between the two sides of each fold
    crack_residuals: dict[int, Character] = {}
    for e in regions:
        if e.tag.kind == "crack":
            k = e.tag.fold
            crack_residuals[k] = crack_residuals.get(k, Character.zero(n)) + contributions[e.label]
    checks["crack_pairing"] = all(c.is_zero() for c in crack_residuals.values())

    report = AuditReport(
        epsilon=params.epsilon,
        bound=bound,
        admissible=admissible,
        regions=regions,
        contributions=contributions,
        total=total,
        expected=expected,
        checks=checks,
        ambiguous=ambiguous,
        crack_residuals=crack_residuals,
        failures=[f[0] for f in failures],
        polytopes=polys,
    )
    return report
