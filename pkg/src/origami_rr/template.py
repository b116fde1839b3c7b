"""Origami templates: signed Delzant polytopes glued along fold facets.

File format (JSON, UTF-8)::

    {"dimension": n,
     "polytopes": [{"name": str, "sign": "+" | "-",
                    "halfspaces": [{"normal": [int, ...], "offset": "p/q"}]}],
     "folds": [{"a": [name, facet_index], "b": [name, facet_index]}]}

Facet indices are zero-based positions in a polytope's halfspace list.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .geometry import (
    GeometryError,
    Halfspace,
    Polytope,
    is_delzant,
)


class TemplateError(ValueError):
    pass


class TemplateSyntaxError(TemplateError):
    def __init__(self, message, line=None, column=None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)
        self.line = line
        self.column = column


class UnknownPolytopeName(TemplateError):
    pass


class DimensionMismatch(TemplateError):
    pass


class MalformedRational(TemplateError):
    pass


class InvalidTemplate(TemplateError):
    pass


_RATIONAL = re.compile(r"^\s*-?\d+(\s*/\s*\d+)?\s*$")


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (or a plain int). Decimals and floats are refused."""
    if isinstance(text, bool):
        raise MalformedRational(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str) or not _RATIONAL.match(text):
        raise MalformedRational(f"not a rational of the form p/q: {text!r}")
    try:
        return Fraction(text.replace(" ", ""))
    except ZeroDivisionError:
        raise MalformedRational(f"zero denominator in {text!r}") from None


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


@dataclass(frozen=True)
class SignedPolytope:
    name: str
    polytope: Polytope
    sign: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise TemplateError(f"sign must be +1 or -1, got {self.sign}")


@dataclass(frozen=True)
class FoldSpec:
    a: tuple[str, int]
    b: tuple[str, int]

    def swapped(self) -> "FoldSpec":
        return FoldSpec(self.b, self.a)


@dataclass(frozen=True)
class OrigamiTemplate:
    dimension: int
    polytopes: tuple[SignedPolytope, ...]
    folds: tuple[FoldSpec, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "polytopes", tuple(self.polytopes))
        object.__setattr__(self, "folds", tuple(self.folds))

    def by_name(self, name: str) -> SignedPolytope:
        for sp in self.polytopes:
            if sp.name == name:
                return sp
        raise UnknownPolytopeName(name)

    def fold_facets(self, name: str) -> list[tuple[int, int]]:
        """(fold index, facet index) pairs touching polytope ``name``."""
        out = []
        for k, f in enumerate(self.folds):
            for side in (f.a, f.b):
                if side[0] == name:
                    out.append((k, side[1]))
        return out

    def translated(self, shift: Sequence[int]) -> "OrigamiTemplate":
        return OrigamiTemplate(
            self.dimension,
            tuple(SignedPolytope(sp.name, sp.polytope.translated(shift), sp.sign) for sp in self.polytopes),
            self.folds,
        )

    def transformed(self, g) -> "OrigamiTemplate":
        return OrigamiTemplate(
            self.dimension,
            tuple(SignedPolytope(sp.name, sp.polytope.transformed(g), sp.sign) for sp in self.polytopes),
            self.folds,
        )

    def renamed(self, mapping: dict[str, str]) -> "OrigamiTemplate":
        return OrigamiTemplate(
            self.dimension,
            tuple(SignedPolytope(mapping.get(sp.name, sp.name), sp.polytope, sp.sign) for sp in self.polytopes),
            tuple(
                FoldSpec((mapping.get(f.a[0], f.a[0]), f.a[1]), (mapping.get(f.b[0], f.b[0]), f.b[1]))
                for f in self.folds
            ),
        )


# --- parsing and rendering ---

def _fail(msg):
    raise TemplateSyntaxError(msg)


def parse_template(text: str) -> OrigamiTemplate:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise TemplateSyntaxError(e.msg, e.lineno, e.colno) from None
    return template_from_dict(data)


def template_from_dict(data) -> OrigamiTemplate:
    if not isinstance(data, dict):
        _fail("template must be a JSON object")
    unknown = set(data) - {"dimension", "polytopes", "folds"}
    if unknown:
        _fail(f"unknown keys: {sorted(unknown)}")
    n = data.get("dimension")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        _fail("'dimension' must be a positive integer")
    polys = data.get("polytopes")
    if not isinstance(polys, list) or not polys:
        _fail("'polytopes' must be a nonempty list")
    out = []
    for k, entry in enumerate(polys):
        if not isinstance(entry, dict):
            _fail(f"polytope {k} must be an object")
        name = entry.get("name")
        if not isinstance(name, str) or not name:
            _fail(f"polytope {k} needs a nonempty string 'name'")
        sign = {"+": 1, "-": -1}.get(entry.get("sign"))
        if sign is None:
            _fail(f"polytope {name!r}: 'sign' must be \"+\" or \"-\"")
        hs_data = entry.get("halfspaces")
        if not isinstance(hs_data, list) or not hs_data:
            _fail(f"polytope {name!r}: 'halfspaces' must be a nonempty list")
        hs = []
        for j, h in enumerate(hs_data):
            if not isinstance(h, dict) or "normal" not in h or "offset" not in h:
                _fail(f"polytope {name!r} halfspace {j}: needs 'normal' and 'offset'")
            normal = h["normal"]
            if not isinstance(normal, list) or not all(isinstance(c, int) and not isinstance(c, bool) for c in normal):
                _fail(f"polytope {name!r} halfspace {j}: 'normal' must be a list of integers")
            if len(normal) != n:
                raise DimensionMismatch(f"polytope {name!r} halfspace {j}: normal has length {len(normal)}, expected {n}")
            offset = parse_rational(h["offset"])
            try:
                hs.append(Halfspace(tuple(normal), offset))
            except GeometryError as e:
                _fail(f"polytope {name!r} halfspace {j}: {e}")
        out.append(SignedPolytope(name, Polytope(tuple(hs), n), sign))
    names = [sp.name for sp in out]
    if len(set(names)) != len(names):
        _fail("polytope names must be unique")
    folds_data = data.get("folds", [])
    if not isinstance(folds_data, list):
        _fail("'folds' must be a list")
    folds = []
    lookup = {sp.name: sp for sp in out}
    for k, f in enumerate(folds_data):
        if not isinstance(f, dict) or set(f) != {"a", "b"}:
            _fail(f"fold {k} must have exactly the keys 'a' and 'b'")
        sides = []
        for key in ("a", "b"):
            side = f[key]
            if (not isinstance(side, list) or len(side) != 2 or not isinstance(side[0], str)
                    or not isinstance(side[1], int) or isinstance(side[1], bool)):
                _fail(f"fold {k} side {key!r} must be [name, facet_index]")
            if side[0] not in lookup:
                raise UnknownPolytopeName(f"fold {k} refers to unknown polytope {side[0]!r}")
            if not 0 <= side[1] < len(lookup[side[0]].polytope.halfspaces):
                _fail(f"fold {k} side {key!r}: facet index {side[1]} out of range")
            sides.append((side[0], side[1]))
        folds.append(FoldSpec(sides[0], sides[1]))
    return OrigamiTemplate(n, tuple(out), tuple(folds))


def template_to_dict(t: OrigamiTemplate) -> dict:
    return {
        "dimension": t.dimension,
        "polytopes": [
            {
                "name": sp.name,
                "sign": "+" if sp.sign > 0 else "-",
                "halfspaces": [
                    {"normal": list(h.normal), "offset": format_rational(h.offset)}
                    for h in sp.polytope.halfspaces
                ],
            }
            for sp in t.polytopes
        ],
        "folds": [{"a": list(f.a), "b": list(f.b)} for f in t.folds],
    }


def render_template(t: OrigamiTemplate) -> str:
    """Canonical text: keys in schema order, one halfspace or fold per line."""
    d = template_to_dict(t)
    dumps = json.dumps
    polys = []
    for p in d["polytopes"]:
        hs = ",\n".join(
            f'        {{"normal": {dumps(h["normal"])}, "offset": {dumps(h["offset"])}}}' for h in p["halfspaces"]
        )
        polys.append(
            "    {\n"
            f'      "name": {dumps(p["name"])},\n'
            f'      "sign": {dumps(p["sign"])},\n'
            f'      "halfspaces": [\n{hs}\n      ]\n'
            "    }"
        )
    folds = ",\n".join(f'    {{"a": {dumps(f["a"])}, "b": {dumps(f["b"])}}}' for f in d["folds"])
    return (
        "{\n"
        f'  "dimension": {d["dimension"]},\n'
        '  "polytopes": [\n' + ",\n".join(polys) + "\n  ],\n"
        '  "folds": [' + (f"\n{folds}\n  " if folds else "") + "]\n"
        "}\n"
    )


def load_template(path) -> OrigamiTemplate:
    with open(path, encoding="utf-8") as fh:
        return parse_template(fh.read())


# --- validation ---

@dataclass
class FoldCheck:
    index: int
    same_facet: bool = False
    configuration: str | None = None  # "same-side" or "mirrored"
    local_agreement: bool = False
    opposite_signs: bool = False
    messages: list[str] = field(default_factory=list)

    @property
    def accepted(self) -> bool:
        return self.same_facet and self.local_agreement and self.opposite_signs


@dataclass
class ValidationReport:
    accepted: bool
    polytopes: dict = field(default_factory=dict)  # name -> DelzantReport or error string
    folds: list[FoldCheck] = field(default_factory=list)
    errors: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "accepted": self.accepted,
            "polytopes": {
                name: (r if isinstance(r, str) else r.to_dict()) for name, r in self.polytopes.items()
            },
            "folds": [
                {
                    "index": fc.index,
                    "accepted": fc.accepted,
                    "same_facet": fc.same_facet,
                    "configuration": fc.configuration,
                    "local_agreement": fc.local_agreement,
                    "opposite_signs": fc.opposite_signs,
                    "messages": fc.messages,
                }
                for fc in self.folds
            ],
            "errors": self.errors,
            "warnings": self.warnings,
        }

    def to_text(self) -> str:
        lines = [f"template: {'ACCEPTED' if self.accepted else 'REJECTED'}"]
        for name, r in self.polytopes.items():
            if isinstance(r, str):
                lines.append(f"  polytope {name}: invalid ({r})")
            else:
                verdict = "Delzant" if r.accepted else "not Delzant: " + "; ".join(r.reasons)
                lines.append(f"  polytope {name}: {verdict}")
        for fc in self.folds:
            status = "ok" if fc.accepted else "FAIL"
            cfg = f" [{fc.configuration}]" if fc.configuration else ""
            lines.append(f"  fold {fc.index}: {status}{cfg}")
            lines.extend(f"    {m}" for m in fc.messages)
        lines.extend(f"  error: {e}" for e in self.errors)
        lines.extend(f"  warning: {w}" for w in self.warnings)
        return "\n".join(lines)


def _check_fold(t: OrigamiTemplate, k: int, fold: FoldSpec, ok_polys: set[str]) -> FoldCheck:
    fc = FoldCheck(k)
    if fold.a[0] == fold.b[0]:
        fc.messages.append("fold sides must be two different template entries")
        return fc
    pa, pb = t.by_name(fold.a[0]), t.by_name(fold.b[0])
    fc.opposite_signs = pa.sign != pb.sign
    if not fc.opposite_signs:
        fc.messages.append("fold joins equal signs")
    if not {pa.name, pb.name} <= ok_polys:
        fc.messages.append("fold touches an invalid polytope")
        return fc
    A, B = pa.polytope, pb.polytope
    ha, hb = A.halfspaces[fold.a[1]], B.halfspaces[fold.b[1]]
    if ha == hb:
        fc.configuration = "same-side"
    elif ha == hb.flipped():
        fc.configuration = "mirrored"
    else:
        fc.messages.append("fold facets lie on different hyperplanes")
        return fc
    fa, fb = A.facet_face(fold.a[1]), B.facet_face(fold.b[1])
    va, vb = set(A.face_vertices(fa)), set(B.face_vertices(fb))
    fc.same_facet = va == vb
    if not fc.same_facet:
        fc.messages.append("fold facets differ as polytopes")
        return fc
    # Near every face of the fold facet both polytopes must be cut out by the
    # same remaining hyperplanes.
    faces_b = {frozenset(B.face_vertices(g)): g for g in B.faces if fold.b[1] in g.facet_set}
    fc.local_agreement = True
    for g in A.faces:
        if fold.a[1] not in g.facet_set:
            continue
        verts = frozenset(A.face_vertices(g))
        gb = faces_b.get(verts)
        adj_a = {A.halfspaces[i] for i in g.facet_set if i != fold.a[1]}
        adj_b = None if gb is None else {B.halfspaces[i] for i in gb.facet_set if i != fold.b[1]}
        if adj_a != adj_b:
            fc.local_agreement = False
            fc.messages.append(
                f"polytopes disagree near the {g.dim}-face with vertices "
                + ", ".join("(" + ", ".join(str(c) for c in v) + ")" for v in sorted(verts))
            )
            break
    return fc


def validate_template(t: OrigamiTemplate) -> ValidationReport:
    """Check Delzant-ness of every polytope and the fold gluing conditions."""
    report = ValidationReport(accepted=True)
    names = [sp.name for sp in t.polytopes]
    if len(set(names)) != len(names):
        report.errors.append("polytope names are not unique")
    ok_polys = set()
    for sp in t.polytopes:
        if sp.polytope.dim != t.dimension:
            report.polytopes[sp.name] = f"dimension {sp.polytope.dim} != {t.dimension}"
            continue
        try:
            r = is_delzant(sp.polytope)
        except GeometryError as e:
            report.polytopes[sp.name] = f"{type(e).__name__}: {e}"
            continue
        report.polytopes[sp.name] = r
        if r.accepted:
            ok_polys.add(sp.name)
    if len(ok_polys) != len(t.polytopes):
        report.errors.append("some polytopes are not Delzant")

    used: set[tuple[str, int]] = set()
    for k, fold in enumerate(t.folds):
        for side in (fold.a, fold.b):
            if side in used:
                report.errors.append(f"facet {side[1]} of {side[0]!r} is used by more than one fold")
            used.add(side)
        try:
            fc = _check_fold(t, k, fold, ok_polys)
        except UnknownPolytopeName as e:
            fc = FoldCheck(k, messages=[f"unknown polytope {e}"])
        report.folds.append(fc)
        if not fc.accepted:
            report.errors.append(f"fold {k}: " + "; ".join(fc.messages))

    # fold graph must be connected
    parent = {name: name for name in names}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for fold in t.folds:
        if fold.a[0] in parent and fold.b[0] in parent:
            parent[find(fold.a[0])] = find(fold.b[0])
    if len({find(x) for x in names}) > 1:
        report.errors.append("fold graph is disconnected")

    if not report.errors:
        for i, p in enumerate(t.polytopes):
            for q in t.polytopes[i + 1:]:
                if p.sign == q.sign:
                    shared = set(p.polytope.lattice_points) & set(q.polytope.lattice_points)
                    if shared:
                        report.warnings.append(
                            f"same-sign polytopes {p.name!r} and {q.name!r} share {len(shared)} "
                            "lattice points; they are counted once per polytope"
                        )
    report.accepted = not report.errors
    return report


def require_valid(t: OrigamiTemplate) -> ValidationReport:
    report = validate_template(t)
    if not report.accepted:
        raise InvalidTemplate("; ".join(report.errors))
    return report


# --- generators ---

def gen_simplex(n: int, k=1) -> Polytope:
    """``{x_i >= 0, x_1 + ... + x_n <= k}``; the last halfspace is the hypotenuse."""
    k = Fraction(k)
    if n < 1 or k <= 0:
        raise ValueError("need n >= 1 and k > 0")
    hs = [Halfspace(tuple(1 if j == i else 0 for j in range(n)), 0) for i in range(n)]
    hs.append(Halfspace((-1,) * n, k))
    return Polytope(tuple(hs), n)


def gen_box(lengths: Sequence) -> Polytope:
    n = len(lengths)
    hs = []
    for i, length in enumerate(lengths):
        e = tuple(1 if j == i else 0 for j in range(n))
        hs.append(Halfspace(e, 0))
        hs.append(Halfspace(tuple(-c for c in e), Fraction(length)))
    return Polytope(tuple(hs), n)


def gen_cube(n: int, k=1) -> Polytope:
    return gen_box([k] * n)


def gen_product(P: Polytope, Q: Polytope) -> Polytope:
    m, n = P.dim, Q.dim
    hs = [Halfspace(h.normal + (0,) * n, h.offset) for h in P.halfspaces]
    hs += [Halfspace((0,) * m + h.normal, h.offset) for h in Q.halfspaces]
    return Polytope(tuple(hs), m + n)


def gen_hirzebruch(a: int, heights: tuple = (None, 1)) -> Polytope:
    """Trapezoid ``{x >= 0, 0 <= y <= h, x + a*y <= b}`` with ``heights = (b, h)``.

    ``b`` defaults to ``a*h + 1``; it must exceed ``a*h`` for four vertices.
    """
    b, h = heights
    h = Fraction(h)
    b = a * h + 1 if b is None else Fraction(b)
    if a < 0 or h <= 0 or b <= a * h:
        raise ValueError("need a >= 0, h > 0 and b > a*h")
    return Polytope(
        (
            Halfspace((1, 0), 0),
            Halfspace((0, 1), 0),
            Halfspace((0, -1), h),
            Halfspace((-1, -a), b),
        ),
        2,
    )


def single_polytope_template(P: Polytope, name: str = "P", sign: int = 1) -> OrigamiTemplate:
    return OrigamiTemplate(P.dim, (SignedPolytope(name, P, sign),), ())


def two_copy_template(P: Polytope, facet: int, names=("plus", "minus")) -> OrigamiTemplate:
    """Two opposite-sign copies of ``P`` folded along one of its facets."""
    return OrigamiTemplate(
        P.dim,
        (SignedPolytope(names[0], P, 1), SignedPolytope(names[1], P, -1)),
        (FoldSpec((names[0], facet), (names[1], facet)),),
    )


def gen_sphere_template(n: int, k=1) -> OrigamiTemplate:
    """Origami polytope of S^{2n} with the form scaled by ``k``.

    With moment map |z|^2 / 2 the image is two copies of ``{x_i >= 0, sum x_i <= k/2}``,
    folded along the hypotenuse.
    """
    return two_copy_template(gen_simplex(n, Fraction(k) / 2), n)
