"""Command line front end.

Exit codes: 0 when every requested check passes, 1 on a failed check or an
invalid template, 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from .characters import char_monomial, char_sum
from .cylinder import kernel_dimension
from .geometry import GeometryError, format_vector
from .localization import (
    AuditFailure,
    CoveringParams,
    DegenerateTemplate,
    audit_localization,
    max_admissible_epsilon,
)
from .oracle import NonGenericDirection, NonIntegralVertex, check_direction, oracle_check_template
from .quantization import danilov_template
from .template import (
    InvalidTemplate,
    TemplateError,
    load_template,
    parse_rational,
    validate_template,
)

OK, FAIL, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _rational_flag(text: str) -> Fraction:
    if not re.fullmatch(r"-?\d+(/\d+)?", text.strip()):
        raise UsageError(f"expected an exact rational p/q, got {text!r}")
    return parse_rational(text)


def _direction_flag(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(c) for c in text.split(","))
    except ValueError:
        raise UsageError(f"direction must be comma-separated integers, got {text!r}") from None


def _modes_flag(text: str) -> range:
    m = re.fullmatch(r"(-?\d+)\.\.(-?\d+)", text.strip())
    if not m:
        raise UsageError(f"modes must look like lo..hi, got {text!r}")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo > hi:
        raise UsageError("modes: lo must not exceed hi")
    return range(lo, hi + 1)


def _load(path):
    try:
        return load_template(path)
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    except TemplateError as e:
        raise UsageError(f"{path}: {e}") from None


def _emit(obj):
    print(json.dumps(obj, indent=2))


def cmd_validate(args) -> int:
    t = _load(args.path)
    report = validate_template(t)
    if args.json:
        _emit(report.to_dict())
    else:
        print(report.to_text())
    return OK if report.accepted else FAIL


def _face_entries(t, result):
    out = []
    for (name, face), ch in result.per_face.items():
        P = t.by_name(name).polytope
        out.append({
            "polytope": name,
            "dim": face.dim,
            "facets": sorted(face.facet_set),
            "vertices": [[str(c) for c in v] for v in P.face_vertices(face)],
            "character": ch.to_text(),
        })
    return out


def cmd_rr(args) -> int:
    t = _load(args.path)
    result = danilov_template(t)
    if args.json:
        _emit({
            "character": result.character.to_text(),
            "dimension": result.dimension,
            "per_polytope": {k: v.to_text() for k, v in result.per_polytope.items()},
            "faces": _face_entries(t, result),
        })
    else:
        print(f"character: {result.character.to_text()}")
        print(f"dimension: {result.dimension}")
    return OK


def _lattice_only(t) -> bool:
    result = danilov_template(t)
    direct = char_sum(
        (char_monomial(x) * sp.sign for sp in t.polytopes for x in sp.polytope.lattice_points), t.dimension
    )
    return direct == result.character == char_sum(result.per_face.values(), t.dimension)


def cmd_oracle(args) -> int:
    t = _load(args.path)
    a = None
    if args.direction is not None:
        a = _direction_flag(args.direction)
        if len(a) != t.dimension:
            raise UsageError(f"direction needs {t.dimension} entries")
        validate = validate_template(t)
        if not validate.accepted:
            raise InvalidTemplate("; ".join(validate.errors))
        try:
            check_direction([sp.polytope for sp in t.polytopes], a)
        except NonGenericDirection as e:
            raise UsageError(f"non-generic direction: {e}") from None
    try:
        report = oracle_check_template(t, a)
    except NonIntegralVertex as e:
        ok = _lattice_only(t)
        if args.json:
            _emit({"oracle": "not applicable", "reason": str(e), "lattice_only": ok, "passed": ok})
        else:
            print(f"vertex oracle not applicable: {e}")
            print(f"lattice-only verification: {'PASS' if ok else 'FAIL'}")
        return OK if ok else FAIL
    if args.json:
        _emit(report.to_dict())
    else:
        print(f"direction: {','.join(map(str, report.direction))}")
        print(f"fixed point: {report.fixed_point_side.to_text()}")
        print(f"lattice:     {report.lattice_side.to_text()}")
        print("PASS" if report.passed else "FAIL")
    return OK if report.passed else FAIL


def cmd_covering(args) -> int:
    t = _load(args.path)
    bound = max_admissible_epsilon(t)
    eps = _rational_flag(args.epsilon) if args.epsilon is not None else bound.suggested_epsilon()
    if eps <= 0:
        raise UsageError("epsilon must be positive")
    try:
        report = audit_localization(t, CoveringParams(eps), override=args.override)
    except AuditFailure as e:
        if args.json:
            _emit({"epsilon": str(eps), "admissible": bound.admits(eps), "passed": False, "failure": str(e)})
        else:
            sq = "unbounded" if bound.squared_bound is None else f"eps^2 < {bound.squared_bound}"
            print(f"max admissible epsilon: {sq}")
            print(f"epsilon = {eps}: NOT admissible")
            print(f"audit failure: {e}")
        return FAIL
    if args.json:
        print(report.to_json())
    else:
        sq = "unbounded" if bound.squared_bound is None else f"eps^2 < {bound.squared_bound}"
        print(f"max admissible epsilon: {sq}")
        print(report.to_text())
    return OK if report.passed else FAIL


def cmd_cylinder(args) -> int:
    t = _rational_flag(args.t)
    if t < 0:
        raise UsageError("t must be >= 0")
    modes = _modes_flag(args.modes)
    report = kernel_dimension(t, modes)
    if args.json:
        _emit(report.to_dict())
    else:
        print(report.to_text())
    return OK if report.dimension == 0 and report.valid else FAIL


def cmd_enumerate(args) -> int:
    t = _load(args.path)
    out = {}
    for sp in t.polytopes:
        try:
            out[sp.name] = [list(x) for x in sp.polytope.lattice_points]
        except GeometryError as e:
            print(f"{sp.name}: {e}", file=sys.stderr)
            return FAIL
    if args.json:
        _emit({"polytopes": out})
    else:
        for sp in t.polytopes:
            pts = out[sp.name]
            print(f"{sp.name} ({'+' if sp.sign > 0 else '-'}): {len(pts)} lattice points")
            for x in pts:
                print(f"  {format_vector(x)}")
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="origami-rr", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check Delzant, fold and sign conditions")
    s.add_argument("path")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("rr", help="Riemann-Roch character of a template")
    s.add_argument("path")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_rr)

    s = sub.add_parser("oracle", help="compare with the vertex fixed-point sum")
    s.add_argument("path")
    s.add_argument("--direction", help="a1,...,an (default: first generic direction)")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("covering", help="localization audit at radius epsilon")
    s.add_argument("path")
    s.add_argument("--epsilon", help="p/q (default: largest admissible 1/2^k)")
    s.add_argument("--override", action="store_true", help="audit even if epsilon is not admissible")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_covering)

    s = sub.add_parser("cylinder", help="folded cylinder kernel certificates")
    s.add_argument("--t", default="0")
    s.add_argument("--modes", default="-5..5")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_cylinder)

    s = sub.add_parser("enumerate", help="list lattice points of every polytope")
    s.add_argument("path")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_enumerate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    # values such as "-5..5" would otherwise be taken for options
    for i in range(len(argv) - 1):
        if argv[i] in ("--modes", "--direction", "--t", "--epsilon") and argv[i + 1].startswith("-"):
            argv[i:i + 2] = [f"{argv[i]}={argv[i + 1]}", ""]
    args = parser.parse_args([a for a in argv if a != ""])
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE
    except (InvalidTemplate, DegenerateTemplate, GeometryError) as e:
        print(f"invalid template: {e}", file=sys.stderr)
        return FAIL


if __name__ == "__main__":
    sys.exit(main())
