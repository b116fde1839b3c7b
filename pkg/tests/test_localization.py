from fractions import Fraction as F

import pytest

from origami_rr.characters import Character, char_monomial
from origami_rr.corpus import template_corpus
from origami_rr.geometry import face_interior_lattice_points
from origami_rr.localization import (
    AuditFailure,
    CoveringParams,
    InadmissibleEpsilon,
    build_covering,
    max_admissible_epsilon,
    audit_localization,
)
from origami_rr.quantization import danilov_template
from origami_rr.template import (
    gen_cube,
    gen_simplex,
    gen_sphere_template,
    single_polytope_template,
    two_copy_template,
)

CORPUS = template_corpus()


def test_params():
    p = CoveringParams(F(1, 4))
    assert p.half_band == F(1, 8)
    with pytest.raises(ValueError):
        CoveringParams(0)


def test_s4_bound_is_point_to_fold_distance():
    # (0,0) to the line x + y = 1/2: (1/2)^2 / 2
    b = max_admissible_epsilon(gen_sphere_template(2, 1))
    assert b.squared_bound == F(1, 8)
    assert b.admits(F(1, 8)) and not b.admits(F(1, 2))


def test_unit_square_bound():
    b = max_admissible_epsilon(single_polytope_template(gen_cube(2)))
    assert b.admits(F(1, 4)) and not b.admits(1)


def test_s4_classification():
    cov = build_covering(gen_sphere_template(2, 1), CoveringParams(F(1, 4)))
    for name in ("plus", "minus"):
        a = cov.classify(name, (0, 0))
        assert a.tag.kind == "face" and a.tag.step == 0
        P = cov.template.by_name(name).polytope
        assert P.face_vertices(a.tag.face) == ((0, 0),)


def test_3_simplex_classification():
    t = single_polytope_template(gen_simplex(2, 3))
    cov = build_covering(t, CoveringParams(F(1, 4)))
    P = t.polytopes[0].polytope
    assert cov.classify("P", (1, 1)).tag.step == 2
    edge = cov.classify("P", (2, 1)).tag
    assert edge.step == 1 and edge.face == P.facet_face(2)
    vtx = cov.classify("P", (3, 0)).tag
    assert vtx.step == 0 and P.face_vertices(vtx.face) == ((3, 0),)


def brute_classify(P, x, eps):
    """Oracle: nearest-carrier rule using a dense sample of each face."""
    from itertools import product

    eps2 = eps * eps
    for j in range(P.dim):
        for f in P.faces_of_dim(j):
            verts = P.face_vertices(f)
            # sample the face on a fine grid of convex combinations
            steps = 12
            for w in product(range(steps + 1), repeat=len(verts)):
                if sum(w) != steps:
                    continue
                pt = [sum(wi * v[c] for wi, v in zip(w, verts)) / steps for c in range(P.dim)]
                if sum((a - b) ** 2 for a, b in zip(pt, x)) < eps2:
                    return j, f
    return P.dim, P.faces_of_dim(P.dim)[0]


def test_classification_against_sampled_distances():
    t = single_polytope_template(gen_simplex(2, 3))
    P = t.polytopes[0].polytope
    cov = build_covering(t, CoveringParams(F(1, 4)))
    for x in P.lattice_points:
        a = cov.classify("P", x)
        assert (a.tag.step, a.tag.face) == brute_classify(P, x, F(1, 4))


def test_strict_mode_rejects_inadmissible():
    with pytest.raises(InadmissibleEpsilon):
        build_covering(gen_sphere_template(2, 1), CoveringParams(F(1, 2)))
    build_covering(gen_sphere_template(2, 1), CoveringParams(F(1, 2)), strict=False)


def test_crack_empty_for_s4():
    t = gen_sphere_template(2, 1)
    cov = build_covering(t, CoveringParams(F(1, 4)))
    for sp in t.polytopes:
        for x in sp.polytope.lattice_points:
            assert cov.in_crack(sp.name, x) is None
            assert cov.in_fold_band(sp.name, x) is None


def test_audit_examples():
    r = audit_localization(gen_sphere_template(2, 2), CoveringParams(F(1, 4)))
    assert r.passed and r.total.is_zero()
    assert all(c.is_zero() for c in r.region_pairing().values())

    r = audit_localization(single_polytope_template(gen_simplex(2, 1)), CoveringParams(F(1, 4)))
    by_vertex = {
        e.points[0]: r.contributions[e.label] for e in r.regions if e.tag.kind == "face" and e.points
    }
    assert by_vertex == {(0, 0): Character.one(2), (1, 0): char_monomial((1, 0)), (0, 1): char_monomial((0, 1))}
    assert r.total.to_text() == "1 + t1 + t2"


def test_audit_failure_names_point():
    with pytest.raises(AuditFailure) as info:
        audit_localization(gen_sphere_template(2, 1), CoveringParams(F(1, 2)))
    assert info.value.point == (0, 0)
    assert "(0,0)" in str(info.value)


def test_override_mode_pairs_cracks():
    # eps = 1/2 puts (0,0) of both copies into the crack on x = 0
    r = audit_localization(gen_sphere_template(2, 1), CoveringParams(F(1, 2)), override=True)
    assert not r.admissible
    assert not r.checks["crack_empty"]
    assert r.checks["crack_pairing"]
    assert r.failures


def test_override_flags_ambiguity():
    # the midpoint (1,1) of 2*simplex is within eps of two vertices when eps is large
    t = single_polytope_template(gen_simplex(2, 2))
    r = audit_localization(t, CoveringParams(F(3, 2)), override=True)
    assert r.ambiguous
    assert not r.passed


def test_on_fold_points_cancel():
    # the integral S^4 has lattice points on the fold line x + y = 1
    t = gen_sphere_template(2, 2)
    cov = build_covering(t, CoveringParams(F(1, 4)))
    a = cov.classify("plus", (1, 0))
    assert a.on_fold and a.tag.kind == "face"


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_audit_corpus(name):
    t = CORPUS[name]
    b = max_admissible_epsilon(t)
    eps = b.suggested_epsilon()
    for e in (eps, eps / 2, eps / 7):
        assert b.admits(e)
        r = audit_localization(t, CoveringParams(e))
        assert r.passed, r.to_text()
        assert r.total == danilov_template(t).character
        for entry in r.regions:
            if entry.tag.kind == "face":
                P = t.by_name(entry.tag.polytope).polytope
                assert entry.points == sorted(face_interior_lattice_points(P, entry.tag.face))
            else:
                assert entry.points == []


def test_json_report_is_canonical():
    t = CORPUS["zigzag_squares"]
    a = audit_localization(t, CoveringParams(F(1, 2))).to_json()
    b = audit_localization(t, CoveringParams(F(1, 2))).to_json()
    assert a == b
    assert '"region"' in a and '"term"' in a
