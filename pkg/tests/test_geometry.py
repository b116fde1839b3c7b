import itertools
import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from origami_rr.geometry import (
    EmptyInterior,
    EmptyPolytope,
    Halfspace,
    NotDelzant,
    NotSimple,
    Polytope,
    RedundantHalfspace,
    UnboundedPolytope,
    edge_generators_at_vertex,
    face_interior_lattice_points,
    face_lattice,
    is_delzant,
    lattice_points,
    squared_distance_to_face,
    vertices_of,
)
from origami_rr.template import gen_box, gen_cube, gen_hirzebruch, gen_product, gen_simplex


def hs(*rows):
    return [Halfspace.normalized(n, o) for n, o in rows]


def brute_lattice(P, box=12):
    n = P.dim
    return sorted(x for x in itertools.product(range(-box, box + 1), repeat=n) if P.contains(x))


def test_vertices_scaled_simplex():
    v = vertices_of(hs(((1, 0), 0), ((0, 1), 0), ((-1, -1), 2)), 2)
    assert v == [(0, 0), (0, 2), (2, 0)]


def test_vertices_half_simplex():
    v = vertices_of(hs(((1, 0), 0), ((0, 1), 0), ((-1, -1), F(1, 2))), 2)
    assert set(v) == {(0, 0), (F(1, 2), 0), (0, F(1, 2))}


def test_degenerate_interval_has_one_vertex_but_no_interior():
    rows = hs(((1,), 0), ((-1,), 0))
    assert vertices_of(rows, 1) == [(0,)]
    with pytest.raises(EmptyInterior):
        Polytope(tuple(rows), 1).vertices


def test_unbounded_and_empty():
    with pytest.raises(UnboundedPolytope):
        vertices_of(hs(((1, 0), 0), ((0, 1), 0)), 2)
    with pytest.raises(UnboundedPolytope):
        vertices_of(hs(((1, 0), 0), ((-1, 0), 1)), 2)
    with pytest.raises(EmptyPolytope):
        vertices_of(hs(((1,), -2), ((-1,), 1)), 1)


def test_redundant_halfspace_rejected():
    P = Polytope.from_inequalities([((1, 0), 0), ((0, 1), 0), ((-1, -1), 1), ((-1, 0), 5)])
    with pytest.raises(RedundantHalfspace):
        P.vertices


def test_non_primitive_normal_is_normalized_or_refused():
    assert Halfspace.normalized((2, 2), -2) == Halfspace((1, 1), -1)
    with pytest.raises(ValueError):
        Halfspace((2, 2), 0)


@pytest.mark.parametrize(
    "P, fvec",
    [
        (gen_cube(2), (4, 4, 1)),
        (gen_simplex(2, 1), (3, 3, 1)),
        (gen_cube(3), (8, 12, 6, 1)),
        (gen_simplex(3, 2), (4, 6, 4, 1)),
        (gen_product(gen_simplex(2, 1), gen_simplex(1, 1)), (6, 9, 5, 1)),
    ],
)
def test_f_vectors(P, fvec):
    assert P.f_vector() == fvec
    assert len(face_lattice(P)[P.dim]) == 1


def test_f_vector_cube_by_brute_force_over_facet_subsets():
    P = gen_cube(3)
    counts = [0] * 4
    for size in range(4):
        for s in itertools.combinations(range(6), size):
            on = [v for v in P.vertices if all(P.halfspaces[i].value(v) == 0 for i in s)]
            if on and all(
                any(P.halfspaces[j].value(v) != 0 for v in on) for j in range(6) if j not in s
            ):
                counts[3 - size] += 1
    assert tuple(counts) == P.f_vector() == (8, 12, 6, 1)


def test_non_simple_pyramid():
    # square pyramid: the apex lies on four facets
    P = Polytope.from_inequalities(
        [((0, 0, 1), 0), ((1, 0, -1), 1), ((-1, 0, -1), 1), ((0, 1, -1), 1), ((0, -1, -1), 1)]
    )
    assert not P.is_simple
    assert not is_delzant(P).accepted
    with pytest.raises(NotSimple):
        P.faces


def test_delzant_reports():
    r = is_delzant(gen_simplex(2, 2))
    assert r.accepted and all(abs(vc.normal_det) == 1 for vc in r.vertices)
    bad = Polytope.from_inequalities([((1, 0), 0), ((0, 1), 0), ((-2, -1), 2)])
    r = is_delzant(bad)
    assert not r.accepted
    dets = {vc.vertex: abs(vc.normal_det) for vc in r.vertices}
    assert dets[(1, 0)] == 2
    assert is_delzant(gen_cube(2)).accepted


def test_normal_and_edge_determinants_agree_in_the_plane():
    for P in (gen_simplex(2, 3), gen_hirzebruch(3, (7, 2)),
              Polytope.from_inequalities([((1, 0), 0), ((0, 1), 0), ((-2, -1), 2)]),
              Polytope.from_inequalities([((1, 0), 0), ((0, 1), 0), ((-3, -2), 6)])):
        for vc in is_delzant(P).vertices:
            assert abs(vc.normal_det) == abs(vc.edge_det)


def test_unimodular_iff_edge_basis_3d():
    P = Polytope.from_inequalities([((1, 0, 0), 0), ((0, 1, 0), 0), ((0, 0, 1), 0), ((-1, -1, -2), 2)])
    for vc in is_delzant(P).vertices:
        assert (abs(vc.normal_det) == 1) == (abs(vc.edge_det) == 1)
    assert not is_delzant(P).accepted


def test_lattice_points_examples():
    assert lattice_points(gen_simplex(1, 1)) == [(0,), (1,)]
    assert lattice_points(gen_simplex(2, F(1, 2))) == [(0, 0)]
    assert len(lattice_points(gen_simplex(2, 2))) == 6


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_ehrhart_count_of_dilated_simplex(n, k):
    pts = lattice_points(gen_simplex(n, k))
    brute = [x for x in itertools.product(range(k + 1), repeat=n) if sum(x) <= k]
    assert pts == sorted(brute)
    assert len(pts) == math.comb(n + k, n)


def test_face_interior_points_of_3_simplex():
    P = gen_simplex(2, 3)
    (interior,) = face_lattice(P)[2]
    assert face_interior_lattice_points(P, interior) == [(1, 1)]
    hyp = P.facet_face(2)
    assert face_interior_lattice_points(P, hyp) == [(1, 2), (2, 1)]
    for f in face_lattice(P)[0]:
        (v,) = P.face_vertices(f)
        assert face_interior_lattice_points(P, f) == [tuple(int(c) for c in v)]


def test_edge_generators():
    assert edge_generators_at_vertex(gen_simplex(2, 2), (2, 0)) == [(-1, 0), (-1, 1)]
    assert edge_generators_at_vertex(gen_cube(2), (0, 0)) == [(0, 1), (1, 0)]
    assert edge_generators_at_vertex(gen_simplex(1, 4), (4,)) == [(-1,)]
    bad = Polytope.from_inequalities([((1, 0), 0), ((0, 1), 0), ((-2, -1), 2)])
    with pytest.raises(NotDelzant):
        edge_generators_at_vertex(bad, (1, 0))


def test_squared_distance_to_face():
    P = gen_simplex(2, F(1, 2))
    hyp = P.facet_face(2)
    assert squared_distance_to_face(P, hyp, (0, 0)) == F(1, 8)
    (vtx,) = [f for f in face_lattice(P)[0] if P.face_vertices(f) == ((F(1, 2), 0),)]
    assert squared_distance_to_face(P, vtx, (0, 0)) == F(1, 4)
    # nearest point of a segment can be an endpoint
    Q = gen_cube(2)
    bottom = Q.facet_face(2)  # y >= 0
    assert squared_distance_to_face(Q, bottom, (3, 1)) == 5


# random simple polytopes: boxes, simplices and their products with random integer shifts
boxes = st.lists(st.integers(1, 3), min_size=1, max_size=3).map(gen_box)
simplices = st.tuples(st.integers(1, 3), st.integers(1, 3)).map(lambda t: gen_simplex(*t))
trapezoids = st.tuples(st.integers(0, 3), st.integers(1, 2)).map(lambda t: gen_hirzebruch(t[0], (t[0] * t[1] + 1, t[1])))
polytopes = st.one_of(boxes, simplices, trapezoids)


@settings(max_examples=40, deadline=None)
@given(polytopes, st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_partition_of_lattice_points_by_faces(P, shift):
    P = P.translated(shift[: P.dim])
    total = sum(len(face_interior_lattice_points(P, f)) for f in P.faces)
    assert total == len(P.lattice_points)
    assert list(P.lattice_points) == brute_lattice(P)


@settings(max_examples=40, deadline=None)
@given(polytopes)
def test_vertex_facet_duality(P):
    for tight in P.vertex_facets:
        assert len(tight) == P.dim
    for i in range(len(P.halfspaces)):
        on = [v for v in P.vertices if P.halfspaces[i].value(v) == 0]
        assert len(on) >= P.dim
