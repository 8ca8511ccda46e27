"""Double description, faces, duality and polyhedra."""
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st
from scipy.spatial import ConvexHull

from gammafan.errors import DomainError, OutsideError
from gammafan.polyhedra import HCone, HPolyhedron, dot, normalize, rank, rref

vec3 = st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)).filter(any)
ray_sets = st.lists(vec3, min_size=1, max_size=6)


def test_quadrant():
    q = HCone([(1, 0), (0, 1)])
    assert set(q.rays) == {(1, 0), (0, 1)}
    assert q.is_pointed and q.is_full_dimensional and q.dim == 2


def test_half_plane_lineality():
    h = HCone([(0, 1)], 2)
    assert h.rays == ((0, 1),)
    assert len(h.lineality) == 1 and not h.is_pointed


def test_normalize():
    assert normalize((Fraction(2, 3), Fraction(-4, 3))) == (1, -2)
    assert normalize((0, 0)) == (0, 0)


def test_rref_and_rank():
    R, piv = rref([(1, 2, 3), (2, 4, 6), (0, 1, 1)], 3)
    assert piv == [0, 1] and rank([(1, 2, 3), (2, 4, 6)], 3) == 1
    assert R[0] == [1, 0, 1]


def test_faces_of_square_pyramid():
    cone = HCone.from_generators([(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)])
    faces = cone.faces()
    by_dim = {}
    for f in faces:
        by_dim[f.dim] = by_dim.get(f.dim, 0) + 1
    assert by_dim == {0: 1, 1: 4, 2: 4, 3: 1}
    assert len(cone.facet_ray_sets()) == 4


def test_face_generated_by():
    cone = HCone([(1, 0), (0, 1)])
    f = cone.face_generated_by((3, 0))
    assert f.rays == ((1, 0),)
    assert f.is_face_of(cone)
    with pytest.raises(OutsideError):
        cone.face_generated_by((-1, 0))


def test_dual_of_simplicial():
    cone = HCone.from_generators([(1, 0), (1, 2)])
    assert set(cone.dual().rays) == {(0, 1), (2, -1)}


def test_zero_cone_needs_dimension():
    with pytest.raises(DomainError):
        HCone.from_generators([])
    z = HCone.from_generators([], dim=2)
    assert z.dim == 0


def test_triangle_polytope():
    p = HPolyhedron.from_generators([(0, 0), (2, 0), (0, 2)])
    assert sorted(p.vertices()) == [(0, 0), (0, 2), (2, 0)]
    assert p.is_bounded and p.dim == 2
    assert p.contains((Fraction(1, 2), Fraction(1, 2)))
    assert not p.contains((2, 1))
    lc = p.local_cone((0, 0))
    assert set(lc.rays) == {(1, 0), (0, 1)}


def test_unbounded_polyhedron():
    p = HPolyhedron([((1, 0), 0), ((0, 1), -1), ((1, 1), -3)], 2)
    assert sorted(p.vertices()) == [(0, 3), (2, 1)]
    assert set(p.recession_cone().rays) == {(1, 0), (0, 1)}
    bounded = p.faces(bounded_only=True)
    assert sorted(f.dim for f in bounded) == [0, 0, 1]


def test_empty_polyhedron():
    p = HPolyhedron([((1,), -1), ((-1,), 0)], 1)
    assert p.is_empty


@given(ray_sets)
def test_h_to_v_to_h(rays):
    cone = HCone.from_generators(rays, dim=3)
    again = HCone.from_generators(cone.rays, cone.lineality, dim=3)
    assert again == cone
    for r in rays:
        assert cone.contains(r)
    for a in cone.inequalities:
        assert all(dot(a, r) >= 0 for r in rays)


@given(ray_sets)
def test_dual_dual(rays):
    cone = HCone.from_generators(rays, dim=3)
    assert cone.dual().dual() == cone
    assert cone.dual().dim + len(cone.lineality) == 3


@given(ray_sets)
def test_faces_are_faces(rays):
    cone = HCone.from_generators(rays, dim=3)
    faces = cone.faces()
    assert len({f.key for f in faces}) == len(faces)
    for f in faces:
        assert f.is_face_of(cone)
        assert cone.contains(f.relint_point())


@given(ray_sets)
def test_relint_point(rays):
    cone = HCone.from_generators(rays, dim=3)
    p = cone.relint_point()
    assert cone.face_generated_by(p) == cone


@given(st.lists(st.tuples(st.integers(-6, 6), st.integers(-6, 6)), min_size=3, max_size=9, unique=True))
def test_vertices_match_convex_hull(points):
    arr = np.array(points, dtype=float)
    assume(np.linalg.matrix_rank(arr[1:] - arr[0]) == 2)
    hull = ConvexHull(arr)
    expected = {points[i] for i in hull.vertices}
    got = {tuple(int(x) for x in v) for v in HPolyhedron.from_generators(points).vertices()}
    assert got == expected
