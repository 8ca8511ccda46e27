"""Weighted configurations, regular subdivisions, dual complexes and their fans."""
import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import linprog

from gammafan import samples
from gammafan.errors import DomainError, NonPointedCellError, NotAFaceError
from gammafan.fans import is_complete, validate_fan
from gammafan.fileio import parse_config
from gammafan.projective import (
    WeightedConfig,
    cone_to_face,
    dual_complex,
    face_to_cone,
    generated_fan,
    normalization_fan,
    orbit_census,
    regular_subdivision,
    weight_polytope,
)
from gammafan.valuegroup import ValueGroup

QQ = ValueGroup.rationals()


def cfg(A, a):
    return WeightedConfig(tuple(A), tuple(Fraction(x) if x != math.inf else x for x in a), QQ)


def test_p1(fixtures_dir):
    c = parse_config((fixtures_dir / "p1.config").read_text())
    sub = regular_subdivision(c)
    assert [(x.dim, sorted(x.indices)) for x in sub.cells] == [(0, [0]), (0, [1]), (1, [0, 1])]
    dc = dual_complex(c)
    assert [x.dim for x in dc.cells] == [0, 1, 1]
    assert generated_fan(c) == normalization_fan(c)
    census = orbit_census(c)
    assert (len(census.generic), len(census.special), len(census.components)) == (3, 3, 1)


def test_p1_with_lambda():
    c = cfg([(0,), (1,)], [0, 3])
    fan = normalization_fan(c)
    assert fan == generated_fan(c)
    assert len(fan.cones) == 2 and is_complete(fan)
    # the cones meet along w = -3 t
    assert {r for cone in fan.cones for r in cone.rays} == {(-1, 0), (-3, 1), (1, 0)}


def test_square(fixtures_dir):
    c = parse_config((fixtures_dir / "square.config").read_text())
    sub = regular_subdivision(c)
    assert sorted(sorted(x.indices) for x in sub.maximal_cells) == [[0, 1, 2], [1, 2, 3]]
    fan = normalization_fan(c)
    assert fan == generated_fan(c)
    assert len(fan.cones) == 4 and is_complete(fan) and validate_fan(fan)[0]
    census = orbit_census(c)
    assert (len(census.generic), len(census.special), len(census.components)) == (9, 11, 2)
    report = census.report()
    assert report.startswith("generic orbits: 9")


def test_interior_point_drops_when_lifted():
    A = [(0, 0), (3, 0), (0, 3), (1, 1)]
    high = cfg(A, [0, 0, 0, 5])
    assert all(3 not in x.indices for x in regular_subdivision(high).cells)
    assert len(normalization_fan(high).cones) == 3
    low = cfg(A, [0, 0, 0, -5])
    assert len(regular_subdivision(low).maximal_cells) == 3
    assert len(normalization_fan(low).cones) == 4


def test_infinite_heights():
    c = cfg([(0, 0), (1, 0), (0, 1), (1, 1)], [0, 0, 0, math.inf])
    assert c.finite == (0, 1, 2)
    assert weight_polytope(c).dim == 2
    assert len(generated_fan(c).cones) == 3


def test_shadowed():
    c = cfg([(0,), (1,), (1,)], [0, 0, 2])
    assert c.shadowed == (2,)
    assert normalization_fan(c) == generated_fan(c)


def test_not_full_dimensional():
    with pytest.raises(NonPointedCellError):
        normalization_fan(cfg([(0, 0), (1, 1)], [0, 0]))
    with pytest.raises(NonPointedCellError):
        generated_fan(cfg([(0, 0), (1, 1)], [0, 0]))


def test_bad_configs():
    with pytest.raises(DomainError):
        cfg([(0,), (1,)], [math.inf, math.inf])
    with pytest.raises(DomainError):
        WeightedConfig(((0,), (1,)), (Fraction(1, 2), 0), ValueGroup.integers())


def test_not_a_face():
    c = cfg([(0,), (1,), (2,)], [0, 0, 0])
    with pytest.raises(NotAFaceError):
        face_to_cone(c, {0, 2})


def test_g_and_active():
    c = cfg([(0,), (1,), (2,)], [0, 1, 0])
    assert c.g((Fraction(-1),)) == -2
    assert c.active((0,)) == frozenset({0, 2})


def _lp_vertices(c):
    """Indices whose lifted point is not above the hull of the other lifted points."""
    out = set()
    idx = list(c.finite)
    for i in idx:
        others = [j for j in idx if j != i]
        if not others:
            out.add(i)
            continue
        k = len(others)
        A_eq = np.array([[float(c.A[j][r]) for j in others] for r in range(c.n)] + [[1.0] * k])
        b_eq = np.array([float(x) for x in c.A[i]] + [1.0])
        A_ub = np.array([[float(c.a[j]) for j in others]])
        b_ub = np.array([float(c.a[i]) - 1e-9])
        res = linprog(np.zeros(k), A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=b_eq, bounds=[(0, None)] * k, method="highs")
        if res.status != 0:
            out.add(i)
    return out


configs = st.builds(
    lambda seed, n: samples.random_config(random.Random(seed), n, random.Random(seed).randint(n + 1, 5), with_inf=False),
    st.integers(0, 10**6),
    st.integers(1, 2),
)


@settings(max_examples=30)
@given(configs)
def test_vertex_cells_match_lp(c):
    if len(set(c.A)) != len(c.A):
        return
    got = {next(iter(x.indices)) for x in regular_subdivision(c).vertex_cells}
    assert got == _lp_vertices(c)


@settings(max_examples=30)
@given(configs)
def test_generated_equals_normalization(c):
    g = generated_fan(c)
    assert g == normalization_fan(c)
    assert validate_fan(g)[0] and is_complete(g)


@settings(max_examples=30)
@given(configs)
def test_duality(c):
    sub = regular_subdivision(c)
    for q in sub.cells:
        s = face_to_cone(c, q)
        assert q.dim + s.dim == c.n
        assert cone_to_face(c, s).indices == q.indices
    for s in dual_complex(c).cells:
        assert face_to_cone(c, cone_to_face(c, s)).body == s.body


@settings(max_examples=30)
@given(configs)
def test_subdivision_covers_weight_polytope(c):
    # maximal cells have full dimension and their volumes add up
    sub = regular_subdivision(c)
    assert all(x.dim == c.n for x in sub.maximal_cells)
    if c.n == 1:
        total = sum(max(v[0] for v in x.vertices) - min(v[0] for v in x.vertices) for x in sub.maximal_cells)
        verts = weight_polytope(c).vertices()
        assert total == max(v[0] for v in verts) - min(v[0] for v in verts)
