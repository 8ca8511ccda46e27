"""Hilbert bases, algebra generators and saturation."""
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gammafan import samples
from gammafan.cones import GammaCone
from gammafan.errors import DomainError, FiniteTypeError
from gammafan.polyhedra import HCone
from gammafan.semigroups import (
    MonomialDatum,
    SemigroupGens,
    algebra_generators,
    hilbert_basis,
    in_weight_algebra,
    is_saturated_bounded,
    saturation_membership,
    semigroup_generators,
)
from gammafan.valuegroup import ValueGroup
from oracles import brute_irreducibles

QQ = ValueGroup.rationals()
ZZ = ValueGroup.integers()


def gens(items, n=2, gamma=QQ):
    return SemigroupGens(tuple(MonomialDatum(u, Fraction(g)) for u, g in items), n, gamma)


def triangle(lam, gamma=QQ):
    return GammaCone(2, (((1, 0), 0), ((0, 1), 0), ((-1, -1), lam)), gamma)


# frozen values, each checked against the brute-force oracle below
HILBERT = {
    ((1, 0), (0, 1)): [(0, 1), (1, 0)],
    ((1, 0), (1, 2)): [(1, 0), (1, 1), (1, 2)],
    ((2, -1), (-1, 2)): [(-1, 2), (0, 1), (1, 0), (2, -1)],
    ((1, 0), (1, 3)): [(1, 0), (1, 1), (1, 2), (1, 3)],
    ((1, 0, 0), (0, 1, 0), (1, 1, 2)): [(0, 1, 0), (1, 0, 0), (1, 1, 1), (1, 1, 2)],
}


@pytest.mark.parametrize("rays, expected", list(HILBERT.items()))
def test_hilbert_frozen(rays, expected):
    d = len(rays[0])
    assert hilbert_basis(HCone.from_generators(rays, dim=d)) == expected
    assert set(expected) == brute_irreducibles(rays, d)


def test_hilbert_non_pointed():
    with pytest.raises(DomainError):
        hilbert_basis(HCone([(0, 1)], 2))


def test_semigroup_with_lineality():
    half = HCone([(0, 1)], 2)
    assert semigroup_generators(half) == [(-1, 0), (0, 1), (1, 0)]
    line = HCone([(1, 1), (-1, -1)], 2)
    assert sorted(semigroup_generators(line)) == [(-1, 1), (1, -1)]


@pytest.mark.parametrize("lam", [Fraction(1), Fraction(2), Fraction(1, 2)])
def test_triangle_algebra_generators(lam):
    got = algebra_generators(triangle(lam))
    expected = gens([((1, 0), 0), ((0, 1), 0), ((-1, -1), lam)])
    assert got == expected
    assert str(got.elements[0]) == "-1 -1 | " + (str(lam.numerator) if lam.denominator == 1 else f"{lam.numerator}/{lam.denominator}")


def test_six_monomials_miss_xyz_relation():
    lam = Fraction(1)
    three = gens([((1, 0), 0), ((0, 1), 0), ((-1, -1), lam)])
    six = gens([((1, 0), 0), ((0, 1), 0), ((-1, 0), lam), ((0, -1), lam), ((-1, 1), lam), ((1, -1), lam)])
    assert all(saturation_membership(three, e) for e in six)
    # x + y + gamma / lam separates a x^-1 y^-1 from the six
    target = MonomialDatum((-1, -1), lam)
    assert not saturation_membership(six, target)
    for e in six:
        assert e.u[0] + e.u[1] + e.gamma / lam >= 0


def test_generators_are_functions():
    c = triangle(Fraction(2))
    for e in algebra_generators(c):
        assert in_weight_algebra(c, e)
    assert not in_weight_algebra(c, MonomialDatum((-1, 0), Fraction(1)))


def test_t_axis_chart():
    ray = GammaCone.from_rays([(0, 1)], QQ, n=1)
    assert algebra_generators(ray) == gens([((-1,), 0), ((1,), 0)], n=1)


def test_finite_type_needed():
    c = GammaCone(1, (((2,), -1), ((-1,), 1)), ZZ)
    with pytest.raises(FiniteTypeError):
        algebra_generators(c)


def test_saturated_triangle():
    assert is_saturated_bounded(algebra_generators(triangle(Fraction(2), ZZ)), 6) == (True, None)


def test_unsaturated_witness():
    s = gens([((2,), 0), ((3,), 0)], n=1)
    ok, witness = is_saturated_bounded(s, 6)
    assert not ok and witness == MonomialDatum((1,), Fraction(0))


def test_saturation_needs_gamma():
    s = gens([((1,), 1)], n=1, gamma=ZZ)
    assert not saturation_membership(s, MonomialDatum((1,), Fraction(1, 2)))
    assert saturation_membership(s, MonomialDatum((2,), Fraction(2)))
    # the saturation is cone(S) itself; constants are not added
    assert not saturation_membership(s, MonomialDatum((2,), Fraction(3)))


def test_sorted_unique():
    s = gens([((1, 0), 0), ((0, 1), 0), ((1, 0), 0)])
    assert len(s) == 2 and list(s) == sorted(s)


@settings(max_examples=25)
@given(st.integers(0, 10**6), st.sampled_from([2, 3]))
def test_hilbert_matches_brute_force(seed, d):
    cone = samples.random_pointed_cone(random.Random(seed), d)
    hb = hilbert_basis(cone)
    box = {h for h in hb if max(map(abs, h)) <= 6}
    assert box == brute_irreducibles(cone.rays, d)
    assert all(cone.contains(h) for h in hb)


@settings(max_examples=20)
@given(st.integers(0, 10**6), st.integers(1, 2))
def test_algebra_generators_saturated(seed, n):
    cone = samples.random_cone(random.Random(seed), n)
    g = algebra_generators(cone)
    assert all(in_weight_algebra(cone, e) for e in g)
    assert is_saturated_bounded(g, 4)[0]


@settings(max_examples=20)
@given(
    st.lists(st.tuples(st.integers(-3, 3), st.integers(0, 4)), min_size=1, max_size=4),
    st.tuples(st.integers(-3, 3), st.integers(0, 4)),
)
def test_saturation_monotone(items, extra):
    small = gens([((u,), g) for u, g in items], n=1)
    big = gens([((u,), g) for u, g in items + [extra]], n=1)
    for u in range(-4, 5):
        for g in range(0, 6):
            e = MonomialDatum((u,), Fraction(g))
            if saturation_membership(small, e):
                assert saturation_membership(big, e)
