"""Blow-ups of charts along invariant monomial ideals."""
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gammafan import samples
from gammafan.blowup import (
    InvariantIdeal,
    blowup_subdivision,
    build_tower,
    common_refinement,
    is_U_admissible,
    order_function,
    product_ideal,
    refines,
)
from gammafan.cones import GammaCone
from gammafan.errors import DomainError
from gammafan.fans import GammaFan, validate_fan
from gammafan.semigroups import MonomialDatum, SemigroupGens
from gammafan.valuegroup import ValueGroup
from oracles import covered

QQ = ValueGroup.rationals()


def ideal(chart, items):
    return InvariantIdeal(chart, SemigroupGens(tuple(MonomialDatum(u, Fraction(g)) for u, g in items), chart.n, QQ))


def test_quadrant_xy():
    chart = samples.quadrant_chart()
    I = ideal(chart, [((1, 0), 0), ((0, 1), 0)])
    sub = blowup_subdivision(I)
    assert len(sub.cones) == 2
    assert sorted(sub.tags) == ["active 0", "active 1"]
    assert validate_fan(sub)[0]
    assert order_function(I) == [(0, 1, 0), (1, 0, 0)]


def test_u_admissible_faces():
    chart = samples.quadrant_chart()
    I = ideal(chart, [((1, 0), 0), ((0, 1), 0)])
    rays = [f for f in chart.faces() if f.dim == 1]
    # the order function min(w1, w2) is linear on each ray and on the t-axis face
    assert all(is_U_admissible(I, [r]) for r in rays)
    assert not is_U_admissible(I, [chart])


def test_u_admissible_needs_faces():
    chart = samples.quadrant_chart()
    I = ideal(chart, [((1, 0), 0)])
    other = GammaCone(2, (((1, 0), 0), ((0, 1), 1)), QQ)
    with pytest.raises(DomainError):
        is_U_admissible(I, [other])


def test_triangle_x_and_constant_does_not_split():
    # on the triangle chart w1 <= lam t, so min(w1, lam t) = w1 everywhere
    chart = samples.triangle_chart(2)
    I = ideal(chart, [((1, 0), 0), ((0, 0), 2)])
    assert len(blowup_subdivision(I).cones) == 1


def test_triangle_xy_splits():
    chart = samples.triangle_chart(2)
    sub = blowup_subdivision(ideal(chart, [((1, 0), 0), ((0, 1), 0)]))
    assert len(sub.cones) == 2


def test_generator_must_be_function():
    chart = samples.quadrant_chart()
    with pytest.raises(DomainError):
        ideal(chart, [((-1, 0), 0)])


def test_product_and_tower():
    chart = samples.quadrant_chart()
    I = ideal(chart, [((1, 0), 0), ((0, 1), 0)])
    J = ideal(chart, [((2, 0), 0), ((0, 1), 1)])
    prod = blowup_subdivision(product_ideal(I, J))
    assert prod == common_refinement(blowup_subdivision(I), blowup_subdivision(J))
    tower = build_tower(chart, [I, J], 2)
    assert tower.top == prod
    assert refines(tower.levels[1][1], tower.levels[0][1])
    assert build_tower(chart, [I, J], 0).top == GammaFan.from_cones([chart], QQ)


def test_product_needs_same_chart():
    I = ideal(samples.quadrant_chart(), [((1, 0), 0)])
    J = ideal(samples.triangle_chart(1), [((1, 0), 0)])
    with pytest.raises(DomainError):
        product_ideal(I, J)


instances = st.builds(
    lambda seed, which: (random.Random(seed), samples.quadrant_chart() if which else samples.triangle_chart(random.Random(seed).choice([1, 2, Fraction(1, 2)]))),
    st.integers(0, 10**6),
    st.booleans(),
)


@settings(max_examples=30)
@given(instances)
def test_product_law(inst):
    rng, chart = inst
    I, J = samples.random_ideal(rng, chart), samples.random_ideal(rng, chart)
    assert blowup_subdivision(product_ideal(I, J)) == common_refinement(blowup_subdivision(I), blowup_subdivision(J))


@settings(max_examples=30)
@given(instances)
def test_admissible_faces_stay(inst):
    rng, chart = inst
    I = samples.random_ideal(rng, chart)
    sub = blowup_subdivision(I)
    for tau in chart.faces():
        if tau.dim and is_U_admissible(I, [tau]):
            assert sub.has_cone(tau)


@settings(max_examples=20)
@given(instances)
def test_tower_monotone(inst):
    rng, chart = inst
    ideals = [samples.random_ideal(rng, chart) for _ in range(3)]
    tower = build_tower(chart, ideals, 3)
    fans = [tower.base] + [f for _, f in tower.levels]
    pts = [tuple(Fraction(rng.randint(0, 20), rng.randint(1, 3)) for _ in range(3)) for _ in range(100)]
    pts = [p for p in pts if chart.contains(p)]
    for coarse, fine in zip(fans, fans[1:]):
        assert refines(fine, coarse)
        assert validate_fan(fine)[0]
        assert covered(fine, pts)
