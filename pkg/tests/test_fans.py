"""Fan validation, completeness, refinement and completion."""
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gammafan import samples
from gammafan.cones import GammaCone
from gammafan.errors import AdmissibilityError, ExtensionFailure, FanValidationError
from gammafan.fans import (
    GammaFan,
    complete_extension,
    fan_violations,
    is_complete,
    refine_to_complete,
    support_is_convex,
    validate_fan,
)
from gammafan.fileio import parse_fan
from gammafan.valuegroup import ValueGroup
from oracles import coverage_points, covered

QQ = ValueGroup.rationals()
ZZ = ValueGroup.integers()


def load(fixtures_dir, name):
    return parse_fan((fixtures_dir / name).read_text())


def test_rank_one_complete(fixtures_dir):
    fan = load(fixtures_dir, "complete_rank1.fan")
    assert validate_fan(fan) == (True, None)
    assert is_complete(fan)
    # rays (1,0), (1,1), (0,1), (-1,1), (-1,0) plus {0} and four 2-cones
    assert len(fan.all_cones()) == 10


def test_rank_one_missing_cone(fixtures_dir):
    fan = load(fixtures_dir, "complete_rank1.fan")
    smaller = GammaFan.from_cones(fan.cones[1:], fan.gamma)
    assert not is_complete(smaller)
    done = complete_extension(smaller)
    assert is_complete(done)
    assert all(done.has_cone(c) for c in smaller.cones)


def test_triangle_faces_and_chambers(fixtures_dir):
    fan = load(fixtures_dir, "triangle.fan")
    assert len(fan.all_cones()) == 8
    assert not is_complete(fan)
    chambers = refine_to_complete(fan)
    assert len(chambers.cones) == 7
    assert is_complete(chambers)
    assert set(chambers.tags) == {"chamber"}


def test_triangle_star_completion(fixtures_dir):
    fan = load(fixtures_dir, "triangle.fan")
    assert support_is_convex(fan)
    done = complete_extension(fan)
    assert len(done.cones) == 4
    assert done.has_cone(fan.cones[0])
    assert validate_fan(done)[0] and is_complete(done)


def test_overlap_detected():
    a = GammaCone(1, (((1,), 0),), QQ)  # w >= 0
    b = GammaCone(1, (((1,), 1),), QQ)  # w >= -t
    fan = GammaFan(1, QQ, (a, b))
    ok, v = validate_fan(fan)
    assert not ok and (v.i, v.j) == (0, 1)
    assert len(fan_violations(fan)) == 1
    with pytest.raises(FanValidationError):
        complete_extension(fan)


def test_non_admissible_rejected():
    with pytest.raises(AdmissibilityError):
        GammaFan(1, QQ, (GammaCone(1, (), QQ),))


def test_from_cones_drops_faces_and_duplicates():
    c = GammaCone(1, (((1,), 0), ((-1,), 1)), QQ)
    face = c.faces()[1]
    fan = GammaFan.from_cones([c, face, c], QQ)
    assert len(fan.cones) == 1


def test_equality_is_canonical():
    a = GammaCone(1, (((1,), 0), ((-1,), 1)), QQ)
    b = GammaCone(1, (((-1,), 1), ((2,), 0), ((1,), 5)), QQ)
    assert GammaFan.from_cones([a], QQ) == GammaFan.from_cones([b], QQ)


def test_ray_is_thickened():
    ray = GammaCone.from_rays([(1, 2, 1)], QQ, n=2)
    done = complete_extension(GammaFan.from_cones([ray], QQ))
    assert "thickened" in done.tags
    assert done.has_cone(ray) and is_complete(done)


def test_boundary_ray_is_thickened():
    ray = GammaCone.from_rays([(1, 0, 0)], QQ, n=2)
    done = complete_extension(GammaFan.from_cones([ray], QQ))
    assert done.has_cone(ray) and is_complete(done)


def test_general_path_success():
    a = GammaCone(2, (((1, 0), 0), ((0, 1), 0)), QQ)
    b = GammaCone(2, (((-1, 0), 0), ((0, -1), 0)), QQ)
    fan = GammaFan.from_cones([a, b], QQ)
    assert not support_is_convex(fan)
    done = complete_extension(fan)
    assert validate_fan(done)[0] and is_complete(done)
    assert done.has_cone(a) and done.has_cone(b)


def test_general_path_failure_is_certified(fixtures_dir):
    fan = load(fixtures_dir, "two_cones_nonconvex.fan")
    with pytest.raises(ExtensionFailure) as info:
        complete_extension(fan)
    assert info.value.conflicts
    for i, j in info.value.conflicts:
        assert j is None or i != j


def test_complete_is_idempotent(fixtures_dir):
    fan = load(fixtures_dir, "complete_rank1.fan")
    assert complete_extension(fan) is fan


def test_integer_gamma_star():
    fan = GammaFan.from_cones([GammaCone(1, (((1,), -1),), ZZ)], ZZ)
    done = complete_extension(fan)
    assert is_complete(done)
    assert all(c.denominator == 1 for cone in done.cones for _, c in cone.inequalities)


seeds = st.integers(0, 10**6)


@settings(max_examples=25)
@given(seeds, st.integers(1, 2))
def test_refinement_is_complete_fan(seed, n):
    fan = samples.random_convex_fan(random.Random(seed), n)
    ref = refine_to_complete(fan)
    assert validate_fan(ref)[0]
    assert is_complete(ref)
    # every input cone is a union of chambers: each chamber lies inside or meets it in a face
    for c in fan.cones:
        for ch in ref.cones:
            inter = c.intersect(ch)
            assert c.contains_cone(ch) or inter.dim < n + 1


@settings(max_examples=25)
@given(seeds, st.integers(1, 2))
def test_is_complete_matches_coverage(seed, n):
    rng = random.Random(seed)
    fan = samples.random_complete_fan(rng, n) if seed % 2 else samples.random_incomplete_fan(rng, n)
    assert is_complete(fan) == covered(fan, coverage_points(rng, n, 300))


@settings(max_examples=20)
@given(seeds, st.integers(1, 2))
def test_completion_contains_input(seed, n):
    fan = samples.random_convex_fan(random.Random(seed), n)
    done = complete_extension(fan)
    assert validate_fan(done)[0] and is_complete(done)
    assert all(done.has_cone(c) for c in fan.cones)
    assert covered(done, coverage_points(random.Random(seed), n, 200))


@settings(max_examples=20)
@given(seeds)
def test_face_closure_is_closed(seed):
    fan = samples.random_convex_fan(random.Random(seed), 2)
    cones = fan.all_cones()
    keys = {c.key for c in cones}
    for c in cones:
        assert all(f.key in keys for f in c.faces())
