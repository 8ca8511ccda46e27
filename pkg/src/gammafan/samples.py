"""Seeded random instances used by the experiment scripts and the test suites.

Every generator takes a ``random.Random`` so runs are reproducible.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .blowup import InvariantIdeal
from .cones import GammaCone, is_admissible
from .errors import DomainError
from .fans import GammaFan, _split, is_complete, refine_to_complete
from .polyhedra import HCone
from .projective import WeightedConfig, weight_polytope
from .semigroups import MonomialDatum, SemigroupGens, in_weight_algebra
from .valuegroup import ValueGroup


@dataclass(frozen=True)
class SampleConfig:
    """Ranges for the random generators."""

    coord: int = 3
    height_num: int = 6
    height_den: int = 3
    max_tries: int = 200


DEFAULT = SampleConfig()
QQ = ValueGroup.rationals()


def random_fraction(rng: random.Random, cfg: SampleConfig = DEFAULT) -> Fraction:
    return Fraction(rng.randint(-cfg.height_num, cfg.height_num), rng.randint(1, cfg.height_den))


def random_ray(rng: random.Random, n: int, cfg: SampleConfig = DEFAULT) -> tuple:
    while True:
        v = tuple(rng.randint(-cfg.coord, cfg.coord) for _ in range(n)) + (rng.randint(0, cfg.coord),)
        if any(v):
            return v


def random_cone(rng: random.Random, n: int, full: bool = True, gamma: ValueGroup = QQ,
                cfg: SampleConfig = DEFAULT) -> GammaCone:
    """An admissible cone spanned by a few random rays in ``t >= 0``."""
    for _ in range(cfg.max_tries):
        k = rng.randint(n + 1 if full else 1, n + 3)
        cone = GammaCone.from_rays([random_ray(rng, n, cfg) for _ in range(k)], gamma, n=n)
        if not is_admissible(cone)[0]:
            continue
        if full and cone.dim != n + 1:
            continue
        return cone
    raise DomainError("could not sample an admissible cone")


def random_hyperplane(rng: random.Random, n: int, cfg: SampleConfig = DEFAULT) -> tuple:
    while True:
        m = tuple(rng.randint(-cfg.coord, cfg.coord) for _ in range(n))
        if any(m):
            return m, Fraction(rng.randint(-cfg.coord, cfg.coord))


def random_convex_fan(rng: random.Random, n: int, cuts: Optional[int] = None,
                      cfg: SampleConfig = DEFAULT) -> GammaFan:
    """A random full-dimensional cone cut into pieces by random hyperplanes."""
    cone = random_cone(rng, n, True, cfg=cfg)
    cuts = rng.randint(0, 2) if cuts is None else cuts
    cells = _split([cone], [random_hyperplane(rng, n, cfg) for _ in range(cuts)])
    return GammaFan.from_cones(cells, QQ)


def random_complete_fan(rng: random.Random, n: int, cfg: SampleConfig = DEFAULT) -> GammaFan:
    """Either the chamber fan of a random fan or the fan of a random configuration."""
    if rng.random() < 0.5:
        return refine_to_complete(random_convex_fan(rng, n, cfg=cfg))
    from .projective import generated_fan

    return generated_fan(random_config(rng, n, rng.randint(n + 1, 5), cfg))


def random_incomplete_fan(rng: random.Random, n: int, cfg: SampleConfig = DEFAULT) -> GammaFan:
    """A complete fan with one maximal cone removed."""
    for _ in range(cfg.max_tries):
        fan = random_complete_fan(rng, n, cfg)
        if len(fan.cones) < 2:
            continue
        drop = rng.randrange(len(fan.cones))
        return GammaFan.from_cones([c for i, c in enumerate(fan.cones) if i != drop], fan.gamma)
    raise DomainError("could not sample an incomplete fan")


def random_subfan(rng: random.Random, n: int, cfg: SampleConfig = DEFAULT) -> GammaFan:
    """A random nonempty proper set of chambers of a complete fan; often non-convex."""
    for _ in range(cfg.max_tries):
        fan = random_complete_fan(rng, n, cfg)
        if len(fan.cones) < 3:
            continue
        k = rng.randint(1, len(fan.cones) - 1)
        keep = rng.sample(range(len(fan.cones)), k)
        return GammaFan.from_cones([fan.cones[i] for i in sorted(keep)], fan.gamma)
    raise DomainError("could not sample a subfan")


def random_config(rng: random.Random, n: int, N: int, cfg: SampleConfig = DEFAULT,
                  with_inf: bool = True) -> WeightedConfig:
    """N+1 exponents in ``[0, coord]^n`` with rational heights; Wt(y) is full-dimensional."""
    import math

    for _ in range(cfg.max_tries):
        A = [tuple(rng.randint(0, cfg.coord) for _ in range(n)) for _ in range(N + 1)]
        a = [random_fraction(rng, cfg) for _ in range(N + 1)]
        if with_inf and N > n + 1 and rng.random() < 0.3:
            a[rng.randrange(N + 1)] = math.inf
        try:
            c = WeightedConfig(tuple(A), tuple(a), QQ)
        except DomainError:
            continue
        if weight_polytope(c).dim == n:
            return c
    raise DomainError("could not sample a full-dimensional configuration")


def quadrant_chart(gamma: ValueGroup = QQ) -> GammaCone:
    """``w_1 >= 0, w_2 >= 0`` in rank 2."""
    return GammaCone(2, (((1, 0), 0), ((0, 1), 0)), gamma)


def triangle_chart(lam=1, gamma: ValueGroup = QQ) -> GammaCone:
    """The cone over the triangle with vertices (0,0), (lam,0), (0,lam)."""
    lam = Fraction(lam)
    return GammaCone(2, (((1, 0), 0), ((0, 1), 0), ((-1, -1), lam)), gamma)


def random_ideal(rng: random.Random, chart: GammaCone, k: Optional[int] = None,
                 cfg: SampleConfig = DEFAULT) -> InvariantIdeal:
    """An ideal with a few random monomials that are functions on the chart."""
    k = rng.randint(1, 3) if k is None else k
    gens = []
    while len(gens) < k:
        u = tuple(rng.randint(-2, cfg.coord) for _ in range(chart.n))
        e = MonomialDatum(u, Fraction(rng.randint(0, 2 * cfg.coord), rng.randint(1, 2)))
        if in_weight_algebra(chart, e):
            gens.append(e)
    return InvariantIdeal(chart, SemigroupGens(tuple(gens), chart.n, chart.gamma))


def random_pointed_cone(rng: random.Random, d: int, cfg: SampleConfig = DEFAULT) -> HCone:
    """A full-dimensional pointed cone in ``R^d`` spanned by random integer rays."""
    for _ in range(cfg.max_tries):
        k = rng.randint(d, d + 2)
        rays = [tuple(rng.randint(-cfg.coord, cfg.coord) for _ in range(d)) for _ in range(k)]
        if not all(any(r) for r in rays):
            continue
        cone = HCone.from_generators(rays, dim=d)
        if cone.is_pointed and cone.dim == d:
            return cone
    raise DomainError("could not sample a pointed cone")
