"""The cone over the triangle Conv{(0,0),(lam,0),(0,lam)}: census, generators, saturation.

Also shows why x, y, a/x, a/y, ay/x, ax/y do not generate the algebra: the
functional x + y + gamma/lam is nonnegative on all six but equals -1 on a/(xy).
"""
import argparse
from dataclasses import dataclass
from fractions import Fraction

from gammafan.cones import reducedness_flag, slice, special_fiber_census
from gammafan.samples import triangle_chart
from gammafan.semigroups import (
    MonomialDatum,
    SemigroupGens,
    algebra_generators,
    is_saturated_bounded,
    saturation_membership,
)
from gammafan.valuegroup import ValueGroup


@dataclass
class Config:
    lam: Fraction = Fraction(1)
    bound: int = 6


def run(cfg: Config) -> None:
    lam = cfg.lam
    sigma = triangle_chart(lam)
    print(f"lambda = {lam}")
    print("level-1 vertices:", [tuple(str(x) for x in v) for v in slice(sigma, 1).vertices()])
    census = special_fiber_census(sigma)
    print(f"special fiber components: {len(census)}, reduced: {reducedness_flag(sigma)}")
    gens = algebra_generators(sigma)
    print("algebra generators:", ", ".join(f"({e})" for e in gens))
    print(f"saturated up to |u| <= {cfg.bound}:", is_saturated_bounded(gens, cfg.bound)[0])
    six = SemigroupGens(
        tuple(MonomialDatum(u, g) for u, g in [
            ((1, 0), 0), ((0, 1), 0), ((-1, 0), lam), ((0, -1), lam), ((-1, 1), lam), ((1, -1), lam),
        ]),
        2,
        ValueGroup.rationals(),
    )
    print("six-element set inside the saturation of the generators:",
          all(saturation_membership(gens, e) for e in six))
    for e in gens:
        if not saturation_membership(six, e):
            value = e.u[0] + e.u[1] + e.gamma / lam
            print(f"({e}) is outside the saturation of the six-element set; x + y + gamma/lam = {value}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--lam", type=Fraction, default=Fraction(1))
    p.add_argument("--bound", type=int, default=6)
    a = p.parse_args()
    run(Config(a.lam, a.bound))
