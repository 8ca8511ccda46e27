"""A tower of blow-ups of the quadrant chart along random monomial ideals."""
import argparse
import random
from dataclasses import dataclass

from gammafan import samples
from gammafan.blowup import build_tower, is_U_admissible
from gammafan.fileio import serialize_fan


@dataclass
class Config:
    seed: int = 0
    depth: int = 3
    show_top: bool = False


def run(cfg: Config) -> None:
    rng = random.Random(cfg.seed)
    chart = samples.quadrant_chart()
    ideals = [samples.random_ideal(rng, chart) for _ in range(cfg.depth)]
    tower = build_tower(chart, ideals, cfg.depth)
    walls = [f for f in chart.faces() if f.dim == 2]
    for k, (ideal, fan) in enumerate(tower.levels, 1):
        gens = ", ".join(f"({e})" for e in ideal.generators)
        kept = sum(is_U_admissible(ideal, [f]) for f in walls)
        print(f"level {k}: ideal {gens}; {len(fan.cones)} cones; {kept}/{len(walls)} walls of the chart untouched")
    if cfg.show_top:
        print(serialize_fan(tower.top), end="")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--show-top", action="store_true")
    a = p.parse_args()
    run(Config(a.seed, a.depth, a.show_top))
