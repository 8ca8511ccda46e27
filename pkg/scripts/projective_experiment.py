"""Normalization fans of random weighted configurations against the generated fans."""
import argparse
import random
import time
from dataclasses import dataclass

from gammafan import samples
from gammafan.fans import is_complete, validate_fan
from gammafan.projective import generated_fan, normalization_fan, orbit_census


@dataclass
class Config:
    seed: int = 0
    trials: int = 200
    max_points: int = 5


def run(cfg: Config) -> None:
    rng = random.Random(cfg.seed)
    agree = cones = special = 0
    t0 = time.perf_counter()
    for _ in range(cfg.trials):
        n = rng.randint(1, 2)
        c = samples.random_config(rng, n, rng.randint(n + 1, cfg.max_points))
        g = generated_fan(c)
        ok = g == normalization_fan(c) and validate_fan(g)[0] and is_complete(g)
        agree += ok
        cones += len(g.cones)
        special += len(orbit_census(c).special)
    dt = time.perf_counter() - t0
    print(f"configurations: {cfg.trials}")
    print(f"normalization fan = generated fan, valid and complete: {agree}")
    print(f"mean maximal cones: {cones / cfg.trials:.2f}")
    print(f"mean special orbits: {special / cfg.trials:.2f}")
    print(f"seconds: {dt:.2f}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--max-points", type=int, default=5)
    a = p.parse_args()
    run(Config(a.seed, a.trials, a.max_points))
