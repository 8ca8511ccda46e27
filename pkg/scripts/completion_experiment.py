"""How often each completion path succeeds on random fans, and how long it takes."""
import argparse
import random
import time
from collections import Counter
from dataclasses import dataclass

from gammafan import samples
from gammafan.errors import ExtensionFailure
from gammafan.fans import GammaFan, complete_extension, is_complete, support_is_convex, validate_fan


@dataclass
class Config:
    seed: int = 0
    trials: int = 100
    max_rank: int = 2


def make_fan(kind: str, rng: random.Random, n: int) -> GammaFan:
    if kind == "convex":
        return samples.random_convex_fan(rng, n)
    if kind == "single":
        return GammaFan.from_cones([samples.random_cone(rng, n, full=rng.random() < 0.5)], samples.QQ)
    return samples.random_subfan(rng, n)


def run(cfg: Config) -> None:
    rng = random.Random(cfg.seed)
    print(f"{'kind':8} {'n':>2} {'ok':>5} {'fail':>5} {'convex':>7} {'cones':>6} {'sec':>7}")
    for kind in ("convex", "single", "subfan"):
        for n in range(1, cfg.max_rank + 1):
            stats = Counter()
            t0 = time.perf_counter()
            for _ in range(cfg.trials):
                fan = make_fan(kind, rng, n)
                stats["convex"] += support_is_convex(fan)
                try:
                    out = complete_extension(fan)
                except ExtensionFailure:
                    stats["fail"] += 1
                    continue
                assert validate_fan(out)[0] and is_complete(out)
                stats["ok"] += 1
                stats["cones"] += len(out.cones)
            dt = time.perf_counter() - t0
            mean = stats["cones"] / max(stats["ok"], 1)
            print(f"{kind:8} {n:>2} {stats['ok']:>5} {stats['fail']:>5} {stats['convex']:>7} {mean:>6.1f} {dt:>7.2f}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--max-rank", type=int, default=2)
    a = p.parse_args()
    run(Config(a.seed, a.trials, a.max_rank))
