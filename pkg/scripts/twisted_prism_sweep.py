"""Run the twisted-prism grid construction over random permutations and tabulate it per ell.

    python scripts/twisted_prism_sweep.py --ells 75 80 90 120 --per-ell 50 --seed 1
"""

import argparse
import statistics
import time
from collections import Counter
from dataclasses import dataclass, field

from minorlab.constructions.twisted import twisted_prism_grid_construction
from minorlab.graph import TwistedPrismSpec
from minorlab.rng import named_rng


@dataclass
class SweepConfig:
    ells: list[int] = field(default_factory=lambda: [75, 76, 80, 90])
    per_ell: int = 40
    seed: int = 0


def sweep(cfg: SweepConfig) -> None:
    print(f"{'ell':>5} {'runs':>5} {'case1':>6} {'case2':>6} {'fallback':>8} {'median ms':>10} {'max ms':>8}")
    for ell in cfg.ells:
        cases = Counter()
        fallback = 0
        times = []
        for i in range(cfg.per_ell):
            rng = named_rng(cfg.seed, "sweep", ell, i)
            pi = list(range(1, ell + 1))
            rng.shuffle(pi)
            start = time.perf_counter()
            res = twisted_prism_grid_construction(TwistedPrismSpec(ell, tuple(pi)))
            times.append(1000 * (time.perf_counter() - start))
            cases[res.case] += 1
            fallback += res.used_fallback
        print(f"{ell:>5} {cfg.per_ell:>5} {cases[1]:>6} {cases[2]:>6} {fallback:>8} "
              f"{statistics.median(times):>10.1f} {max(times):>8.1f}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--ells", type=int, nargs="+", default=SweepConfig().ells)
    parser.add_argument("--per-ell", type=int, default=SweepConfig.per_ell)
    parser.add_argument("--seed", type=int, default=SweepConfig.seed)
    args = parser.parse_args()
    sweep(SweepConfig(args.ells, args.per_ell, args.seed))


if __name__ == "__main__":
    main()
