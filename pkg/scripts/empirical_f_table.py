"""Largest treewidth among small H-minor-free graphs, next to the catalog bound for H.

    python scripts/empirical_f_table.py --n-max 7 --jobs 2
"""

import argparse
import time
from dataclasses import dataclass

from minorlab.bounds import BoundEntry, empirical_f, f_upper
from minorlab.graph import Graph, disjoint_union, make_complete_bipartite, make_cycle, make_path, make_wheel


@dataclass
class TableConfig:
    n_max: int = 6
    jobs: int = 1


def targets() -> list[tuple[str, Graph, BoundEntry | None]]:
    return [
        ("P4", make_path(4), BoundEntry("forest", {"n": 4})),
        ("C3", make_cycle(3), BoundEntry("cycle", {"n": 3})),
        ("C4", make_cycle(4), BoundEntry("cycle", {"n": 4})),
        ("C5", make_cycle(5), BoundEntry("cycle", {"n": 5})),
        ("K2,3", make_complete_bipartite(2, 3), BoundEntry("complete_bipartite_2t", {"t": 3})),
        ("W5", make_wheel(5), BoundEntry("wheel_ours", {"k": 5})),
        ("2C3", disjoint_union([make_cycle(3), make_cycle(3)]), BoundEntry("disjoint_cycles_r2", {"n": 6})),
    ]


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n-max", type=int, default=TableConfig.n_max)
    parser.add_argument("--jobs", type=int, default=TableConfig.jobs)
    cfg = TableConfig(**{k.replace("-", "_"): v for k, v in vars(parser.parse_args()).items()})

    print(f"{'H':<6} {'|V(H)|-2':>8} {'observed':>8} {'bound':>6} {'free':>6} {'seconds':>8}")
    for name, h, entry in targets():
        start = time.perf_counter()
        rep = empirical_f(h, cfg.n_max, cfg.jobs)
        bound = f_upper(entry) if entry else "-"
        print(f"{name:<6} {h.n - 2:>8} {rep.observed_max_tw:>8} {bound:>6} {rep.minor_free:>6} "
              f"{time.perf_counter() - start:>8.2f}")


if __name__ == "__main__":
    main()
