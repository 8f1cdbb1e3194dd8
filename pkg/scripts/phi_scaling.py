"""Block side, route lengths and output grid side of the subdivided-grid embedding per ell.

    python scripts/phi_scaling.py --max-ell 30 --base-grid 3
"""

import argparse
from dataclasses import dataclass

from minorlab.constructions.phi import block_radius, choose_block, scale_side, subdivision_grid_model
from minorlab.graph import make_grid, subdivide
from minorlab.minor import identity_model, validate_minor_model


@dataclass
class ScalingConfig:
    max_ell: int = 20
    base_grid: int = 2


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-ell", type=int, default=ScalingConfig.max_ell)
    parser.add_argument("--base-grid", type=int, default=ScalingConfig.base_grid)
    args = parser.parse_args()
    cfg = ScalingConfig(args.max_ell, args.base_grid)

    h = make_grid(cfg.base_grid, cfg.base_grid)
    print(f"{'ell':>4} {'r':>3} {'block':>5} {'route':>5} {'scale':>5} {'out side':>8} {'valid':>5}")
    for ell in range(1, cfg.max_ell + 1):
        s, down, right = choose_block(ell)
        counts = {e: ell - 1 for e in h.edges()}
        model, side = subdivision_grid_model(h, identity_model(h), cfg.base_grid, counts, ell)
        ok = validate_minor_model(make_grid(side, side), subdivide(h, counts), model)
        print(f"{ell:>4} {block_radius(ell):>3} {s:>5} {min(len(down), len(right)):>5} "
              f"{scale_side(ell):>5} {side:>8} {str(ok):>5}")


if __name__ == "__main__":
    main()
