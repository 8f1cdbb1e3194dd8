"""Embedding subdivisions of grid minors into a scaled-up grid."""

from __future__ import annotations

from math import isqrt
from typing import Mapping

from ..graph import Graph, grid_vertex, make_grid, subdivide
from ..minor import MinorModel, minor_model_problem

Cell = tuple[int, int]


def ceil_sqrt(x: int) -> int:
    r = isqrt(x)
    return r if r * r == x else r + 1


def scale_side(ell: int) -> int:
    """Smallest integer at least 2*sqrt(ell)."""
    return ceil_sqrt(4 * ell)


def block_radius(ell: int) -> int:
    """Least r >= 1 with 2r^2 + 2r >= ell - 1, i.e. ceil(sqrt(2 ell - 1)/2 - 1/2)."""
    r = 1
    while 2 * r * r + 2 * r < ell - 1:
        r += 1
    return r


def _odd_block_routes(s: int, w: int) -> tuple[list[Cell], list[Cell]]:
    """Vertical and horizontal routes of an odd s x s block with its core at (0, 0).

    The vertical route snakes over rows 1..s-1 of columns 0..w-1 and ends at
    (s-1, 0); the horizontal route runs along row 0, descends column w,
    snakes back up through columns w+1..s-1 and finishes at (0, s-1). With the
    core they partition the block.
    """
    rows = s - 1
    down: list[Cell] = []
    for k, i in enumerate(range(1, s)):
        cols = range(w) if k % 2 == 0 else range(w - 1, -1, -1)
        down += [(i, j) for j in cols]
    right: list[Cell] = [(0, j) for j in range(1, w + 1)]
    right += [(i, w) for i in range(1, s)]
    for k, i in enumerate(range(rows, 0, -1)):
        cols = range(w + 1, s) if k % 2 == 0 else range(s - 1, w, -1)
        right += [(i, j) for j in cols]
    right += [(0, j) for j in range(w + 1, s)]
    return down, right


def block_routes(s: int, need: int, balanced_w: int | None = None) -> tuple[list[Cell], list[Cell]] | None:
    """Disjoint core-to-next-core routes in an s x s block, each with >= ``need`` cells.

    The vertical route starts at (1, 0) and ends at (s-1, 0); the horizontal
    one starts at (0, 1) and ends at (0, s-1). ``None`` if this layout family
    cannot reach ``need``.
    """
    if s < 2:
        return None
    if s - 1 >= need:
        return [(i, 0) for i in range(1, s)], [(0, j) for j in range(1, s)]
    odd = s if s % 2 else s - 1
    if odd < 3:
        return None
    widths = [balanced_w] if balanced_w else range(1, odd - 1)
    best = None
    for w in widths:
        if not 1 <= w <= odd - 2:
            continue
        down, right = _odd_block_routes(odd, w)
        if s != odd:
            down = down + [(s - 1, 0)]
            right = right + [(0, s - 1)]
        score = min(len(down), len(right))
        if best is None or score > best[0]:
            best = (score, down, right)
    if best is None or best[0] < need:
        return None
    _check_routes(s, best[1], best[2])
    return best[1], best[2]


def _check_routes(s: int, down: list[Cell], right: list[Cell]) -> None:
    for path, first, last in ((down, (1, 0), (s - 1, 0)), (right, (0, 1), (0, s - 1))):
        steps = zip(path, path[1:])
        if path[0] != first or path[-1] != last or any(abs(a - c) + abs(b - d) != 1 for (a, b), (c, d) in steps):
            raise AssertionError(f"bad block route for s={s}")
    cells = down + right
    if len(set(cells)) != len(cells) or (0, 0) in cells:
        raise AssertionError(f"block routes overlap for s={s}")


def choose_block(ell: int) -> tuple[int, list[Cell], list[Cell]]:
    """Block side and routes: the (2r+1)-block when it suffices, else the widest allowed."""
    need = ell - 1
    limit = scale_side(ell)
    r = block_radius(ell)
    candidates = [(2 * r + 1, r + 1)] + [(s, None) for s in range(2, limit + 1)]
    for s, w in candidates:
        if s > limit:
            continue
        routes = block_routes(s, need, w)
        if routes:
            return s, routes[0], routes[1]
    raise AssertionError(f"no block layout for ell={ell}")


def subdivision_grid_model(h: Graph, model_in_grid: MinorModel, side: int,
                           counts: Mapping[tuple[int, int], int], ell: int) -> tuple[MinorModel, int]:
    """Model of ``subdivide(h, counts)`` in the (ceil(2 sqrt ell) * side)-grid.

    Grid vertex (i, j) becomes the core cell (s i, s j); each grid edge gets a
    route through the block of its upper or left end. Routes inside a branch
    set join it; a route realizing an H-edge is cut into the subdivision
    vertices, with surplus cells merged into the smaller endpoint's set.
    Returns the model and the output grid side.
    """
    if ell < 1:
        raise ValueError("ell must be positive")
    grid = make_grid(side, side)
    problem = minor_model_problem(grid, h, model_in_grid)
    if problem:
        raise ValueError(f"input model is invalid: {problem}")
    norm = {}
    for (u, v), c in counts.items():
        key = (min(u, v), max(u, v))
        if not 0 <= c < ell:
            raise ValueError(f"count {c} on edge {key} is not in [0, {ell})")
        norm[key] = c
    if set(norm) != set(h.edges()):
        raise ValueError("counts must cover exactly the edges of h")

    s, down, right = choose_block(ell)
    out_side = scale_side(ell) * side

    def place(cell: Cell, i: int, j: int) -> int:
        return grid_vertex(s * i + cell[0], s * j + cell[1], out_side)

    def core(p: int) -> int:
        i, j = divmod(p, side)
        return grid_vertex(s * i, s * j, out_side)

    def route(p: int, q: int) -> list[int]:
        # ordered from p's core towards q's core
        a, b = min(p, q), max(p, q)
        i, j = divmod(a, side)
        cells = down if b == a + side else right
        path = [place(c, i, j) for c in cells]
        return path if p == a else path[::-1]

    owner = {}
    for x, cells in model_in_grid.branch_sets.items():
        for p in cells:
            owner[p] = x

    sets: dict[int, set[int]] = {x: {core(p) for p in model_in_grid[x]} for x in range(h.n)}
    realizer = {}
    for p, q in grid.edges():
        x, y = owner.get(p), owner.get(q)
        if x is None or y is None:
            continue
        if x == y:
            sets[x].update(route(p, q))
        else:
            key = (min(x, y), max(x, y))
            if key in norm and key not in realizer:
                realizer[key] = (p, q) if x < y else (q, p)

    out = subdivide(h, norm)
    next_vertex = h.n
    for key in h.edges():
        p, q = realizer[key]
        path = route(p, q)
        c = norm[key]
        spare = len(path) - c
        sets[key[0]].update(path[:spare])
        for k in range(c):
            sets[next_vertex + k] = {path[spare + k]}
        next_vertex += c

    model = MinorModel({x: frozenset(v) for x, v in sets.items()})
    problem = minor_model_problem(make_grid(out_side, out_side), out, model)
    if problem:
        raise AssertionError(f"subdivision model invalid: {problem}")
    return model, out_side
