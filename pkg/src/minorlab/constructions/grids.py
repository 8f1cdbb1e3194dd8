"""Cycles in grids: Hamiltonian cycles, row-band cycle pairs and the grid-to-prism model."""

from __future__ import annotations

from typing import Sequence

from ..graph import Graph, grid_vertex, make_grid, make_prism
from ..minor import MinorModel, minor_model_problem


def cycle_problem(g: Graph, cycle: Sequence[int]) -> str | None:
    if len(cycle) < 3:
        return "a cycle needs at least 3 vertices"
    if len(set(cycle)) != len(cycle):
        return "cycle repeats a vertex"
    for u, v in zip(cycle, list(cycle[1:]) + [cycle[0]]):
        if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
            return f"{u}-{v} is not an edge"
    return None


def is_cycle(g: Graph, cycle: Sequence[int]) -> bool:
    return cycle_problem(g, cycle) is None


def _even_rows_cycle(a: int, b: int) -> list[tuple[int, int]]:
    # row 0 left to right, snake rows 1.. over columns 1..b-1, back up column 0
    cells = [(0, j) for j in range(b)]
    for i in range(1, a):
        cols = range(b - 1, 0, -1) if i % 2 else range(1, b)
        cells += [(i, j) for j in cols]
    cells += [(i, 0) for i in range(a - 1, 0, -1)]
    return cells


def _odd_skip_cycle(a: int, b: int) -> list[tuple[int, int]]:
    # snake rows 0..a-3 as above, zigzag the last two rows, skip (a-1, b-1)
    cells = [(0, j) for j in range(b)]
    for i in range(1, a - 2):
        cols = range(b - 1, 0, -1) if i % 2 else range(1, b)
        cells += [(i, j) for j in cols]
    cells.append((a - 2, b - 1))
    for c in range(b - 2, 0, -2):
        cells += [(a - 2, c), (a - 1, c), (a - 1, c - 1), (a - 2, c - 1)]
    cells += [(i, 0) for i in range(a - 3, 0, -1)]
    return cells


def grid_hamiltonian_cycle(a: int, b: int, allow_corner_skip: bool = False) -> list[int]:
    """Hamiltonian cycle of the a x b grid, or one missing the corner (a-1, b-1).

    The corner is skipped only when a*b is odd, which forces it.
    """
    if a < 2 or b < 2:
        raise ValueError("grid sides must be at least 2")
    if a % 2 == 0:
        cells = _even_rows_cycle(a, b)
    elif b % 2 == 0:
        cells = [(i, j) for j, i in _even_rows_cycle(b, a)]
    elif allow_corner_skip:
        cells = _odd_skip_cycle(a, b)
    else:
        raise ValueError(f"the {a}x{b} grid has no Hamiltonian cycle (odd order)")
    cycle = [grid_vertex(i, j, b) for i, j in cells]
    problem = cycle_problem(make_grid(a, b), cycle)
    expected = a * b - (a * b) % 2
    if problem or len(cycle) != expected:
        raise AssertionError(f"grid cycle construction failed: {problem or len(cycle)}")
    return cycle


def band_rows(side: int, length: int) -> int:
    """Rows needed for a band cycle longer than ``length`` in a grid of width ``side``."""
    return max(2, -(-length // side) + 1)


def grid_band_cycles(side: int, l1: int, l2: int) -> tuple[list[int], list[int]]:
    """Two disjoint cycles of lengths > l1 and > l2 in stacked row bands of the side x side grid."""
    if side < 2:
        raise ValueError("grid side must be at least 2")
    h1, h2 = band_rows(side, l1), band_rows(side, l2)
    if h1 + h2 > side:
        raise ValueError(f"grid side {side} is below the {h1} + {h2} rows the two bands need")
    cycles = []
    for top, h in ((0, h1), (h1, h2)):
        local = grid_hamiltonian_cycle(h, side, allow_corner_skip=True)
        cycles.append([v + top * side for v in local])
    c1, c2 = cycles
    if len(c1) <= l1 or len(c2) <= l2 or set(c1) & set(c2):
        raise AssertionError("band cycles do not meet their guarantees")
    return c1, c2


def arcs_around(cycle: Sequence[int], marked: Sequence[int]) -> dict[int, frozenset]:
    """Cut ``cycle`` into consecutive arcs, each holding exactly one marked vertex."""
    marks = set(marked)
    pos = [i for i, v in enumerate(cycle) if v in marks]
    if len(pos) != len(marks):
        raise ValueError("every marked vertex must lie on the cycle")
    arcs = {}
    for k, p in enumerate(pos):
        end = pos[k + 1] if k + 1 < len(pos) else pos[0] + len(cycle)
        arcs[cycle[p]] = frozenset(cycle[q % len(cycle)] for q in range(p, end))
    return arcs


def ladder_model(outer: Sequence[int], inner: Sequence[int], rungs: Sequence[tuple[int, int]]) -> MinorModel:
    """Prism model from two disjoint cycles joined by rungs in matching cyclic order.

    Rungs are (outer vertex, inner vertex) pairs listed in order around ``outer``;
    prism vertex i is the outer arc of rung i and ell + i the inner arc.
    """
    out_arcs = arcs_around(outer, [p for p, _ in rungs])
    in_arcs = arcs_around(inner, [q for _, q in rungs])
    ell = len(rungs)
    sets = {}
    for i, (p, q) in enumerate(rungs):
        sets[i] = out_arcs[p]
        sets[ell + i] = in_arcs[q]
    return MinorModel(sets)


def _rungs_in_cycle_order(cycle: Sequence[int], partner: dict[int, int]) -> list[tuple[int, int]]:
    return [(v, partner[v]) for v in cycle if v in partner]


def grid_prism_model(r: int) -> MinorModel:
    """Model of the (8r^2 - 4r)-prism in the 4r x 4r grid.

    The outer cycle snakes through rows 4t and 4t+3 of each four-row band and
    closes along the right border; the inner cycle snakes through rows 4t+1
    and 4t+2 and closes one column in. Vertical edges between the two act as
    rungs, and each cycle is cut into one arc per rung.
    """
    if r < 1:
        raise ValueError("r must be at least 1")
    n = 4 * r

    def at(x: int, y: int) -> int:
        return grid_vertex(y, x, n)

    red: list[int] = []
    blue: list[int] = []
    for y in range(0, n, 4):
        red += [at(x, y) for x in range(n - 4, -1, -1)]
        red += [at(0, yy) for yy in (y + 1, y + 2)]
        red += [at(x, y + 3) for x in range(0, n - 3)]
        blue += [at(x, y + 1) for x in range(n - 3, 0, -1)]
        blue += [at(x, y + 2) for x in range(1, n - 2)]
        if y + 4 < n:
            blue += [at(n - 3, y + 3), at(n - 3, y + 4)]
    red += [at(x, n - 1) for x in range(n - 3, n)]
    red += [at(n - 1, y) for y in range(n - 2, 0, -1)]
    red += [at(x, 0) for x in range(n - 1, n - 4, -1)]
    blue += [at(n - 2, y) for y in range(n - 2, 0, -1)]

    partner: dict[int, int] = {}
    for y in range(0, n, 4):
        for x in range(1, n - 3):
            partner[at(x, y)] = at(x, y + 1)
            partner[at(x, y + 3)] = at(x, y + 2)
    for y in range(1, n - 1):
        partner[at(n - 1, y)] = at(n - 2, y)
    partner[at(n - 3, 0)] = at(n - 3, 1)
    partner[at(n - 3, n - 1)] = at(n - 3, n - 2)

    rungs = _rungs_in_cycle_order(red, partner)
    ell = 8 * r * r - 4 * r
    if len(rungs) != ell:
        raise AssertionError(f"expected {ell} rungs, built {len(rungs)}")
    model = ladder_model(red, blue, rungs)
    problem = minor_model_problem(make_grid(n, n), make_prism(ell), model)
    if problem:
        raise AssertionError(f"grid prism model invalid: {problem}")
    return model
