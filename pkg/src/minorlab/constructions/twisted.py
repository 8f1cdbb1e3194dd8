"""Four-by-four grid minors in twisted prisms with at least 75 matching edges."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..decomposition import CapExceeded
from ..graph import Graph, TwistedPrismSpec, make_grid, make_twisted_prism
from ..minor import MinorModel, compose_models, find_minor_model, minor_model_problem
from .grids import arcs_around
from .monotone import MonotoneWitness, es_monotone

BASE = 75
FALLBACK_BUDGET = 200_000


class ConstructionError(RuntimeError):
    """An assembled model failed validation; this is a bug, not an input error."""


@dataclass(frozen=True)
class TwistedGridResult:
    model: MinorModel
    case: int
    witness: MonotoneWitness
    rungs: tuple[int, ...]
    reduced: bool
    used_fallback: bool


def find_four_cycle(pi: Sequence[int]) -> int | None:
    """Smallest i (1-indexed) with e_i and e_{i+1} on a 4-cycle, or ``None``.

    With ell >= 5 every 4-cycle of a twisted prism uses two matching edges
    whose ends are consecutive on both cycles.
    """
    ell = len(pi)
    for i in range(1, ell + 1):
        j = i % ell + 1
        if (pi[j - 1] - pi[i - 1]) % ell in (1, ell - 1):
            return i
    return None


def reduce_to_base(spec: TwistedPrismSpec) -> tuple[TwistedPrismSpec, MinorModel]:
    """Twisted 75-prism minor keeping e_1..e_75, with its model in the original prism."""
    ell = spec.ell
    if ell == BASE:
        return spec, MinorModel({v: frozenset([v]) for v in range(2 * ell)})
    kept = spec.pi[:BASE]
    order = sorted(kept)
    rank = {p: k + 1 for k, p in enumerate(order)}
    reduced = TwistedPrismSpec(BASE, tuple(rank[p] for p in kept))
    sets: dict[int, frozenset] = {i: frozenset([i]) for i in range(BASE - 1)}
    sets[BASE - 1] = frozenset(range(BASE - 1, ell))
    c2 = list(range(ell, 2 * ell))
    arcs = arcs_around(c2, [spec.w(p) for p in order])
    for p in order:
        sets[BASE + rank[p] - 1] = arcs[spec.w(p)]
    return reduced, MinorModel(sets)


def _choose_rungs(pi: Sequence[int]) -> tuple[int, MonotoneWitness, list[int]]:
    """Matching-edge indices (1-indexed) whose orders on both cycles agree."""
    ell = len(pi)
    hit = find_four_cycle(pi)
    if hit is not None:
        # rotate the first cycle so the 4-cycle uses e_ell and e_1
        def c1(new: int) -> int:
            return (new + hit - 1) % ell + 1

        first, last = pi[c1(1) - 1], pi[c1(ell) - 1]
        # rotate or reflect the second cycle so pi(1) = 1 and pi(ell) = ell
        if (last - first) % ell == ell - 1:
            def c2(old: int) -> int:
                return (old - first) % ell + 1
        else:
            def c2(old: int) -> int:
                return (first - old) % ell + 1
        seq = [c2(pi[c1(k) - 1]) for k in range(1, ell + 1)]
        assert seq[0] == 1 and seq[-1] == ell
        wit = es_monotone(seq[1:ell - 1], 9, 10)
        inner = [k + 2 for k in wit.indices[: 9 if wit.direction == "increasing" else 10]]
        new = [1] + inner + ([ell] if wit.direction == "increasing" else [])
        return 1, wit, [c1(k) for k in new]
    # rotating the second cycle never changes the first-cycle labels
    wit = es_monotone([(p - pi[-1]) % ell for p in pi[:ell - 1]], 9, 9)
    return 2, wit, [k + 1 for k in wit.indices[:9]] + [ell]


def _cyclic_direction(positions: Sequence[int], length: int) -> int:
    """+1 or -1 if ``positions`` run monotonically around a cycle, else 0."""
    k = len(positions)
    steps = [(positions[(i + 1) % k] - positions[i]) % length for i in range(k)]
    if sum(steps) == length:
        return 1
    if sum((length - s) % length for s in steps) == length:
        return -1
    return 0


def _grid_from_ladder(outer: Sequence[int], inner: Sequence[int],
                      partner: dict[int, int]) -> MinorModel | None:
    """4x4 grid model from two cycles joined by order-consistent rungs.

    Rungs map to the eight non-corner border cells; corners go to any other
    outer vertex in the four gaps. Tries every start point with a greedy
    subsequence match, which is exact for a fixed pattern.
    """
    n = len(outer)
    pattern = "KccKccKccKcc"
    for start in range(n):
        picks = []
        pos = 0
        for k in range(n):
            if pos == len(pattern):
                break
            v = outer[(start + k) % n]
            if pattern[pos] == "c" and v in partner or pattern[pos] == "K":
                picks.append(v)
                pos += 1
        if pos < len(pattern):
            continue
        corners = picks[0::3]
        chosen = [v for i, v in enumerate(picks) if i % 3]
        border_order = [corners[0], chosen[0], chosen[1], corners[1], chosen[2], chosen[3],
                        corners[2], chosen[4], chosen[5], corners[3], chosen[6], chosen[7]]
        border_arcs = arcs_around(outer, border_order)
        q = [partner[v] for v in chosen]
        inner_pos = {v: i for i, v in enumerate(inner)}
        ring = list(inner)
        if _cyclic_direction([inner_pos[x] for x in q], len(inner)) < 0:
            ring = ring[::-1]
        inner_arcs = arcs_around(ring, [q[7], q[1], q[3], q[5]])
        cells = [(0, 0), (0, 1), (0, 2), (0, 3), (1, 3), (2, 3), (3, 3), (3, 2), (3, 1), (3, 0), (2, 0), (1, 0)]
        sets = {i * 4 + j: border_arcs[v] for (i, j), v in zip(cells, border_order)}
        for (i, j), v in zip([(1, 1), (1, 2), (2, 2), (2, 1)], [q[7], q[1], q[3], q[5]]):
            sets[i * 4 + j] = inner_arcs[v]
        return MinorModel(sets)
    return None


def _compressed_ladder(outer: Sequence[int], inner: Sequence[int],
                       partner: dict[int, int]) -> tuple[Graph, MinorModel]:
    """Rung ends kept, each run of other cycle vertices merged into one vertex."""
    parts: list[frozenset] = []
    index: dict[int, int] = {}
    cycles = []
    for cycle, ends in ((outer, set(partner)), (inner, set(partner.values()))):
        first = next(i for i, v in enumerate(cycle) if v in ends)
        rotated = list(cycle[first:]) + list(cycle[:first])
        ids = []
        run: list[int] = []
        for v in rotated + [None]:
            if v is None or v in ends:
                if run:
                    ids.append(len(parts))
                    parts.append(frozenset(run))
                    run = []
                if v is not None:
                    index[v] = len(parts)
                    ids.append(len(parts))
                    parts.append(frozenset([v]))
            else:
                run.append(v)
        cycles.append(ids)
    edges = []
    for ids in cycles:
        edges += list(zip(ids, ids[1:] + ids[:1]))
    edges += [(index[a], index[b]) for a, b in partner.items()]
    g = Graph.from_edges(len(parts), edges)
    return g, MinorModel(dict(enumerate(parts)))


def twisted_prism_grid_construction(spec: TwistedPrismSpec) -> TwistedGridResult:
    if spec.ell < BASE:
        raise ValueError(f"twisted prism needs at least {BASE} matching edges, got {spec.ell}")
    reduced, reduction = reduce_to_base(spec)
    pi = reduced.pi
    case, wit, rungs = _choose_rungs(pi)
    ell = reduced.ell
    outer = list(range(ell))
    inner = list(range(ell, 2 * ell))
    partner = {reduced.v(i): reduced.w(pi[i - 1]) for i in rungs}
    direction = _cyclic_direction([partner[v] - ell for v in sorted(partner)], ell)
    if direction == 0:
        raise ConstructionError("selected rungs are not order-consistent")

    model = _grid_from_ladder(outer, inner, partner)
    if model is None:
        model = _grid_from_ladder(inner, outer, {b: a for a, b in partner.items()})
    used_fallback = False
    if model is None:
        used_fallback = True
        trimmed = dict(sorted(partner.items())[:10])
        small, compress = _compressed_ladder(outer, inner, trimmed)
        try:
            found = find_minor_model(small, make_grid(4, 4), max_h=16, budget=FALLBACK_BUDGET)
        except CapExceeded as exc:
            raise ConstructionError(f"fallback search gave up: {exc}") from exc
        if found is None:
            raise ConstructionError("no 4x4 grid found in the rung ladder")
        model = compose_models(found, compress)

    grid = make_grid(4, 4)
    problem = minor_model_problem(make_twisted_prism(reduced), grid, model)
    if problem:
        raise ConstructionError(f"grid model in the reduced prism is invalid: {problem}")
    full = compose_models(model, reduction)
    problem = minor_model_problem(make_twisted_prism(spec), grid, full)
    if problem:
        raise ConstructionError(f"composed grid model is invalid: {problem}")
    return TwistedGridResult(full, case, wit, tuple(sorted(rungs)), spec.ell > BASE, used_fallback)


def twisted_prism_grid_model(spec: TwistedPrismSpec) -> MinorModel:
    """A validated 4x4-grid model in the twisted prism described by ``spec``."""
    return twisted_prism_grid_construction(spec).model


def doubling_permutation(ell: int = BASE) -> TwistedPrismSpec:
    """pi(i) = 2i mod ell (0 read as ell): a twisted prism with no 4-cycle when ell is odd."""
    return TwistedPrismSpec(ell, tuple((2 * i - 1) % ell + 1 for i in range(1, ell + 1)))
