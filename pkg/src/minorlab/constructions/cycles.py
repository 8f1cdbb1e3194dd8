"""Exact maximum cycle packing and minimum feedback vertex set."""

from __future__ import annotations

from collections import deque
from typing import Iterator, Sequence

from ..decomposition import CapExceeded
from ..graph import Graph, iter_bits, mask_of

CYCLE_CAP = 25


def _check_cap(g: Graph, cap: int) -> None:
    if g.n > cap:
        raise CapExceeded(f"cycle packing/transversal capped at n={cap}, got n={g.n}")


def _core(g: Graph, mask: int) -> int:
    """Drop vertices of degree <= 1 until none remain; cycles are untouched."""
    changed = True
    while changed:
        changed = False
        for v in iter_bits(mask):
            if (g.adj[v] & mask).bit_count() <= 1:
                mask &= ~(1 << v)
                changed = True
    return mask


def induced_cycles_through(g: Graph, v: int, mask: int) -> Iterator[list[int]]:
    """Chordless cycles through ``v`` inside ``mask``, each listed once."""
    nv = g.adj[v] & mask

    def extend(path: list[int], used: int, interior: int) -> Iterator[list[int]]:
        last = path[-1]
        for w in iter_bits(g.adj[last] & mask & ~used):
            if g.adj[w] & interior:
                continue
            if nv >> w & 1:
                if len(path) >= 2 and path[1] < w:
                    yield path + [w]
                continue
            path.append(w)
            yield from extend(path, used | (1 << w), interior | (1 << last) if last != v else interior)
            path.pop()

    for u in iter_bits(nv):
        yield from extend([v, u], (1 << v) | (1 << u), 0)


def cycle_packing_exact(g: Graph, cap: int = CYCLE_CAP) -> list[list[int]]:
    """A maximum family of vertex-disjoint cycles.

    Branches on a minimum-degree vertex: either no packed cycle uses it, or
    one does and may be taken chordless (a chord splits off a shorter cycle
    through the same vertex).
    """
    _check_cap(g, cap)
    memo: dict[int, list[list[int]]] = {}

    def solve(mask: int) -> list[list[int]]:
        mask = _core(g, mask)
        if not mask:
            return []
        if mask in memo:
            return memo[mask]
        v = min(iter_bits(mask), key=lambda x: ((g.adj[x] & mask).bit_count(), x))
        best = solve(mask & ~(1 << v))
        ceiling = mask.bit_count() // 3
        if len(best) < ceiling:
            for cyc in induced_cycles_through(g, v, mask):
                rest = solve(mask & ~mask_of(cyc))
                if len(rest) + 1 > len(best):
                    best = [cyc] + rest
                    if len(best) == ceiling:
                        break
        memo[mask] = best
        return best

    return solve(g.all_mask)


def _shortest_cycle(g: Graph, mask: int) -> list[int] | None:
    best = None
    for s in iter_bits(mask):
        parent = {s: -1}
        depth = {s: 0}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if best is not None and 2 * depth[u] + 1 >= len(best):
                break
            for w in iter_bits(g.adj[u] & mask):
                if w == parent[u]:
                    continue
                if w in depth:
                    length = depth[u] + depth[w] + 1
                    if best is None or length < len(best):
                        a, b = [u], [w]
                        while parent[a[-1]] != -1:
                            a.append(parent[a[-1]])
                        while parent[b[-1]] != -1:
                            b.append(parent[b[-1]])
                        # trim the common tail back to the meeting point
                        while len(a) > 1 and len(b) > 1 and a[-2] == b[-2]:
                            a.pop()
                            b.pop()
                        cyc = a + b[-2::-1]
                        if len(set(cyc)) == len(cyc):
                            best = cyc
                else:
                    parent[w] = u
                    depth[w] = depth[u] + 1
                    queue.append(w)
    return best


def _greedy_disjoint_cycles(g: Graph, mask: int) -> int:
    count = 0
    while True:
        mask = _core(g, mask)
        cyc = _shortest_cycle(g, mask) if mask else None
        if cyc is None:
            return count
        count += 1
        mask &= ~mask_of(cyc)


def _forced_out(g: Graph, mask: int, keep: int) -> int | None:
    """Vertices that would close a cycle with the kept forest; ``None`` if it has one."""
    comp: dict[int, int] = {}
    for c in g.components(keep):
        if (sum((g.adj[v] & c).bit_count() for v in iter_bits(c)) // 2) != c.bit_count() - 1:
            return None
        for v in iter_bits(c):
            comp[v] = c
    forced = 0
    for v in iter_bits(mask & ~keep):
        seen = 0
        for u in iter_bits(g.adj[v] & keep):
            if comp[u] & seen:
                forced |= 1 << v
                break
            seen |= comp[u]
    return forced


def cycle_transversal_exact(g: Graph, cap: int = CYCLE_CAP) -> list[int]:
    """A minimum vertex set whose removal leaves a forest.

    Iterative deepening on the size. Each level branches over a shortest
    cycle: delete its i-th free vertex and keep the earlier ones. Kept
    vertices must stay a forest, which forces out any vertex joining one of
    its trees twice.
    """
    _check_cap(g, cap)

    def solve(mask: int, keep: int, k: int) -> list[int] | None:
        removed: list[int] = []
        while True:
            mask = _core(g, mask)
            keep &= mask
            if not mask:
                return removed
            forced = _forced_out(g, mask, keep)
            if forced is None:
                return None
            if not forced:
                break
            if forced.bit_count() > k:
                return None
            k -= forced.bit_count()
            removed += list(iter_bits(forced))
            mask &= ~forced
        if k == 0 or _greedy_disjoint_cycles(g, mask) > k:
            return None
        cyc = _shortest_cycle(g, mask)
        kept = keep
        for v in cyc:
            if kept >> v & 1:
                continue
            rest = solve(mask & ~(1 << v), kept, k - 1)
            if rest is not None:
                return removed + [v] + rest
            kept |= 1 << v
        return None

    for k in range(g.n + 1):
        found = solve(g.all_mask, 0, k)
        if found is not None:
            return sorted(found)
    raise AssertionError("removing every vertex leaves a forest")


def cycle_packing_problem(g: Graph, cycles: Sequence[Sequence[int]]) -> str | None:
    from .grids import cycle_problem

    seen: set[int] = set()
    for k, cyc in enumerate(cycles):
        problem = cycle_problem(g, cyc)
        if problem:
            return f"cycle {k}: {problem}"
        if seen & set(cyc):
            return f"cycle {k} shares a vertex with an earlier cycle"
        seen |= set(cyc)
    return None


def cycle_packing_obj(cycles: Sequence[Sequence[int]]) -> dict:
    return {"type": "cycle_packing", "cycles": [list(c) for c in cycles]}
