"""Brambles: validation, exact order, grid crosses, hitting cycles and path partitions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .decomposition import CapExceeded
from .graph import Graph, grid_vertex, iter_bits, mask_of

ORDER_VERTEX_CAP = 30
ORDER_ELEMENT_CAP = 10_000
CYCLE_SEARCH_CAP = 20


class InvalidBramble(ValueError):
    pass


class PathNotHitting(ValueError):
    """The path misses some bramble element."""


class InsufficientOrder(ValueError):
    """The bramble order is below ``c1 + c2``."""


@dataclass(frozen=True)
class Bramble:
    elements: tuple[frozenset, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(frozenset(e) for e in self.elements))

    def __len__(self) -> int:
        return len(self.elements)

    def masks(self) -> list[int]:
        return [mask_of(e) for e in self.elements]

    def sub(self, indices: Iterable[int]) -> "Bramble":
        return Bramble(tuple(self.elements[i] for i in indices))

    def to_obj(self, claimed_order: int | None = None) -> dict:
        obj = {"type": "bramble", "elements": [sorted(e) for e in self.elements]}
        if claimed_order is not None:
            obj["claimed_order"] = claimed_order
        return obj


def _check_range(g: Graph, b: Bramble) -> None:
    for e in b.elements:
        for v in e:
            if not 0 <= v < g.n:
                raise IndexError(f"bramble vertex {v} out of range for n={g.n}")


def bramble_problem(g: Graph, b: Bramble) -> str | None:
    _check_range(g, b)
    masks = b.masks()
    for i, m in enumerate(masks):
        if not g.is_connected_mask(m):
            return f"element {i} is empty or not connected"
    closed = [m | g.neighborhood(m) for m in masks]
    for i in range(len(masks)):
        for j in range(i + 1, len(masks)):
            if not masks[i] & closed[j]:
                return f"elements {i} and {j} do not touch"
    return None


def validate_bramble(g: Graph, b: Bramble) -> bool:
    return bramble_problem(g, b) is None


def _minimal_masks(masks: Iterable[int]) -> list[int]:
    """Distinct masks with supersets removed; hitting the rest hits those too."""
    uniq = sorted(set(masks), key=lambda m: (m.bit_count(), m))
    kept: list[int] = []
    for m in uniq:
        if not any(k & m == k for k in kept):
            kept.append(m)
    return kept


def min_hitting_set(masks: Sequence[int]) -> int:
    """Minimum-size vertex mask meeting every mask, by branch and bound.

    The bound at each node is a greedily chosen pairwise-disjoint subfamily
    of the still-unhit sets.
    """
    sets = _minimal_masks(masks)
    if not sets:
        return 0
    if any(m == 0 for m in sets):
        raise ValueError("cannot hit an empty set")

    def disjoint_bound(unhit: list[int]) -> int:
        used = 0
        count = 0
        for m in unhit:
            if not m & used:
                used |= m
                count += 1
        return count

    # greedy upper bound
    greedy = 0
    rest = list(sets)
    while rest:
        freq: dict[int, int] = {}
        for m in rest:
            for v in iter_bits(m):
                freq[v] = freq.get(v, 0) + 1
        v = max(freq, key=lambda x: (freq[x], -x))
        greedy |= 1 << v
        rest = [m for m in rest if not m >> v & 1]
    best = [greedy]

    def solve(unhit: list[int], chosen: int) -> None:
        if not unhit:
            if chosen.bit_count() < best[0].bit_count():
                best[0] = chosen
            return
        if chosen.bit_count() + disjoint_bound(unhit) >= best[0].bit_count():
            return
        pivot = unhit[0]
        freq: dict[int, int] = {}
        for m in unhit:
            for v in iter_bits(m & pivot):
                freq[v] = freq.get(v, 0) + 1
        excluded = 0
        for v in sorted(freq, key=lambda x: (-freq[x], x)):
            nxt = [m & ~excluded for m in unhit if not m >> v & 1]
            if all(nxt):
                nxt.sort(key=lambda m: (m.bit_count(), m))
                solve(nxt, chosen | (1 << v))
            excluded |= 1 << v
            if any(not m & ~excluded for m in unhit):
                break

    solve(sorted(sets, key=lambda m: (m.bit_count(), m)), 0)
    return best[0]


def bramble_order(g: Graph, b: Bramble, cap: int = ORDER_VERTEX_CAP) -> tuple[int, frozenset]:
    """Exact order with a minimum hitting set."""
    if g.n > cap:
        raise CapExceeded(f"bramble order capped at n={cap}, got n={g.n}")
    if len(b) > ORDER_ELEMENT_CAP:
        raise CapExceeded(f"bramble order capped at {ORDER_ELEMENT_CAP} elements")
    problem = bramble_problem(g, b)
    if problem:
        raise InvalidBramble(problem)
    hit = min_hitting_set(b.masks())
    return hit.bit_count(), frozenset(iter_bits(hit))


def subbramble_order(b_masks: Sequence[int], indices: Iterable[int]) -> int:
    """Order of a subfamily; subsets of a bramble are brambles, so no revalidation."""
    return min_hitting_set([b_masks[i] for i in indices]).bit_count()


def grid_cross_bramble(k: int) -> Bramble:
    """Crosses of the top-left (k-1)x(k-1) subgrid plus the last row and last column.

    The last row includes the corner; the last column stops just above it.
    Every hitting set must cover all rows or all columns of the subgrid and
    meet the two disjoint border pieces, so the order is k+1.
    """
    if k < 2:
        raise ValueError("cross bramble needs k >= 2")
    s = k - 1
    elements = []
    for i in range(s):
        for j in range(s):
            cross = {grid_vertex(i, c, k) for c in range(s)} | {grid_vertex(r, j, k) for r in range(s)}
            elements.append(frozenset(cross))
    elements.append(frozenset(grid_vertex(s, c, k) for c in range(k)))
    elements.append(frozenset(grid_vertex(r, s, k) for r in range(s)))
    return Bramble(tuple(elements))


def find_hitting_cycle(g: Graph, b: Bramble, cap: int = CYCLE_SEARCH_CAP) -> list[int] | None:
    """A cycle meeting every element, by exhaustive DFS; ``None`` if there is none."""
    if g.n > cap:
        raise CapExceeded(f"hitting-cycle search capped at n={cap}, got n={g.n}")
    _check_range(g, b)
    targets = _minimal_masks(b.masks())
    if not targets:
        raise ValueError("empty bramble")

    for s in range(g.n):
        above = g.all_mask & ~((1 << (s + 1)) - 1)
        path = [s]

        def extend(end: int, used: int, allowed: int) -> list[int] | None:
            if len(path) >= 3 and g.has_edge(end, s):
                if all(t & used for t in targets):
                    return list(path)
            region = g.reach(end, allowed | (1 << end))
            if not g.adj[s] & region & ~(1 << end) and not (len(path) >= 3 and g.has_edge(end, s)):
                return None
            avail = region | used
            if any(not t & avail for t in targets):
                return None
            for w in iter_bits(g.adj[end] & allowed):
                path.append(w)
                found = extend(w, used | (1 << w), allowed & ~(1 << w))
                if found:
                    return found
                path.pop()
            return None

        found = extend(s, 1 << s, above)
        if found:
            return found
    return None


@dataclass(frozen=True)
class PathPartitionResult:
    p1: tuple[int, ...]
    p2: tuple[int, ...]
    order_b1: int
    b1_indices: tuple[int, ...]
    b1_prime_indices: tuple[int, ...]


def _check_path(g: Graph, path: Sequence[int]) -> None:
    if not path:
        raise ValueError("empty path")
    if len(set(path)) != len(path):
        raise ValueError("path repeats a vertex")
    for u, v in zip(path, path[1:]):
        if not g.has_edge(u, v):
            raise ValueError(f"path step {u}-{v} is not an edge")


def path_partition(g: Graph, path: Sequence[int], b: Bramble, c1: int, c2: int,
                   reverse: bool = False) -> PathPartitionResult:
    """Split ``path`` at the shortest prefix whose meeting subbramble has order ``c1``.

    ``p1`` starts at the scan origin (the first listed endpoint unless
    ``reverse``); ``p1`` and ``p2`` share exactly the split vertex.
    """
    if c1 < 1 or c2 < 1:
        raise ValueError("c1 and c2 must be positive")
    _check_path(g, path)
    path = list(reversed(path)) if reverse else list(path)
    problem = bramble_problem(g, b)
    if problem:
        raise InvalidBramble(problem)
    masks = b.masks()
    pmask = mask_of(path)
    missed = [i for i, m in enumerate(masks) if not m & pmask]
    if missed:
        raise PathNotHitting(f"path misses bramble elements {missed}")
    total = min_hitting_set(masks).bit_count()
    if total < c1 + c2:
        raise InsufficientOrder(f"bramble order {total} < c1 + c2 = {c1 + c2}")

    prefix = 0
    for i, v in enumerate(path):
        prefix |= 1 << v
        b1 = [j for j, m in enumerate(masks) if m & prefix]
        order = subbramble_order(masks, b1)
        if order >= c1:
            p1 = tuple(path[: i + 1])
            p2 = tuple(path[i:])
            strict = prefix & ~(1 << v)
            b1p = [j for j, m in enumerate(masks) if m & strict]
            return PathPartitionResult(p1, p2, order, tuple(b1), tuple(b1p))
    raise AssertionError("unreachable: the whole path meets every element")


def path_partition_violations(g: Graph, path: Sequence[int], b: Bramble, c1: int, c2: int,
                              result: PathPartitionResult, reverse: bool = False) -> list[str]:
    """Re-derive the five partition conclusions from scratch; return the ones that fail."""
    path = list(reversed(path)) if reverse else list(path)
    out = []
    p1, p2 = list(result.p1), list(result.p2)
    edges = {frozenset(e) for e in zip(path, path[1:])}
    e1 = {frozenset(e) for e in zip(p1, p1[1:])}
    e2 = {frozenset(e) for e in zip(p2, p2[1:])}
    if e1 & e2 or e1 | e2 != edges or len(set(p1) & set(p2)) > 1:
        out.append("p1 and p2 do not split the path into edge-disjoint subpaths")
    v1, v2 = set(p1), set(p2)
    if path[0] not in v1 or path[-1] not in v2:
        out.append("(i) endpoints misplaced")
    elements = b.elements
    idx = range(len(elements))
    b1 = [i for i in idx if elements[i] & v1]
    b1p = [i for i in idx if elements[i] & (v1 - v2)]
    if tuple(b1) != result.b1_indices or tuple(b1p) != result.b1_prime_indices:
        out.append("reported subbramble indices disagree")

    def order(indices):
        return bramble_order(g, b.sub(indices))[0] if indices else 0

    if order(b1) != c1:
        out.append("(ii) order of B1 is not exactly c1")
    if order(b1p) > c1 - 1:
        out.append("(iii) order of B1' exceeds c1 - 1")
    rest = [i for i in idx if i not in set(b1)]
    if order(rest) < c2 or any(not elements[i] & (v2 - v1) for i in rest):
        out.append("(iv) B - B1 too small or not hit by V(P2) - V(P1)")
    rest_p = [i for i in idx if i not in set(b1p)]
    if order(rest_p) < c2 + 1 or any(not elements[i] & v2 for i in rest_p):
        out.append("(v) B - B1' too small or not hit by V(P2)")
    return out


def random_bramble(g: Graph, rng, attempts: int = 60, max_size: int | None = None) -> Bramble:
    """Greedy random bramble: grow random connected sets, keep those touching all kept ones."""
    if g.n == 0:
        raise ValueError("empty graph has no bramble")
    max_size = max_size or max(1, g.n // 2)
    kept: list[int] = []
    for _ in range(attempts):
        start = rng.randrange(g.n)
        size = rng.randint(1, max_size)
        cur = 1 << start
        while cur.bit_count() < size:
            frontier = g.neighborhood(cur)
            if not frontier:
                break
            options = list(iter_bits(frontier))
            cur |= 1 << rng.choice(options)
        closed = cur | g.neighborhood(cur)
        if cur not in kept and all(k & closed for k in kept):
            kept.append(cur)
    return Bramble(tuple(frozenset(iter_bits(m)) for m in kept))
