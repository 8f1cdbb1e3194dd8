"""Minor models, exact minor search, Menger paths and the two-disjoint-paths decision."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .decomposition import CapExceeded
from .graph import Graph, iter_bits, mask_of

MINOR_H_CAP = 10
MINOR_G_CAP = 40
MINOR_BUDGET = 2_000_000
TWO_PATHS_CAP = 30


class SearchBudgetExceeded(CapExceeded):
    """Minor search stopped before deciding; never to be read as 'no minor'."""


@dataclass(frozen=True)
class MinorModel:
    branch_sets: Mapping[int, frozenset]

    def __post_init__(self):
        object.__setattr__(self, "branch_sets",
                           {int(k): frozenset(v) for k, v in sorted(self.branch_sets.items())})

    def __getitem__(self, x: int) -> frozenset:
        return self.branch_sets[x]

    def to_obj(self, h: Graph) -> dict:
        from .formats import graph_to_obj

        return {
            "type": "minor_model",
            "h": graph_to_obj(h),
            "branch_sets": {str(k): sorted(v) for k, v in self.branch_sets.items()},
        }

    @classmethod
    def from_obj(cls, obj: dict) -> "MinorModel":
        return cls({int(k): frozenset(int(v) for v in vs) for k, vs in obj["branch_sets"].items()})


def minor_model_problem(g: Graph, h: Graph, model: MinorModel) -> str | None:
    """Why ``model`` is not an ``h``-model in ``g``, or ``None``.

    Raises ``KeyError`` when an ``h`` vertex is unmapped and ``IndexError`` on
    out-of-range indices.
    """
    sets = model.branch_sets
    for x in sets:
        if not 0 <= x < h.n:
            raise IndexError(f"model maps unknown H-vertex {x}")
    missing = [x for x in range(h.n) if x not in sets]
    if missing:
        raise KeyError(f"H-vertices {missing} have no branch set")
    masks = {}
    for x, s in sets.items():
        for v in s:
            if not 0 <= v < g.n:
                raise IndexError(f"branch set vertex {v} out of range for n={g.n}")
        masks[x] = mask_of(s)
    seen = 0
    for x in range(h.n):
        if masks[x] & seen:
            return "branch sets not disjoint"
        seen |= masks[x]
    for x in range(h.n):
        if not masks[x]:
            return f"branch set of {x} is empty"
        if not g.is_connected_mask(masks[x]):
            return f"branch set of {x} not connected"
    for x, y in h.edges():
        if not g.neighborhood(masks[x]) & masks[y]:
            return f"edge {x}-{y} not realized"
    return None


def validate_minor_model(g: Graph, h: Graph, model: MinorModel) -> bool:
    return minor_model_problem(g, h, model) is None


def compose_models(outer: MinorModel, inner: MinorModel) -> MinorModel:
    """``outer`` models H in M and ``inner`` models M in G; the result models H in G."""
    return MinorModel({x: frozenset().union(*(inner[m] for m in ms)) for x, ms in outer.branch_sets.items()})


def identity_model(g: Graph) -> MinorModel:
    return MinorModel({v: frozenset([v]) for v in range(g.n)})


# ---------------------------------------------------------------- minor search


def _reduce_host(g: Graph, min_deg_h: int) -> tuple[list[int], list[int]]:
    """Shrink the host without losing any minor of minimum degree ``min_deg_h``.

    Returns adjacency masks over original indices and, per vertex, the mask of
    original vertices it stands for (0 for deleted vertices).
    """
    adj = list(g.adj)
    rep = [1 << v for v in range(g.n)]
    alive = g.all_mask
    changed = True
    while changed:
        changed = False
        for v in iter_bits(alive):
            d = adj[v].bit_count()
            if min_deg_h >= 2 and d <= 1:
                for u in iter_bits(adj[v]):
                    adj[u] &= ~(1 << v)
                adj[v] = 0
                rep[v] = 0
                alive &= ~(1 << v)
                changed = True
            elif min_deg_h >= 3 and d == 2:
                a, b = iter_bits(adj[v])
                adj[a] = (adj[a] & ~(1 << v)) | (1 << b)
                adj[b] = (adj[b] & ~(1 << v)) | (1 << a)
                rep[a] |= rep[v]
                adj[v] = 0
                rep[v] = 0
                alive &= ~(1 << v)
                changed = True
    return adj, rep


def _connected_sets(adj: Sequence[int], root: int, allowed: int, size: int) -> Iterator[int]:
    """Connected vertex masks of exactly ``size`` containing ``root`` inside ``allowed``."""

    def rec(cur: int, cand: int, banned: int, left: int) -> Iterator[int]:
        if left == 0:
            yield cur
            return
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            banned |= low
            nxt = (cand | adj[v]) & allowed & ~cur & ~banned
            yield from rec(cur | low, nxt, banned, left - 1)

    start = 1 << root
    yield from rec(start, adj[root] & allowed & ~start, start, size - 1)


def _h_order(h: Graph) -> list[int]:
    order: list[int] = []
    placed = 0
    while len(order) < h.n:
        best = max((v for v in range(h.n) if not placed >> v & 1),
                   key=lambda v: ((h.adj[v] & placed).bit_count(), h.degree(v), -v))
        order.append(best)
        placed |= 1 << best
    return order


def find_minor_model(g: Graph, h: Graph, max_h: int = MINOR_H_CAP, max_g: int = MINOR_G_CAP,
                     budget: int = MINOR_BUDGET) -> MinorModel | None:
    """An ``h``-model in ``g`` or ``None``; exhaustive within the caps and budget.

    H-vertices are placed one at a time, most-constrained first. Each branch
    set is a connected set of unused host vertices touching the branch sets of
    already-placed H-neighbours, tried smallest first.
    """
    if h.n > max_h:
        raise CapExceeded(f"minor search capped at |V(H)|={max_h}, got {h.n}")
    if g.n > max_g:
        raise CapExceeded(f"minor search capped at |V(G)|={max_g}, got {g.n}")
    if h.n == 0:
        return MinorModel({})
    if h.n > g.n or h.m > g.m:
        return None

    min_deg = min(h.degrees())
    adj, rep = _reduce_host(g, min_deg)
    free0 = mask_of(v for v in range(g.n) if rep[v])
    if free0.bit_count() < h.n:
        return None

    order = _h_order(h)
    assigned: dict[int, int] = {}
    steps = [0]
    hdeg = h.degrees()

    def neighbourhood(mask: int) -> int:
        out = 0
        for v in iter_bits(mask):
            out |= adj[v]
        return out & ~mask

    def host_components(mask: int) -> list[int]:
        comps = []
        while mask:
            seen = mask & -mask
            frontier = seen
            while frontier:
                nxt = 0
                for v in iter_bits(frontier):
                    nxt |= adj[v]
                frontier = nxt & mask & ~seen
                seen |= frontier
            comps.append(seen)
            mask &= ~seen
        return comps

    def feasible(free: int) -> bool:
        for y, my in assigned.items():
            pending = sum(1 for x in iter_bits(h.adj[y]) if x not in assigned)
            if pending and (neighbourhood(my) & free).bit_count() < pending:
                return False
        # each connected piece of the unplaced H must fit inside one free region
        placed = sum(1 << y for y in assigned)
        pieces = h.components(h.all_mask & ~placed)
        if not pieces:
            return True
        regions = host_components(free)
        for piece in pieces:
            touch = [neighbourhood(assigned[y]) for y in iter_bits(h.neighborhood(piece) & placed)]
            size = piece.bit_count()
            if not any(r.bit_count() >= size and all(r & t for t in touch) for r in regions):
                return False
        return True

    def place(k: int, free: int) -> bool:
        if k == h.n:
            return True
        x = order[k]
        remaining = h.n - k - 1
        max_size = free.bit_count() - remaining
        placed_nbrs = [y for y in iter_bits(h.adj[x]) if y in assigned]
        if placed_nbrs:
            anchors = min((neighbourhood(assigned[y]) & free for y in placed_nbrs), key=int.bit_count)
        else:
            anchors = free
        touch = [neighbourhood(assigned[y]) for y in placed_nbrs]
        unplaced_nbrs = sum(1 for y in iter_bits(h.adj[x]) if y not in assigned)
        for size in range(1, max_size + 1):
            banned_roots = 0
            for r in iter_bits(anchors):
                allowed = free & ~banned_roots
                banned_roots |= 1 << r
                for cand in _connected_sets(adj, r, allowed, size):
                    steps[0] += 1
                    if steps[0] > budget:
                        raise SearchBudgetExceeded(f"minor search exceeded {budget} steps")
                    if any(not cand & t for t in touch):
                        continue
                    rest = free & ~cand
                    if unplaced_nbrs and (neighbourhood(cand) & rest).bit_count() < unplaced_nbrs:
                        continue
                    if hdeg[x] and not neighbourhood(cand) & (rest | sum_masks(placed_nbrs)):
                        continue
                    assigned[x] = cand
                    if feasible(rest) and place(k + 1, rest):
                        return True
                    del assigned[x]
        return False

    def sum_masks(ys: Sequence[int]) -> int:
        out = 0
        for y in ys:
            out |= assigned[y]
        return out

    if not place(0, free0):
        return None
    model = MinorModel({x: frozenset(v for u in iter_bits(m) for v in iter_bits(rep[u]))
                        for x, m in assigned.items()})
    problem = minor_model_problem(g, h, model)
    if problem:
        raise AssertionError(f"minor search produced an invalid model: {problem}")
    return model


def has_minor(g: Graph, h: Graph, **kwargs) -> bool:
    return find_minor_model(g, h, **kwargs) is not None


# ---------------------------------------------------------------- Menger


@dataclass(frozen=True)
class MengerWitness:
    paths: tuple[tuple[int, ...], ...]
    cut: frozenset

    def __len__(self) -> int:
        return len(self.paths)


def max_vertex_disjoint_paths(g: Graph, s: Sequence[int], t: Sequence[int]) -> MengerWitness:
    """Maximum family of pairwise vertex-disjoint S-T paths with a cut of equal size.

    Unit vertex capacities via splitting ``v`` into ``2v -> 2v+1``.
    """
    sset, tset = set(s), set(t)
    if sset & tset:
        raise ValueError("S and T must be disjoint")
    n = g.n
    src, snk = 2 * n, 2 * n + 1
    cap: dict[int, dict[int, int]] = {x: {} for x in range(2 * n + 2)}
    original: dict[tuple[int, int], int] = {}

    unbounded = n + 1

    def arc(a: int, b: int, c: int) -> None:
        cap[a][b] = c
        cap[b].setdefault(a, 0)
        original[a, b] = c

    # only the vertex arcs are finite, so every minimum cut is a vertex set
    for v in range(n):
        arc(2 * v, 2 * v + 1, 1)
    for u, v in g.edges():
        arc(2 * u + 1, 2 * v, unbounded)
        arc(2 * v + 1, 2 * u, unbounded)
    for v in sset:
        arc(src, 2 * v, unbounded)
    for v in tset:
        arc(2 * v + 1, snk, unbounded)

    def bfs() -> dict[int, int]:
        parent = {src: src}
        queue = deque([src])
        while queue:
            a = queue.popleft()
            for b, c in cap[a].items():
                if c > 0 and b not in parent:
                    parent[b] = a
                    queue.append(b)
        return parent

    while True:
        parent = bfs()
        if snk not in parent:
            break
        b = snk
        while b != src:
            a = parent[b]
            cap[a][b] -= 1
            cap[b][a] += 1
            b = a

    reach = set(parent)
    cut = frozenset(v for v in range(n) if 2 * v in reach and 2 * v + 1 not in reach)

    # no original arc has an original reverse, so flow = capacity used
    flow_next: dict[int, list[int]] = {}
    for (a, b), c in original.items():
        flow_next.setdefault(a, []).extend([b] * (c - cap[a][b]) if c - cap[a][b] > 0 else [])
    paths = []
    for start in flow_next.get(src, []):
        walk = []
        node = start
        while node != snk:
            if node % 2 == 0:
                walk.append(node // 2)
            node = flow_next[node].pop()
        first_t = next(i for i, v in enumerate(walk) if v in tset)
        walk = walk[: first_t + 1]
        last_s = max(i for i, v in enumerate(walk) if v in sset)
        paths.append(tuple(walk[last_s:]))
    paths.sort()
    return MengerWitness(tuple(paths), cut)


def separates(g: Graph, s: Sequence[int], t: Sequence[int], cut: Sequence[int]) -> bool:
    """No S-T path avoids ``cut`` (cut vertices may lie in S or T)."""
    blocked = mask_of(cut)
    allowed = g.all_mask & ~blocked
    targets = mask_of(t) & allowed
    for v in s:
        if blocked >> v & 1:
            continue
        if g.reach(v, allowed) & targets:
            return False
    return True


# ---------------------------------------------------------------- two disjoint paths


def _bfs_path(g: Graph, a: int, b: int, allowed: int) -> list[int] | None:
    parent = {a: a}
    queue = deque([a])
    while queue:
        u = queue.popleft()
        if u == b:
            path = [b]
            while path[-1] != a:
                path.append(parent[path[-1]])
            return path[::-1]
        for w in iter_bits(g.adj[u] & allowed):
            if w not in parent:
                parent[w] = u
                queue.append(w)
    return None


def two_disjoint_paths(g: Graph, s1: int, t1: int, s2: int, t2: int,
                       cap: int = TWO_PATHS_CAP) -> tuple[list[int], list[int]] | None:
    """Vertex-disjoint ``s1-t1`` and ``s2-t2`` paths, or ``None`` when none exist.

    Only induced ``s1-t1`` paths are tried: shortcutting a solution's first
    path along chords keeps it disjoint from the second.
    """
    if len({s1, t1, s2, t2}) != 4:
        raise ValueError("terminals must be four distinct vertices")
    if g.n > cap:
        raise CapExceeded(f"two-disjoint-paths search capped at n={cap}, got n={g.n}")
    full = g.all_mask
    path = [s1]

    def rest_ok(used: int) -> bool:
        return bool(g.reach(s2, full & ~used) >> t2 & 1)

    def extend(used: int) -> list[int] | None:
        end = path[-1]
        if end == t1:
            second = _bfs_path(g, s2, t2, full & ~used)
            return second
        if not rest_ok(used):
            return None
        earlier = used & ~(1 << end)
        for w in iter_bits(g.adj[end] & ~used):
            if w in (s2, t2) or g.adj[w] & earlier:
                continue
            path.append(w)
            found = extend(used | (1 << w))
            if found:
                return found
            path.pop()
        return None

    second = extend(1 << s1)
    if second is None:
        return None
    return list(path), second
