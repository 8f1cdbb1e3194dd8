"""Tree and path decompositions: exact solvers, heuristic bounds, and a checker.

The exact solvers are decision searches over sets of already-eliminated
vertices (treewidth) or already-placed vertices (vertex separation, which is
pathwidth), tried for increasing widths between a heuristic lower and upper
bound. Failed sets are memoised per width.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .graph import Graph, iter_bits, mask_of

TREEWIDTH_CAP = 25
PATHWIDTH_CAP = 20


class CapExceeded(RuntimeError):
    """An exact search was asked to run above its size cap."""


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple[frozenset, ...]
    tree_edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "bags", tuple(frozenset(b) for b in self.bags))
        object.__setattr__(self, "tree_edges", tuple((int(i), int(j)) for i, j in self.tree_edges))

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def to_obj(self) -> dict:
        return {
            "type": "tree_decomposition",
            "width": self.width,
            "bags": [sorted(b) for b in self.bags],
            "tree_edges": [list(e) for e in self.tree_edges],
        }

    @classmethod
    def from_obj(cls, obj: dict) -> "TreeDecomposition":
        return cls(tuple(frozenset(int(v) for v in b) for b in obj["bags"]),
                   tuple((int(i), int(j)) for i, j in obj["tree_edges"]))


@dataclass(frozen=True)
class PathDecomposition:
    bags: tuple[frozenset, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "bags", tuple(frozenset(b) for b in self.bags))

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def as_tree(self) -> TreeDecomposition:
        return TreeDecomposition(self.bags, tuple((i, i + 1) for i in range(len(self.bags) - 1)))


# ---------------------------------------------------------------- validation


def tree_decomposition_problem(g: Graph, td: TreeDecomposition) -> str | None:
    """Reason the decomposition is invalid for ``g``, or ``None`` if it is valid.

    Raises ``IndexError`` for vertex or node indices out of range.
    """
    k = len(td.bags)
    for bag in td.bags:
        for v in bag:
            if not 0 <= v < g.n:
                raise IndexError(f"bag vertex {v} out of range for n={g.n}")
    for i, j in td.tree_edges:
        if not (0 <= i < k and 0 <= j < k):
            raise IndexError(f"tree edge ({i}, {j}) out of range for {k} bags")
    if k == 0:
        return None if g.n == 0 else "no bags"
    try:
        tree = Graph.from_edges(k, td.tree_edges)
    except ValueError:
        return "tree edges contain a loop"
    if len(td.tree_edges) != k - 1 or tree.m != k - 1 or not tree.is_connected():
        return "tree edges do not form a tree"
    bag_masks = [mask_of(b) for b in td.bags]
    for v in range(g.n):
        nodes = mask_of(i for i in range(k) if bag_masks[i] >> v & 1)
        if not nodes:
            return f"vertex {v} is in no bag"
        if not tree.is_connected_mask(nodes):
            return f"bags containing vertex {v} are not connected"
    for u, v in g.edges():
        both = (1 << u) | (1 << v)
        if not any(b & both == both for b in bag_masks):
            return f"edge {u}-{v} is not covered"
    return None


def validate_tree_decomposition(g: Graph, td: TreeDecomposition) -> tuple[bool, int]:
    return tree_decomposition_problem(g, td) is None, td.width


def validate_path_decomposition(g: Graph, pd: PathDecomposition) -> tuple[bool, int]:
    return validate_tree_decomposition(g, pd.as_tree())


# ---------------------------------------------------------------- witnesses


def decomposition_from_ordering(g: Graph, order: Sequence[int]) -> TreeDecomposition:
    """Bags of the chordal completion for an elimination ordering, subsumed bags merged away."""
    if g.n == 0:
        return TreeDecomposition((), ())
    position = {v: i for i, v in enumerate(order)}
    adj = list(g.adj)
    bags = {}
    parent = {}
    for v in order:
        later = adj[v]
        bags[v] = later | (1 << v)
        for u in iter_bits(later):
            adj[u] |= later & ~(1 << u)
            adj[u] &= ~(1 << v)
        if later:
            parent[v] = min(iter_bits(later), key=position.__getitem__)
    roots = [v for v in order if v not in parent]
    for a, b in zip(roots, roots[1:]):
        parent[a] = b

    # merge a bag into its parent (or a child into it) when one contains the other
    alive = list(order)
    changed = True
    while changed:
        changed = False
        for v in list(alive):
            p = parent.get(v)
            if p is None:
                continue
            if bags[v] & ~bags[p] == 0:
                for c in alive:
                    if parent.get(c) == v:
                        parent[c] = p
                alive.remove(v)
                del parent[v]
                changed = True
            elif bags[p] & ~bags[v] == 0:
                bags[p] = bags[v]
                for c in alive:
                    if parent.get(c) == v:
                        parent[c] = p
                alive.remove(v)
                del parent[v]
                changed = True
    index = {v: i for i, v in enumerate(alive)}
    tree_edges = tuple(sorted((min(index[v], index[p]), max(index[v], index[p])) for v, p in parent.items()))
    return TreeDecomposition(tuple(frozenset(iter_bits(bags[v])) for v in alive), tree_edges)


def ordering_width(g: Graph, order: Sequence[int]) -> int:
    adj = list(g.adj)
    width = -1
    for v in order:
        later = adj[v]
        width = max(width, later.bit_count())
        for u in iter_bits(later):
            adj[u] |= later & ~(1 << u)
            adj[u] &= ~(1 << v)
    return width


# ---------------------------------------------------------------- heuristics


def min_fill_ordering(g: Graph) -> list[int]:
    adj = list(g.adj)
    alive = g.all_mask
    order = []
    while alive:
        best = None
        for v in iter_bits(alive):
            nb = adj[v]
            fill = 0
            for u in iter_bits(nb):
                fill += (nb & ~adj[u] & ~(1 << u)).bit_count()
            key = (fill, nb.bit_count(), v)
            if best is None or key < best:
                best = key
        v = best[2]
        nb = adj[v]
        for u in iter_bits(nb):
            adj[u] |= nb & ~(1 << u)
            adj[u] &= ~(1 << v)
        alive &= ~(1 << v)
        order.append(v)
    return order


def degeneracy(g: Graph) -> int:
    adj = list(g.adj)
    alive = g.all_mask
    best = 0
    while alive:
        v = min(iter_bits(alive), key=lambda x: (adj[x].bit_count(), x))
        best = max(best, adj[v].bit_count())
        for u in iter_bits(adj[v]):
            adj[u] &= ~(1 << v)
        alive &= ~(1 << v)
    return best


def minor_min_width(g: Graph) -> int:
    """Contract a minimum-degree vertex into its neighbour with fewest common neighbours."""
    adj = list(g.adj)
    alive = g.all_mask
    best = 0
    while alive:
        v = min(iter_bits(alive), key=lambda x: (adj[x].bit_count(), x))
        nb = adj[v]
        best = max(best, nb.bit_count())
        if nb:
            u = min(iter_bits(nb), key=lambda x: ((adj[x] & nb).bit_count(), x))
            merged = (adj[u] | nb) & ~(1 << u) & ~(1 << v)
            for w in iter_bits(nb):
                adj[w] &= ~(1 << v)
            adj[u] = merged
            for w in iter_bits(merged):
                adj[w] |= 1 << u
        alive &= ~(1 << v)
        adj[v] = 0
    return best


def treewidth_lower_bound(g: Graph) -> int:
    if g.n == 0:
        return -1
    return max(degeneracy(g), minor_min_width(g))


def treewidth_bounds_heuristic(g: Graph) -> tuple[int, int, TreeDecomposition]:
    if g.n == 0:
        return -1, -1, TreeDecomposition((), ())
    order = min_fill_ordering(g)
    td = decomposition_from_ordering(g, order)
    return treewidth_lower_bound(g), td.width, td


# ---------------------------------------------------------------- exact treewidth


def _tw_decide(g: Graph, k: int) -> list[int] | None:
    """An elimination ordering of width at most ``k``, or ``None``."""
    n = g.n
    full = g.all_mask
    failed: set[int] = set()
    adj = g.adj

    def fill_neighbours(eliminated: int, v: int) -> int:
        comp = g.reach(v, eliminated | (1 << v))
        out = 0
        for u in iter_bits(comp):
            out |= adj[u]
        return out & ~eliminated & ~(1 << v)

    def is_clique(eliminated: int, nb: int) -> bool:
        # in the graph left after eliminating a set, u and w are adjacent iff
        # w is a fill neighbour of u
        for u in iter_bits(nb):
            rest = nb & ~(1 << u)
            if rest & ~fill_neighbours(eliminated, u):
                return False
        return True

    order: list[int] = []

    def search(eliminated: int) -> bool:
        if n - eliminated.bit_count() <= k + 1:
            order.extend(iter_bits(full & ~eliminated))
            return True
        if eliminated in failed:
            return False
        cands = []
        for v in iter_bits(full & ~eliminated):
            nb = fill_neighbours(eliminated, v)
            q = nb.bit_count()
            if q <= k:
                cands.append((q, v, nb))
        cands.sort()
        # a simplicial vertex of low enough degree can always be eliminated first
        for q, v, nb in cands:
            if q <= 1 or is_clique(eliminated, nb):
                cands = [(q, v, nb)]
                break
        for _, v, _ in cands:
            order.append(v)
            if search(eliminated | (1 << v)):
                return True
            order.pop()
        failed.add(eliminated)
        return False

    return order if search(0) else None


def _component_treewidth(g: Graph) -> tuple[int, list[int]]:
    lower = treewidth_lower_bound(g)
    order = min_fill_ordering(g)
    upper = ordering_width(g, order)
    for k in range(max(lower, 0), upper):
        found = _tw_decide(g, k)
        if found is not None:
            return k, found
    return upper, order


def exact_treewidth(g: Graph, cap: int = TREEWIDTH_CAP) -> tuple[int, TreeDecomposition]:
    """Exact treewidth with a validating decomposition; ``-1`` for the empty graph."""
    if g.n > cap:
        raise CapExceeded(f"exact treewidth capped at n={cap}, got n={g.n}")
    if g.n == 0:
        return -1, TreeDecomposition((), ())
    width = 0
    order: list[int] = []
    for comp in g.components():
        verts = list(iter_bits(comp))
        w, local = _component_treewidth(g.induced(verts))
        width = max(width, w)
        order.extend(verts[i] for i in local)
    return width, decomposition_from_ordering(g, order)


def treewidth(g: Graph) -> int:
    return exact_treewidth(g)[0]


# ---------------------------------------------------------------- exact pathwidth


def _boundary(g: Graph, placed: int) -> int:
    out = 0
    for u in iter_bits(placed):
        if g.adj[u] & ~placed:
            out |= 1 << u
    return out


def _vs_decide(g: Graph, k: int) -> list[int] | None:
    full = g.all_mask
    failed: set[int] = set()
    layout: list[int] = []

    def search(placed: int) -> bool:
        if placed == full:
            return True
        if placed in failed:
            return False
        cands = []
        for v in iter_bits(full & ~placed):
            nxt = placed | (1 << v)
            b = _boundary(g, nxt).bit_count()
            if b <= k:
                cands.append((b, v))
        cands.sort()
        for _, v in cands:
            layout.append(v)
            if search(placed | (1 << v)):
                return True
            layout.pop()
        failed.add(placed)
        return False

    return layout if search(0) else None


def path_decomposition_from_layout(g: Graph, layout: Sequence[int]) -> PathDecomposition:
    bags = []
    placed = 0
    for v in layout:
        bags.append(frozenset(iter_bits(_boundary(g, placed) | (1 << v))))
        placed |= 1 << v
    kept: list[frozenset] = []
    for b in bags:
        if kept and b <= kept[-1]:
            continue
        if kept and kept[-1] <= b:
            kept[-1] = b
        else:
            kept.append(b)
    return PathDecomposition(tuple(kept))


def exact_pathwidth(g: Graph, cap: int = PATHWIDTH_CAP) -> tuple[int, PathDecomposition]:
    if g.n > cap:
        raise CapExceeded(f"exact pathwidth capped at n={cap}, got n={g.n}")
    if g.n == 0:
        return -1, PathDecomposition(())
    width = 0
    layout: list[int] = []
    for comp in g.components():
        verts = list(iter_bits(comp))
        sub = g.induced(verts)
        k = max(treewidth_lower_bound(sub), 0)
        while True:
            found = _vs_decide(sub, k)
            if found is not None:
                break
            k += 1
        width = max(width, k)
        layout.extend(verts[i] for i in found)
    return width, path_decomposition_from_layout(g, layout)
