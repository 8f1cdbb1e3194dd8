"""Simple undirected graphs on vertices ``0..n-1`` with bitmask adjacency.

Adjacency rows are Python ints used as bitsets, so the same code path serves
the 10-vertex prisms and the 150-vertex twisted prisms alike.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

ENUMERATION_CAP = 8


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    """Immutable simple graph. Labels are decoration only and never compared."""

    __slots__ = ("n", "adj", "labels")

    def __init__(self, n: int, adj: Sequence[int] | None = None, labels: Sequence[str] | None = None):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        self.n = n
        self.adj = tuple(adj) if adj is not None else (0,) * n
        if len(self.adj) != n:
            raise ValueError("adjacency length does not match vertex count")
        self.labels = tuple(labels) if labels is not None else None
        if self.labels is not None and len(self.labels) != n:
            raise ValueError("label count does not match vertex count")
        full = (1 << n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"neighbor of {v} out of range")
            if row >> v & 1:
                raise ValueError(f"self-loop at {v}")
            for u in iter_bits(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {v} and {u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], labels=None) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, adj, labels)

    @property
    def m(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in iter_bits(self.adj[u] >> (u + 1) << (u + 1))]

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    @property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def with_labels(self, labels: Sequence[str] | None) -> "Graph":
        return Graph(self.n, self.adj, labels)

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph; vertex ``vertices[k]`` becomes ``k``."""
        index = {v: k for k, v in enumerate(vertices)}
        adj = [0] * len(vertices)
        for k, v in enumerate(vertices):
            for u in iter_bits(self.adj[v]):
                if u in index:
                    adj[k] |= 1 << index[u]
        labels = [self.labels[v] for v in vertices] if self.labels else None
        return Graph(len(vertices), adj, labels)

    def delete_vertex(self, v: int) -> "Graph":
        return self.induced([u for u in range(self.n) if u != v])

    def delete_edge(self, u: int, v: int) -> "Graph":
        if not self.has_edge(u, v):
            raise ValueError(f"({u}, {v}) is not an edge")
        adj = list(self.adj)
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
        return Graph(self.n, adj, self.labels)

    def add_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        return Graph.from_edges(self.n, itertools.chain(self.edges(), edges), self.labels)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Vertex ``v`` becomes ``perm[v]``."""
        adj = [0] * self.n
        for v in range(self.n):
            adj[perm[v]] = mask_of(perm[u] for u in iter_bits(self.adj[v]))
        return Graph(self.n, adj)

    # -- connectivity helpers over vertex masks --

    def reach(self, start: int, allowed: int) -> int:
        """Vertices reachable from ``start`` inside ``allowed`` (start included)."""
        seen = 1 << start
        frontier = seen
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= self.adj[v]
            nxt &= allowed & ~seen
            seen |= nxt
            frontier = nxt
        return seen

    def neighborhood(self, mask: int) -> int:
        out = 0
        for v in iter_bits(mask):
            out |= self.adj[v]
        return out & ~mask

    def is_connected_mask(self, mask: int) -> bool:
        if not mask:
            return False
        start = (mask & -mask).bit_length() - 1
        return self.reach(start, mask) == mask

    def components(self, mask: int | None = None) -> list[int]:
        rest = self.all_mask if mask is None else mask
        comps = []
        while rest:
            start = (rest & -rest).bit_length() - 1
            comp = self.reach(start, rest)
            comps.append(comp)
            rest &= ~comp
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or self.is_connected_mask(self.all_mask)

    def is_forest(self) -> bool:
        return self.m == self.n - len(self.components())


# ---------------------------------------------------------------- generators


def grid_vertex(i: int, j: int, cols: int) -> int:
    return i * cols + j


def make_grid(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise ValueError("grid sides must be positive")
    edges = []
    for i in range(a):
        for j in range(b):
            if j + 1 < b:
                edges.append((i * b + j, i * b + j + 1))
            if i + 1 < a:
                edges.append((i * b + j, (i + 1) * b + j))
    labels = [f"({i},{j})" for i in range(a) for j in range(b)]
    return Graph.from_edges(a * b, edges, labels)


def make_path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def make_cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def make_complete(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def make_complete_bipartite(s: int, t: int) -> Graph:
    return Graph.from_edges(s + t, [(i, s + j) for i in range(s) for j in range(t)])


def make_star(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def make_petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def make_complete_binary_tree(height: int) -> Graph:
    """Complete binary tree with ``height`` levels below the root."""
    n = 2 ** (height + 1) - 1
    return Graph.from_edges(n, [(v, (v - 1) // 2) for v in range(1, n)])


def make_wheel(k: int) -> Graph:
    """Wheel on ``k`` vertices: hub ``k-1`` joined to a ``(k-1)``-cycle."""
    if k < 4:
        raise ValueError("a wheel needs at least 4 vertices")
    rim = k - 1
    edges = [(i, (i + 1) % rim) for i in range(rim)] + [(i, rim) for i in range(rim)]
    return Graph.from_edges(k, edges)


@dataclass(frozen=True)
class TwistedPrismSpec:
    """Two ``ell``-cycles ``v_1..v_ell`` and ``w_1..w_ell`` plus edges ``v_i w_pi(i)``.

    ``pi`` is stored 1-indexed; vertex ``v_i`` is ``i-1`` and ``w_j`` is ``ell+j-1``.
    """

    ell: int
    pi: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "pi", tuple(int(x) for x in self.pi))
        if self.ell < 3:
            raise ValueError("twisted prism needs ell >= 3")
        if len(self.pi) != self.ell or sorted(self.pi) != list(range(1, self.ell + 1)):
            raise ValueError("pi must be a bijection on 1..ell")

    @classmethod
    def identity(cls, ell: int) -> "TwistedPrismSpec":
        return cls(ell, tuple(range(1, ell + 1)))

    def v(self, i: int) -> int:
        return i - 1

    def w(self, j: int) -> int:
        return self.ell + j - 1


def make_twisted_prism(spec: TwistedPrismSpec) -> Graph:
    ell = spec.ell
    edges = [(i, (i + 1) % ell) for i in range(ell)]
    edges += [(ell + i, ell + (i + 1) % ell) for i in range(ell)]
    edges += [(i - 1, ell + p - 1) for i, p in enumerate(spec.pi, start=1)]
    labels = [f"v{i}" for i in range(1, ell + 1)] + [f"w{j}" for j in range(1, ell + 1)]
    return Graph.from_edges(2 * ell, edges, labels)


def make_prism(ell: int) -> Graph:
    """Cartesian product of K2 and the ell-cycle, built directly."""
    if ell < 3:
        raise ValueError("prism needs ell >= 3")
    edges = []
    for side in (0, 1):
        for i in range(ell):
            edges.append((side * ell + i, side * ell + (i + 1) % ell))
    edges += [(i, ell + i) for i in range(ell)]
    return Graph.from_edges(2 * ell, edges)


# ---------------------------------------------------------------- operations


def disjoint_union(parts: Sequence[Graph]) -> Graph:
    edges = []
    labels = []
    offset = 0
    for g in parts:
        edges.extend((u + offset, v + offset) for u, v in g.edges())
        labels.extend(g.labels or [""] * g.n)
        offset += g.n
    keep = labels if any(labels) else None
    return Graph.from_edges(offset, edges, keep)


def _edge_key(e) -> tuple[int, int]:
    u, v = e
    return (u, v) if u < v else (v, u)


def subdivide(g: Graph, counts: Mapping[tuple[int, int], int]) -> Graph:
    """Replace every edge ``e`` by a path with ``counts[e]`` internal vertices.

    New vertices are appended edge by edge in ``g.edges()`` order, running
    from the smaller endpoint to the larger one.
    """
    norm = {}
    for e, c in counts.items():
        key = _edge_key(e)
        if key in norm:
            raise ValueError(f"edge {key} given twice")
        if c < 0:
            raise ValueError(f"negative subdivision count on {key}")
        norm[key] = int(c)
    edges = g.edges()
    if set(norm) != set(edges):
        missing = sorted(set(edges) - set(norm))
        extra = sorted(set(norm) - set(edges))
        raise ValueError(f"counts must be keyed by E(g): missing {missing}, extra {extra}")
    n = g.n
    new_edges = []
    for u, v in edges:
        c = norm[(u, v)]
        chain = [u] + list(range(n, n + c)) + [v]
        n += c
        new_edges.extend(zip(chain, chain[1:]))
    return Graph.from_edges(n, new_edges)


def girth(g: Graph) -> int | None:
    """Length of a shortest cycle, or ``None`` for a forest."""
    best = None
    for root in range(g.n):
        depth = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if best is not None and 2 * depth[u] + 1 >= best:
                break
            for w in iter_bits(g.adj[u]):
                if w not in depth:
                    depth[w] = depth[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    length = depth[u] + depth[w] + 1
                    if best is None or length < best:
                        best = length
    return best


def contract_edge(g: Graph, u: int, v: int) -> Graph:
    """Identify ``v`` into ``u``; vertices above ``v`` shift down by one."""
    if not g.has_edge(u, v):
        raise ValueError(f"({u}, {v}) is not an edge")
    merged = (g.adj[u] | g.adj[v]) & ~(1 << u) & ~(1 << v)
    adj = list(g.adj)
    adj[u] = merged
    for w in iter_bits(g.adj[v]):
        if w != u:
            adj[w] = (adj[w] & ~(1 << v)) | (1 << u)
    keep = [w for w in range(g.n) if w != v]
    index = {w: k for k, w in enumerate(keep)}
    new_adj = [mask_of(index[x] for x in iter_bits(adj[w])) for w in keep]
    labels = [g.labels[w] for w in keep] if g.labels else None
    return Graph(g.n - 1, new_adj, labels)


def quotient(g: Graph, parts: Sequence[int]) -> Graph:
    """Graph whose vertices are the given disjoint vertex masks, adjacent when joined by an edge."""
    adj = [0] * len(parts)
    for a, pa in enumerate(parts):
        nb = g.neighborhood(pa)
        for b, pb in enumerate(parts):
            if a != b and nb & pb:
                adj[a] |= 1 << b
    return Graph(len(parts), adj)


# ---------------------------------------------------------------- canonical forms


def _refine(g: Graph) -> list[int]:
    """Isomorphism-invariant vertex colouring by iterated degree refinement."""
    colours = g.degrees()
    while True:
        sigs = [(colours[v], tuple(sorted(colours[u] for u in iter_bits(g.adj[v])))) for v in range(g.n)]
        order = sorted(set(sigs))
        new = [order.index(s) for s in sigs]
        if len(set(new)) == len(set(colours)):
            return new
        colours = new


def _code(g: Graph, perm: Sequence[int]) -> int:
    """Upper-triangle adjacency bit string of ``g`` with position ``i`` holding vertex ``perm[i]``."""
    code = 0
    n = len(perm)
    for i in range(n):
        row = g.adj[perm[i]]
        for j in range(i + 1, n):
            code = code << 1 | (row >> perm[j] & 1)
    return code


def canonical_code(g: Graph) -> tuple[int, int]:
    """``(n, code)`` minimising the adjacency bit string over colour-respecting orders."""
    colours = _refine(g)
    cells = [[v for v in range(g.n) if colours[v] == c] for c in sorted(set(colours))]
    best = None
    for choice in itertools.product(*(itertools.permutations(cell) for cell in cells)):
        perm = [v for part in choice for v in part]
        c = _code(g, perm)
        if best is None or c < best:
            best = c
    return (g.n, 0 if best is None else best)


def graph_from_code(n: int, code: int) -> Graph:
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    edges = [p for k, p in enumerate(pairs) if code >> (len(pairs) - 1 - k) & 1]
    return Graph.from_edges(n, edges)


def canonical_form(g: Graph) -> Graph:
    return graph_from_code(*canonical_code(g))


@lru_cache(maxsize=None)
def _classes(n: int) -> tuple[tuple[int, int], ...]:
    if n == 0:
        return ((0, 0),)
    codes = set()
    for _, code in _classes(n - 1):
        base = graph_from_code(n - 1, code)
        for subset in range(1 << (n - 1)):
            adj = list(base.adj) + [subset]
            for u in iter_bits(subset):
                adj[u] |= 1 << (n - 1)
            codes.add(canonical_code(Graph(n, adj)))
    return tuple(sorted(codes, key=lambda nc: (bin(nc[1]).count("1"), nc[1])))


def enumerate_graphs(n: int) -> Iterator[Graph]:
    """One canonical representative per isomorphism class on ``n`` vertices.

    Ordered by edge count, then canonical code.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > ENUMERATION_CAP:
        raise ValueError(f"enumeration capped at n={ENUMERATION_CAP}")
    for nn, code in _classes(n):
        yield graph_from_code(nn, code)


def enumerate_graphs_upto(n_max: int, n_min: int = 1) -> Iterator[Graph]:
    for n in range(n_min, n_max + 1):
        yield from enumerate_graphs(n)


def is_isomorphic(g: Graph, h: Graph) -> bool:
    """Backtracking isomorphism test with colour-refinement pruning."""
    if g.n != h.n or g.m != h.m or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    both = disjoint_union([g, h])
    colours = _refine(both)
    cg, ch = colours[: g.n], colours[g.n:]
    if sorted(cg) != sorted(ch):
        return False
    order = sorted(range(g.n), key=lambda v: (cg.count(cg[v]), -g.degree(v)))
    image = [-1] * g.n
    used = 0

    def extend(k: int) -> bool:
        nonlocal used
        if k == g.n:
            return True
        v = order[k]
        for w in range(h.n):
            if used >> w & 1 or ch[w] != cg[v]:
                continue
            ok = True
            for u in order[:k]:
                if g.has_edge(u, v) != h.has_edge(image[u], w):
                    ok = False
                    break
            if ok:
                image[v] = w
                used |= 1 << w
                if extend(k + 1):
                    return True
                used &= ~(1 << w)
        image[v] = -1
        return False

    return extend(0)
