"""Seeded random graph generators used by the verification harness and tests."""

from __future__ import annotations

import random

from .graph import Graph


def erdos_renyi(n: int, p: float, rng: random.Random) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


def random_regular(n: int, d: int, rng: random.Random, tries: int = 1000) -> Graph:
    """Uniform-ish simple d-regular graph by the pairing model with rejection."""
    if n * d % 2 or d >= n:
        raise ValueError(f"no simple {d}-regular graph on {n} vertices")
    for _ in range(tries):
        stubs = [v for v in range(n) for _ in range(d)]
        rng.shuffle(stubs)
        edges = set()
        ok = True
        for a, b in zip(stubs[::2], stubs[1::2]):
            e = (min(a, b), max(a, b))
            if a == b or e in edges:
                ok = False
                break
            edges.add(e)
        if ok:
            return Graph.from_edges(n, sorted(edges))
    raise RuntimeError(f"pairing model failed {tries} times for n={n}, d={d}")


def random_connected(n: int, extra_p: float, rng: random.Random) -> Graph:
    """Random spanning tree plus independent extra edges."""
    edges = {(min(v, rng.randrange(v)), v) for v in range(1, n)}
    edges |= {(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < extra_p}
    return Graph.from_edges(n, sorted(edges))


def with_hamiltonian_path(n: int, extra_p: float, rng: random.Random) -> tuple[Graph, list[int]]:
    """Random graph containing a known Hamiltonian path, returned alongside it."""
    order = list(range(n))
    rng.shuffle(order)
    edges = {(min(a, b), max(a, b)) for a, b in zip(order, order[1:])}
    edges |= {(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < extra_p}
    return Graph.from_edges(n, sorted(edges)), order
