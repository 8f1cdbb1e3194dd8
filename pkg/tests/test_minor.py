import random
from functools import lru_cache

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from minorlab.constructions.grids import grid_prism_model
from minorlab.decomposition import CapExceeded
from minorlab.graph import (
    Graph,
    TwistedPrismSpec,
    canonical_code,
    contract_edge,
    disjoint_union,
    enumerate_graphs_upto,
    graph_from_code,
    make_complete,
    make_complete_binary_tree,
    make_cycle,
    make_grid,
    make_path,
    make_prism,
    make_twisted_prism,
)
from minorlab.minor import (
    MinorModel,
    SearchBudgetExceeded,
    compose_models,
    find_minor_model,
    identity_model,
    max_vertex_disjoint_paths,
    minor_model_problem,
    separates,
    two_disjoint_paths,
    validate_minor_model,
)
from minorlab.random_graphs import erdos_renyi

from strategies import graphs


@lru_cache(maxsize=None)
def minor_closure(code: tuple[int, int]) -> frozenset:
    """Canonical codes of every minor, by repeated deletion and contraction."""
    g = graph_from_code(*code)
    out = {code}
    children = [g.delete_vertex(v) for v in range(g.n)]
    for u, v in g.edges():
        children.append(g.delete_edge(u, v))
        children.append(contract_edge(g, u, v))
    for child in children:
        out |= minor_closure(canonical_code(child))
    return frozenset(out)


def oracle_has_minor(g: Graph, h: Graph) -> bool:
    return canonical_code(h) in minor_closure(canonical_code(g))


TWO_TRIANGLES = disjoint_union([make_cycle(3), make_cycle(3)])


@pytest.mark.parametrize("h", [make_cycle(3), make_cycle(4), make_complete(4), TWO_TRIANGLES],
                         ids=["C3", "C4", "K4", "2C3"])
def test_search_agrees_with_closure_oracle(h):
    for g in enumerate_graphs_upto(6):
        model = find_minor_model(g, h)
        assert (model is not None) == oracle_has_minor(g, h)
        if model is not None:
            assert validate_minor_model(g, h, model)


def test_validation_examples():
    c4 = make_cycle(4)
    assert validate_minor_model(c4, c4, identity_model(c4))
    c3 = make_cycle(3)
    assert not validate_minor_model(c4, c3, MinorModel({0: {0}, 1: {1}, 2: {2}}))
    prism4 = make_prism(4)
    assert validate_minor_model(make_grid(4, 4), prism4, grid_prism_model(1))


def test_validation_reasons():
    c4 = make_cycle(4)
    p2 = make_path(2)
    assert minor_model_problem(c4, p2, MinorModel({0: {0, 1}, 1: {1}})) == "branch sets not disjoint"
    assert minor_model_problem(c4, p2, MinorModel({0: {0, 2}, 1: {1}})) == "branch set of 0 not connected"
    assert minor_model_problem(c4, p2, MinorModel({0: {0}, 1: {2}})) == "edge 0-1 not realized"
    assert minor_model_problem(c4, p2, MinorModel({0: set(), 1: {2}})) == "branch set of 0 is empty"
    with pytest.raises(KeyError):
        minor_model_problem(c4, p2, MinorModel({0: {0}}))
    with pytest.raises(IndexError):
        minor_model_problem(c4, p2, MinorModel({0: {0}, 1: {9}}))


def test_search_examples():
    k5 = make_complete(5)
    c4 = make_cycle(4)
    model = find_minor_model(k5, c4)
    assert model is not None and validate_minor_model(k5, c4, model)
    assert find_minor_model(make_complete_binary_tree(3), make_cycle(3)) is None


def test_drawn_twisted_eight_prism_has_no_four_by_four_grid():
    # same vertex and edge counts, but a cubic graph cannot contract to one with degree-2 corners
    drawn = make_twisted_prism(TwistedPrismSpec(8, (3, 5, 2, 1, 8, 7, 4, 6)))
    assert find_minor_model(drawn, make_grid(4, 4), max_h=16) is None
    assert find_minor_model(drawn, make_grid(3, 3), max_h=16) is not None


def test_caps_and_budget_are_distinct_from_none():
    with pytest.raises(CapExceeded):
        find_minor_model(make_complete(5), make_complete(11))
    with pytest.raises(CapExceeded):
        find_minor_model(make_grid(7, 7), make_cycle(3))
    with pytest.raises(SearchBudgetExceeded):
        find_minor_model(make_grid(5, 5), make_complete(5), budget=1000)


def test_transitivity_grid_prism_cycle():
    grid = make_grid(4, 4)
    prism = make_prism(4)
    outer = grid_prism_model(1)
    for k in (3, 4, 5, 8):
        inner = find_minor_model(prism, make_cycle(k))
        assert inner is not None
        assert validate_minor_model(grid, make_cycle(k), compose_models(inner, outer))


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=7), st.integers(3, 5))
def test_returned_models_always_validate(g, k):
    h = make_cycle(k)
    model = find_minor_model(g, h)
    if model is not None:
        assert validate_minor_model(g, h, model)


def test_model_certificate_round_trip():
    model = grid_prism_model(1)
    obj = model.to_obj(make_prism(4))
    assert obj["type"] == "minor_model"
    assert MinorModel.from_obj(obj) == model


# ---------------------------------------------------------------- Menger


def nx_disjoint_path_count(g: Graph, s, t) -> int:
    out = nx.Graph()
    out.add_nodes_from(range(g.n))
    out.add_edges_from(g.edges())
    out.add_edges_from(("src", v) for v in s)
    out.add_edges_from(("snk", v) for v in t)
    return nx.node_connectivity(out, "src", "snk")


def check_witness(g, s, t, w):
    assert len(w.paths) == len(w.cut)
    assert separates(g, s, t, w.cut)
    used = set()
    for p in w.paths:
        assert p[0] in s and p[-1] in t
        assert all(g.has_edge(a, b) for a, b in zip(p, p[1:]))
        assert not used & set(p)
        used |= set(p)


def test_menger_examples():
    w = max_vertex_disjoint_paths(make_complete(4), [0], [3])
    assert len(w) == 1 and w.cut == {0}
    for ell in (3, 6, 12):
        w = max_vertex_disjoint_paths(make_prism(ell), range(ell), range(ell, 2 * ell))
        assert len(w) == ell
    g = make_grid(3, 3)
    w = max_vertex_disjoint_paths(g, [0, 1, 2], [6, 7, 8])
    assert len(w) == 3
    check_witness(g, {0, 1, 2}, {6, 7, 8}, w)


def test_menger_against_networkx():
    rng = random.Random(17)
    for _ in range(300):
        n = rng.randint(2, 20)
        g = erdos_renyi(n, rng.uniform(0.05, 0.4), rng)
        verts = list(range(n))
        rng.shuffle(verts)
        a = rng.randint(1, n - 1)
        b = rng.randint(1, n - a)
        s, t = set(verts[:a]), set(verts[a:a + b])
        w = max_vertex_disjoint_paths(g, s, t)
        check_witness(g, s, t, w)
        assert len(w) == nx_disjoint_path_count(g, s, t)


# ---------------------------------------------------------------- two disjoint paths


def brute_two_paths(g: Graph, s1, t1, s2, t2) -> bool:
    def paths(a, b, banned):
        stack = [[a]]
        while stack:
            p = stack.pop()
            if p[-1] == b:
                yield p
                continue
            for u in g.neighbors(p[-1]):
                if u not in p and u not in banned:
                    stack.append(p + [u])

    for p in paths(s1, t1, {s2, t2}):
        if next(paths(s2, t2, set(p)), None) is not None:
            return True
    return False


def test_two_paths_examples():
    c4 = make_cycle(4)
    p1, p2 = two_disjoint_paths(c4, 0, 1, 2, 3)
    assert p1 == [0, 1] and p2 == [2, 3]
    assert two_disjoint_paths(c4, 0, 2, 1, 3) is None
    k4 = make_complete(4)
    for perm in [(0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2), (3, 2, 1, 0)]:
        assert two_disjoint_paths(k4, *perm) is not None


def test_two_paths_against_brute_force():
    rng = random.Random(23)
    for _ in range(300):
        n = rng.randint(4, 9)
        g = erdos_renyi(n, rng.uniform(0.2, 0.7), rng)
        s1, t1, s2, t2 = rng.sample(range(n), 4)
        found = two_disjoint_paths(g, s1, t1, s2, t2)
        assert (found is not None) == brute_two_paths(g, s1, t1, s2, t2)
        if found:
            p1, p2 = found
            assert p1[0] == s1 and p1[-1] == t1 and p2[0] == s2 and p2[-1] == t2
            assert not set(p1) & set(p2)
            assert all(g.has_edge(a, b) for p in found for a, b in zip(p, p[1:]))


def test_two_paths_rejects_repeated_terminals():
    with pytest.raises(ValueError):
        two_disjoint_paths(make_cycle(4), 0, 0, 1, 2)
