import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from minorlab.constructions.cycles import (
    cycle_packing_exact,
    cycle_packing_problem,
    cycle_transversal_exact,
)
from minorlab.constructions.grids import (
    arcs_around,
    band_rows,
    grid_band_cycles,
    grid_hamiltonian_cycle,
    grid_prism_model,
    is_cycle,
)
from minorlab.constructions.monotone import MonotoneWitness, es_monotone, longest_decreasing, longest_increasing
from minorlab.constructions.phi import block_radius, choose_block, scale_side, subdivision_grid_model
from minorlab.constructions.twisted import (
    doubling_permutation,
    find_four_cycle,
    reduce_to_base,
    twisted_prism_grid_construction,
)
from minorlab.graph import (
    Graph,
    TwistedPrismSpec,
    disjoint_union,
    make_complete,
    make_cycle,
    make_grid,
    make_path,
    make_petersen,
    make_prism,
    make_twisted_prism,
    subdivide,
)
from minorlab.minor import MinorModel, compose_models, find_minor_model, identity_model, validate_minor_model
from minorlab.random_graphs import erdos_renyi
from minorlab.suite import random_grid_minor

from strategies import graphs


# ---------------------------------------------------------------- monotone subsequences


def quadratic_longest(seq, increasing):
    best = [1] * len(seq)
    for i in range(len(seq)):
        for j in range(i):
            if (seq[j] < seq[i]) == increasing and seq[j] != seq[i]:
                best[i] = max(best[i], best[j] + 1)
    return max(best, default=0)


def test_monotone_examples():
    w = es_monotone(list(range(1, 11)), 10, 2)
    assert (w.direction, w.length) == ("increasing", 10)
    rng = random.Random(1)
    seq = rng.sample(range(1000), 73)
    w = es_monotone(seq, 9, 10)
    assert w.is_valid_for(seq)
    assert (w.direction, w.length >= 9) == ("increasing", True) or (w.direction, w.length >= 10) == ("decreasing", True)
    perm = rng.sample(range(1, 11), 10)
    assert es_monotone(perm, 4, 4).length >= 4


def test_monotone_errors():
    with pytest.raises(ValueError):
        es_monotone([1, 2, 2, 3, 4], 2, 2)
    with pytest.raises(ValueError):
        es_monotone([1, 2, 3], 3, 3)
    with pytest.raises(ValueError):
        MonotoneWitness((0, 1), "sideways", 2)


@given(st.lists(st.integers(-50, 50), unique=True, max_size=40))
def test_longest_runs_match_quadratic_oracle(seq):
    inc, dec = longest_increasing(seq), longest_decreasing(seq)
    assert len(inc) == quadratic_longest(seq, True)
    assert len(dec) == quadratic_longest(seq, False)
    assert MonotoneWitness(tuple(inc), "increasing", len(inc)).is_valid_for(seq)
    assert MonotoneWitness(tuple(dec), "decreasing", len(dec)).is_valid_for(seq)


@given(st.integers(1, 8), st.integers(1, 8), st.data())
def test_erdos_szekeres_guarantee(a, b, data):
    length = (a - 1) * (b - 1) + 1
    seq = data.draw(st.lists(st.integers(-1000, 1000), unique=True, min_size=length, max_size=length + 5))
    w = es_monotone(seq, a, b)
    assert w.is_valid_for(seq)
    assert w.length >= (a if w.direction == "increasing" else b)


def test_erdos_szekeres_is_tight():
    # b-1 increasing blocks of a-1 values, blocks in decreasing order
    a, b = 4, 5
    seq = [block * (a - 1) + k for block in reversed(range(b - 1)) for k in range(a - 1)]
    assert len(longest_increasing(seq)) == a - 1 and len(longest_decreasing(seq)) == b - 1


# ---------------------------------------------------------------- grid cycles


def test_hamiltonian_examples():
    assert len(grid_hamiltonian_cycle(2, 3)) == 6
    assert len(grid_hamiltonian_cycle(3, 3, allow_corner_skip=True)) == 8
    assert len(grid_hamiltonian_cycle(4, 5)) == 20
    with pytest.raises(ValueError):
        grid_hamiltonian_cycle(3, 3)


@pytest.mark.parametrize("a,b", list(itertools.product(range(2, 9), repeat=2)))
def test_hamiltonian_all_sides_to_eight(a, b):
    cycle = grid_hamiltonian_cycle(a, b, allow_corner_skip=True)
    g = make_grid(a, b)
    assert is_cycle(g, cycle)
    if a * b % 2:
        assert len(cycle) == a * b - 1 and (a - 1) * b + (b - 1) not in cycle
    else:
        assert len(cycle) == a * b


def test_band_examples():
    c1, c2 = grid_band_cycles(6, 5, 5)
    assert len(c1) >= 6 and len(c2) >= 6
    assert {v // 6 for v in c1} == {0, 1} and {v // 6 for v in c2} == {2, 3}
    c1, c2 = grid_band_cycles(4, 3, 3)
    assert min(len(c1), len(c2)) >= 4
    assert band_rows(6, 11) == 3


def test_band_cycles_all_feasible_inputs():
    for side in range(2, 9):
        for l1 in range(1, side * side):
            for l2 in range(1, side * side):
                if band_rows(side, l1) + band_rows(side, l2) > side:
                    with pytest.raises(ValueError):
                        grid_band_cycles(side, l1, l2)
                    continue
                c1, c2 = grid_band_cycles(side, l1, l2)
                g = make_grid(side, side)
                assert is_cycle(g, c1) and is_cycle(g, c2)
                assert len(c1) > l1 and len(c2) > l2 and not set(c1) & set(c2)


def test_arcs_partition_the_cycle():
    cycle = list(range(10))
    arcs = arcs_around(cycle, [7, 2, 5])
    assert arcs[2] == {2, 3, 4} and arcs[5] == {5, 6} and arcs[7] == {7, 8, 9, 0, 1}


# ---------------------------------------------------------------- grid prisms


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_grid_prism_model(r):
    ell = 8 * r * r - 4 * r
    assert validate_minor_model(make_grid(4 * r, 4 * r), make_prism(ell), grid_prism_model(r))


def test_grid_prism_composes_to_cycles():
    outer = grid_prism_model(2)
    prism = make_prism(24)
    cycle = MinorModel({i: {i} for i in range(24)})
    assert validate_minor_model(prism, make_cycle(24), cycle)
    assert validate_minor_model(make_grid(8, 8), make_cycle(24), compose_models(cycle, outer))


# ---------------------------------------------------------------- twisted prisms


def has_four_cycle(g: Graph) -> bool:
    for a, b, c, d in itertools.permutations(range(g.n), 4):
        if a < min(b, c, d) and b < d and g.has_edge(a, b) and g.has_edge(b, c) \
                and g.has_edge(c, d) and g.has_edge(d, a):
            return True
    return False


def test_four_cycle_detector():
    assert find_four_cycle(TwistedPrismSpec.identity(75).pi) == 1
    assert find_four_cycle(doubling_permutation(75).pi) is None
    outcomes = set()
    for ell in range(5, 10):
        for trial in range(6):
            rng = random.Random(ell * 100 + trial)
            pi = rng.sample(range(1, ell + 1), ell)
            expected = has_four_cycle(make_twisted_prism(TwistedPrismSpec(ell, tuple(pi))))
            assert (find_four_cycle(pi) is not None) == expected
            outcomes.add(expected)
    assert outcomes == {True, False}


def test_twisted_identity_uses_first_case():
    spec = TwistedPrismSpec.identity(75)
    res = twisted_prism_grid_construction(spec)
    assert res.case == 1 and not res.reduced
    assert validate_minor_model(make_twisted_prism(spec), make_grid(4, 4), res.model)


def test_twisted_doubling_uses_second_case():
    spec = doubling_permutation(75)
    res = twisted_prism_grid_construction(spec)
    assert res.case == 2
    assert validate_minor_model(make_twisted_prism(spec), make_grid(4, 4), res.model)


def test_twisted_reduction_for_longer_prisms():
    rng = random.Random(80)
    spec = TwistedPrismSpec(80, tuple(rng.sample(range(1, 81), 80)))
    reduced, model = reduce_to_base(spec)
    assert reduced.ell == 75
    assert validate_minor_model(make_twisted_prism(spec), make_twisted_prism(reduced), model)
    res = twisted_prism_grid_construction(spec)
    assert res.reduced
    assert validate_minor_model(make_twisted_prism(spec), make_grid(4, 4), res.model)


def test_twisted_rejects_short_prisms():
    with pytest.raises(ValueError):
        twisted_prism_grid_construction(TwistedPrismSpec.identity(74))


@settings(max_examples=30, deadline=None)
@given(st.integers(75, 95), st.randoms(use_true_random=False))
def test_twisted_random_permutations(ell, rnd):
    pi = list(range(1, ell + 1))
    rnd.shuffle(pi)
    spec = TwistedPrismSpec(ell, tuple(pi))
    res = twisted_prism_grid_construction(spec)
    assert validate_minor_model(make_twisted_prism(spec), make_grid(4, 4), res.model)
    assert not res.used_fallback


# ---------------------------------------------------------------- subdivided grids


def test_block_geometry():
    assert [block_radius(ell) for ell in (1, 2, 5, 6, 13, 14)] == [1, 1, 1, 2, 2, 3]
    assert [scale_side(ell) for ell in (1, 2, 5, 6)] == [2, 3, 5, 5]
    for ell in range(1, 60):
        s, down, right = choose_block(ell)
        assert s <= scale_side(ell)
        assert min(len(down), len(right)) >= ell - 1


def test_phi_examples():
    c4 = make_grid(2, 2)
    model, side = subdivision_grid_model(c4, identity_model(c4), 2, {e: 0 for e in c4.edges()}, 1)
    assert side == 4 and validate_minor_model(make_grid(4, 4), c4, model)
    counts = {e: 4 for e in c4.edges()}
    model, side = subdivision_grid_model(c4, identity_model(c4), 2, counts, 5)
    assert side == 10
    assert validate_minor_model(make_grid(10, 10), subdivide(c4, counts), model)

    # K4 minus an edge in the 3x3 grid
    k4e = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
    inner = MinorModel({0: {4}, 1: {0, 1, 3, 6}, 2: {2, 5}, 3: {7, 8}})
    assert validate_minor_model(make_grid(3, 3), k4e, inner)
    counts = {e: i % 2 for i, e in enumerate(k4e.edges())}
    model, side = subdivision_grid_model(k4e, inner, 3, counts, 2)
    assert side == 9
    assert validate_minor_model(make_grid(9, 9), subdivide(k4e, counts), model)


def test_phi_rejects_bad_input():
    c4 = make_grid(2, 2)
    with pytest.raises(ValueError):
        subdivision_grid_model(c4, identity_model(c4), 2, {e: 3 for e in c4.edges()}, 3)
    with pytest.raises(ValueError):
        subdivision_grid_model(c4, MinorModel({0: {0}, 1: {0}, 2: {2}, 3: {3}}), 2,
                               {e: 0 for e in c4.edges()}, 2)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 4), st.integers(1, 10), st.randoms(use_true_random=False))
def test_phi_random_instances(side, ell, rnd):
    h, model = random_grid_minor(side, rnd)
    counts = {e: rnd.randrange(ell) for e in h.edges()}
    out, big = subdivision_grid_model(h, model, side, counts, ell)
    assert big == scale_side(ell) * side
    assert validate_minor_model(make_grid(big, big), subdivide(h, counts), out)


# ---------------------------------------------------------------- cycle packing and transversals


def all_cycle_sets(g: Graph) -> set[frozenset]:
    found = set()
    for k in range(3, g.n + 1):
        for verts in itertools.combinations(range(g.n), k):
            first, rest = verts[0], verts[1:]
            for order in itertools.permutations(rest):
                cyc = (first,) + order
                if order[0] < order[-1] and all(g.has_edge(a, b) for a, b in zip(cyc, cyc[1:] + cyc[:1])):
                    found.add(frozenset(cyc))
                    break
    return found


def brute_packing(g: Graph) -> int:
    cycles = sorted(all_cycle_sets(g), key=len)
    best = 0

    def grow(start, used, count):
        nonlocal best
        best = max(best, count)
        for i in range(start, len(cycles)):
            if not cycles[i] & used:
                grow(i + 1, used | cycles[i], count + 1)

    grow(0, frozenset(), 0)
    return best


def brute_transversal(g: Graph) -> int:
    for k in range(g.n + 1):
        for removed in itertools.combinations(range(g.n), k):
            if g.induced([v for v in range(g.n) if v not in removed]).is_forest():
                return k
    raise AssertionError


@pytest.mark.parametrize("g,pack", [
    (disjoint_union([make_cycle(3), make_cycle(3)]), 2), (make_complete(5), 1), (make_petersen(), 2),
    (make_grid(3, 3), 1), (make_path(6), 0),
])
def test_packing_examples(g, pack):
    cycles = cycle_packing_exact(g)
    assert len(cycles) == pack
    assert cycle_packing_problem(g, cycles) is None


@pytest.mark.parametrize("g,fvs", [
    (make_path(6), 0), (make_cycle(5), 1), (make_grid(3, 3), 2), (make_complete(6), 4), (make_petersen(), 3),
])
def test_transversal_examples(g, fvs):
    removed = cycle_transversal_exact(g)
    assert len(removed) == fvs
    assert g.induced([v for v in range(g.n) if v not in removed]).is_forest()


def test_packing_and_transversal_against_brute_force():
    rng = random.Random(29)
    for _ in range(120):
        g = erdos_renyi(rng.randint(1, 8), rng.uniform(0.2, 0.7), rng)
        pack = cycle_packing_exact(g)
        fvs = cycle_transversal_exact(g)
        assert cycle_packing_problem(g, pack) is None
        assert len(pack) == brute_packing(g)
        assert len(fvs) == brute_transversal(g)


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=10))
def test_weak_duality(g):
    assert len(cycle_packing_exact(g)) <= len(cycle_transversal_exact(g))


@given(st.integers(1, 12), st.integers(3, 8), st.randoms(use_true_random=False))
def test_forest_plus_one_cycle_has_equality(tree_size, cycle_len, rnd):
    edges = [(v, rnd.randrange(v)) for v in range(1, tree_size)]
    edges += [(tree_size + i, tree_size + (i + 1) % cycle_len) for i in range(cycle_len)]
    g = Graph.from_edges(tree_size + cycle_len, edges + [(0, tree_size)])
    assert len(cycle_packing_exact(g)) == len(cycle_transversal_exact(g)) == 1


def test_packing_problem_reasons():
    g = disjoint_union([make_cycle(3), make_cycle(3)])
    assert "shares a vertex" in cycle_packing_problem(g, [[0, 1, 2], [2, 0, 1]])
    assert cycle_packing_problem(g, [[0, 1, 3]]) is not None
