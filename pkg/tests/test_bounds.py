import json
import math
from fractions import Fraction

import pytest

from minorlab.bounds import (
    FAMILIES,
    BoundEntry,
    Exhaustive,
    RandomSample,
    SymbolicBound,
    default_catalog,
    empirical_f,
    f_upper,
    h_vertices,
    is_numeric,
    matches_family,
    sample_graph,
    strict_to_inclusive,
    verify_bound,
    verify_tree_composition,
)
from minorlab.decomposition import CapExceeded
from minorlab.graph import (
    Graph,
    disjoint_union,
    is_isomorphic,
    make_complete,
    make_complete_bipartite,
    make_cycle,
    make_grid,
    make_path,
    make_wheel,
)
from minorlab.rng import derive_seed, named_rng, splitmix64

TWO_TRIANGLES = disjoint_union([make_cycle(3), make_cycle(3)])


def float_wheel_ours(k):
    return 2 * k + 18 * math.ceil((1 + math.sqrt(2 * k - 1)) / 4) - 10


def float_twisted(ell):
    return 2 * ell + 18 * math.ceil((1 + math.sqrt(2 * ell + 1)) / 4) - 8


def test_catalog_examples():
    assert f_upper(BoundEntry("grid_4x4")) == 160
    assert f_upper(BoundEntry("wheel_ours", {"k": 5})) == 18
    assert f_upper(BoundEntry("wheel_RT", {"k": 5})) == 141
    # strict "< 6 + 4.5 * 4 + 2 = 26" becomes inclusive 25
    assert f_upper(BoundEntry("disjoint_cycles_r2", {"n": 6})) == 25
    assert f_upper(BoundEntry("cycle", {"n": 4})) == 2
    assert f_upper(BoundEntry("complete_bipartite_2t", {"t": 3})) == 4
    assert f_upper(BoundEntry("apex_forest", {"n": 6})) == 6
    assert f_upper(BoundEntry("prism_or_grid", {"ell": 8})) == 26
    assert f_upper(BoundEntry("twisted_prism", {"ell": 8})) == 44


def test_wheel_formula_against_float_oracle():
    for k in range(4, 400):
        assert f_upper(BoundEntry("wheel_ours", {"k": k})) == float_wheel_ours(k)


def test_twisted_formula_against_float_oracle():
    for ell in range(3, 400):
        assert f_upper(BoundEntry("twisted_prism", {"ell": ell})) == float_twisted(ell)


def test_wheel_improvement_range():
    for k in range(11, 10**4 + 1):
        assert f_upper(BoundEntry("wheel_ours", {"k": k})) <= f_upper(BoundEntry("wheel_RT", {"k": k}))


def test_strict_to_inclusive():
    assert strict_to_inclusive(Fraction(26)) == 25
    assert strict_to_inclusive(Fraction(51, 2)) == 25
    assert strict_to_inclusive(Fraction(1, 3)) == 0


def test_disjoint_cycles_r2_against_direct_evaluation():
    for n in range(6, 300):
        strict = n + 4.5 * math.ceil(math.sqrt(4 + n)) + 2
        expected = math.ceil(strict) - 1
        assert f_upper(BoundEntry("disjoint_cycles_r2", {"n": n})) == expected


def test_symbolic_entries():
    general = f_upper(BoundEntry("disjoint_cycles_general", {"n": 9, "r": 3}))
    assert isinstance(general, SymbolicBound) and general.strict and "c" in general.constants
    sub = f_upper(BoundEntry("subdivision_r_edges", {"n": 8, "r": 4}))
    assert isinstance(sub, SymbolicBound) and "b_r" in sub.constants
    assert "max{2r^2, 8r" in sub.constants["b_r"]


def test_numeric_entries_respect_clique_lower_bound():
    for entry in default_catalog():
        if is_numeric(entry):
            assert f_upper(entry) >= h_vertices(entry) - 2


def test_prism_or_grid_never_worse_than_twisted():
    for ell in range(3, 2000):
        assert f_upper(BoundEntry("prism_or_grid", {"ell": ell})) <= f_upper(BoundEntry("twisted_prism", {"ell": ell}))


def test_entry_validation():
    with pytest.raises(ValueError):
        BoundEntry("nonsense")
    with pytest.raises(ValueError):
        BoundEntry("cycle", {"k": 4})
    with pytest.raises(ValueError):
        BoundEntry("cycle", {"n": 2})
    assert set(e.family for e in default_catalog()) == set(FAMILIES)


def test_family_matching():
    assert matches_family(make_cycle(4), BoundEntry("cycle", {"n": 4}))
    assert not matches_family(make_path(4), BoundEntry("cycle", {"n": 4}))
    assert matches_family(TWO_TRIANGLES, BoundEntry("disjoint_cycles_r2", {"n": 6}))
    assert matches_family(make_wheel(6), BoundEntry("wheel_ours", {"k": 6}))
    assert matches_family(make_complete_bipartite(2, 3), BoundEntry("complete_bipartite_2t", {"t": 3}))
    assert matches_family(make_grid(4, 4), BoundEntry("grid_4x4"))
    with pytest.raises(ValueError):
        verify_bound(make_path(4), BoundEntry("cycle", {"n": 4}), Exhaustive(5))


def test_empirical_examples():
    rep = empirical_f(make_cycle(3), 5)
    assert rep.observed_max_tw == 1
    rep = empirical_f(make_cycle(5), 7)
    assert rep.observed_max_tw == 3
    assert rep.witness.n == 4 and rep.witness.m == 6


def test_empirical_two_triangles_and_jobs_independence():
    one = empirical_f(TWO_TRIANGLES, 6)
    two = empirical_f(TWO_TRIANGLES, 6, jobs=2)
    assert one.observed_max_tw == two.observed_max_tw == 4
    assert is_isomorphic(one.witness, make_complete(5))
    assert one.to_record() == two.to_record()


def test_empirical_cap():
    with pytest.raises(CapExceeded):
        empirical_f(make_cycle(3), 9)


def test_verify_bound_examples():
    rep = verify_bound(make_cycle(4), BoundEntry("cycle", {"n": 4}), Exhaustive(6))
    assert rep.verdict == "pass" and rep.observed_max_tw == 2
    rep = verify_bound(make_wheel(5), BoundEntry("wheel_ours", {"k": 5}), RandomSample(12, 40, seed=3))
    assert rep.verdict == "pass" and rep.bound == 18 and rep.seed == 3


def test_override_forces_failure():
    rep = verify_bound(make_cycle(4), BoundEntry("cycle", {"n": 4}, override=0), Exhaustive(5))
    assert rep.verdict == "fail" and rep.bound == 0


def test_symbolic_entry_cannot_be_verified():
    with pytest.raises(ValueError):
        verify_bound(make_cycle(3), BoundEntry("disjoint_cycles_general", {"n": 3, "r": 1}), Exhaustive(4))


def test_random_verdict_is_replayable():
    mode = RandomSample(10, 30, seed=7)
    entry = BoundEntry("wheel_ours", {"k": 5})
    first = verify_bound(make_wheel(5), entry, mode).to_record()
    again = verify_bound(make_wheel(5), entry, mode, jobs=2).to_record()
    assert json.dumps(first, sort_keys=True) == json.dumps(again, sort_keys=True)
    assert sample_graph(mode, 4) == sample_graph(mode, 4)
    assert all(d == 3 for d in sample_graph(mode, 1).degrees())


@pytest.mark.parametrize("h1,t", [(make_cycle(3), Graph(1)), (make_cycle(3), make_path(2)), (make_cycle(4), Graph(1))],
                         ids=["C3+K1", "C3+P2", "C4+K1"])
def test_tree_composition(h1, t):
    rep = verify_tree_composition(h1, t, 6)
    assert rep.verdict == "pass"
    assert rep.observed_max_tw <= rep.bound


def test_tree_composition_rejects_cycles():
    with pytest.raises(ValueError):
        verify_tree_composition(make_cycle(3), make_cycle(3), 5)


# ---------------------------------------------------------------- seeds


def test_splitmix_reference_output():
    # first output of the reference generator from state 0
    assert splitmix64(0)[0] == 0xE220A8397B1DCDAF


def test_named_streams():
    assert derive_seed(0, "a", 1) == derive_seed(0, "a", 1)
    assert derive_seed(0, "a", 1) != derive_seed(0, "a", 2)
    assert derive_seed(0, "a") != derive_seed(1, "a")
    assert named_rng(5, "x").random() == named_rng(5, "x").random()
