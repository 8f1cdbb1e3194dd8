"""The acceptance checks as runnable cases, shared by the CLI and the test suite."""

from __future__ import annotations

import statistics
import time
from dataclasses import dataclass, field
from typing import Callable

from .bounds import (
    BoundEntry,
    Exhaustive,
    FAMILIES,
    RandomSample,
    SymbolicBound,
    empirical_f,
    f_upper,
    h_vertices,
    verify_bound,
    verify_tree_composition,
)
from .bramble import (
    bramble_order,
    grid_cross_bramble,
    path_partition,
    path_partition_violations,
    random_bramble,
)
from .constructions.grids import grid_prism_model
from .constructions.monotone import es_monotone
from .constructions.phi import subdivision_grid_model
from .constructions.twisted import twisted_prism_grid_model
from .decomposition import exact_treewidth
from .graph import (
    Graph,
    TwistedPrismSpec,
    disjoint_union,
    enumerate_graphs_upto,
    is_isomorphic,
    iter_bits,
    make_complete,
    make_cycle,
    make_grid,
    make_path,
    make_prism,
    make_twisted_prism,
    make_wheel,
    subdivide,
)
from .minor import MinorModel, find_minor_model, max_vertex_disjoint_paths, separates, validate_minor_model
from .random_graphs import erdos_renyi, random_connected, with_hamiltonian_path
from .rng import named_rng


@dataclass
class CaseResult:
    name: str
    verdict: str
    details: dict = field(default_factory=dict)
    seconds: float = 0.0
    record: dict | None = None

    def to_record(self, seed: int) -> dict:
        if self.record is not None:
            return {**self.record, "case": self.name, "seed": seed}
        return {"case": self.name, "seed": seed, "verdict": self.verdict, "details": self.details}


def _timed(name: str, fn: Callable[[], tuple[bool, dict]]) -> CaseResult:
    start = time.perf_counter()
    ok, details = fn()
    return CaseResult(name, "pass" if ok else "fail", details, time.perf_counter() - start)


# ---------------------------------------------------------------- criteria


def twisted_prism_runs(seed: int, n_base: int = 200, n_large: int = 50) -> CaseResult:
    def run():
        accepted, times = 0, []
        for i in range(n_base + n_large):
            rng = named_rng(seed, "twisted", i)
            ell = 75 if i < n_base else rng.randint(76, 90)
            pi = list(range(1, ell + 1))
            rng.shuffle(pi)
            spec = TwistedPrismSpec(ell, tuple(pi))
            start = time.perf_counter()
            model = twisted_prism_grid_model(spec)
            times.append(time.perf_counter() - start)
            accepted += validate_minor_model(make_twisted_prism(spec), make_grid(4, 4), model)
        total = n_base + n_large
        median = statistics.median(times)
        return accepted == total and median < 1.0, {"accepted": accepted, "total": total,
                                                      "median_seconds_below_1": median < 1.0}
    return _timed("twisted-prism-grid", run)


def grid_prism_runs() -> CaseResult:
    def run():
        start = time.perf_counter()
        ok = {}
        for r in (1, 2, 3):
            ell = 8 * r * r - 4 * r
            ok[str(r)] = validate_minor_model(make_grid(4 * r, 4 * r), make_prism(ell), grid_prism_model(r))
        fast = time.perf_counter() - start < 1.0
        return all(ok.values()) and fast, {"valid": ok, "under_1s": fast}
    return _timed("grid-prism", run)


def duality_runs(seed: int, pairs: int = 100) -> CaseResult:
    def run():
        grids = {}
        for k in (2, 3, 4):
            tw = exact_treewidth(make_grid(k, k))[0]
            order = bramble_order(make_grid(k, k), grid_cross_bramble(k))[0]
            grids[str(k)] = {"tw": tw, "order": order}
        grid_ok = all(v["tw"] == int(k) and v["order"] == int(k) + 1 for k, v in grids.items())
        violations = 0
        for i in range(pairs):
            rng = named_rng(seed, "duality", i)
            g = random_connected(rng.randint(3, 12), rng.uniform(0.05, 0.4), rng)
            b = random_bramble(g, rng)
            if bramble_order(g, b)[0] - 1 > exact_treewidth(g)[0]:
                violations += 1
        return grid_ok and violations == 0, {"grids": grids, "pairs": pairs, "violations": violations}
    return _timed("duality", run)


def cycle_tightness_runs(n_max: int = 7) -> CaseResult:
    def run():
        graphs = list(enumerate_graphs_upto(n_max))
        tws = [exact_treewidth(g)[0] for g in graphs]
        out = {}
        ok = True
        for k in (4, 5, 6):
            ck = make_cycle(k)
            worst = max((tw for g, tw in zip(graphs, tws) if find_minor_model(g, ck) is None), default=-1)
            clique = make_complete(k - 1)
            attained = exact_treewidth(clique)[0] == k - 2 and find_minor_model(clique, ck) is None
            out[str(k)] = {"max_tw": worst, "clique_attains": attained}
            ok &= worst <= k - 2 and attained
        return ok, {"graphs": len(graphs), "per_k": out}
    return _timed("cycle-tightness", run)


def two_cycles_runs(n_max: int = 7, jobs: int = 1) -> CaseResult:
    def run():
        report = empirical_f(disjoint_union([make_cycle(3), make_cycle(3)]), n_max, jobs)
        bound = f_upper(BoundEntry("disjoint_cycles_r2", {"n": 6}))
        witness_k5 = report.witness is not None and is_isomorphic(report.witness, make_complete(5))
        ok = report.observed_max_tw == 4 and witness_k5 and report.observed_max_tw <= bound == 25
        return ok, {"observed_max_tw": report.observed_max_tw, "witness_is_k5": witness_k5, "bound": bound}
    return _timed("two-disjoint-cycles", run)


def tree_composition_runs(n_max: int = 6, jobs: int = 1) -> CaseResult:
    def run():
        pairs = {"C3+K1": (make_cycle(3), Graph(1)), "C3+P2": (make_cycle(3), make_path(2)),
                 "C4+K1": (make_cycle(4), Graph(1))}
        out = {}
        for name, (h1, t) in pairs.items():
            rep = verify_tree_composition(h1, t, n_max, jobs)
            out[name] = {"verdict": rep.verdict, "observed": rep.observed_max_tw, "bound": rep.bound}
        return all(v["verdict"] == "pass" for v in out.values()), out
    return _timed("tree-composition", run)


def random_grid_minor(side: int, rng) -> tuple[Graph, MinorModel]:
    """A random graph with a known model in the side x side grid."""
    grid = make_grid(side, side)
    k = rng.randint(2, side * side)
    free = grid.all_mask
    sets = []
    for _ in range(k):
        if not free:
            break
        start = rng.choice(list(iter_bits(free)))
        cur = 1 << start
        for _ in range(rng.randint(0, 2)):
            options = list(iter_bits(grid.neighborhood(cur) & free & ~cur))
            if not options:
                break
            cur |= 1 << rng.choice(options)
        free &= ~cur
        sets.append(cur)
    edges = [(i, j) for i in range(len(sets)) for j in range(i + 1, len(sets))
             if grid.neighborhood(sets[i]) & sets[j] and rng.random() < 0.8]
    h = Graph.from_edges(len(sets), edges)
    return h, MinorModel({i: frozenset(iter_bits(m)) for i, m in enumerate(sets)})


def phi_runs(seed: int, instances: int = 100) -> CaseResult:
    def run():
        accepted = 0
        for i in range(instances):
            rng = named_rng(seed, "phi", i)
            side = rng.randint(2, 3)
            ell = rng.randint(1, 6)
            h, model = random_grid_minor(side, rng)
            counts = {e: rng.randrange(ell) for e in h.edges()}
            out, big = subdivision_grid_model(h, model, side, counts, ell)
            accepted += validate_minor_model(make_grid(big, big), subdivide(h, counts), out)
        return accepted == instances, {"accepted": accepted, "total": instances}
    return _timed("phi-embedding", run)


def monotone_runs(seed: int, trials: int = 10_000) -> CaseResult:
    def run():
        out = {}
        for a, b in ((4, 4), (9, 10), (9, 9)):
            rng = named_rng(seed, "monotone", a, b)
            length = (a - 1) * (b - 1) + 1
            good = 0
            for _ in range(trials):
                seq = rng.sample(range(10 * length), length)
                w = es_monotone(seq, a, b)
                need = a if w.direction == "increasing" else b
                good += w.is_valid_for(seq) and w.length >= need
            out[f"{a},{b}"] = good
        return all(v == trials for v in out.values()), {"verified": out, "trials": trials}
    return _timed("erdos-szekeres", run)


def path_partition_runs(seed: int, instances: int = 200) -> CaseResult:
    def run():
        passed = 0
        for i in range(instances):
            rng = named_rng(seed, "partition", i)
            while True:
                g, path = with_hamiltonian_path(rng.randint(5, 12), rng.uniform(0.1, 0.5), rng)
                b = random_bramble(g, rng)
                order = bramble_order(g, b)[0]
                if order >= 2:
                    break
            c1 = rng.randint(1, order - 1)
            c2 = rng.randint(1, order - c1)
            reverse = rng.random() < 0.5
            res = path_partition(g, path, b, c1, c2, reverse=reverse)
            passed += not path_partition_violations(g, path, b, c1, c2, res, reverse=reverse)
        return passed == instances, {"passed": passed, "total": instances}
    return _timed("path-partition", run)


def menger_runs(seed: int, instances: int = 500) -> CaseResult:
    def run():
        consistent = 0
        for i in range(instances):
            rng = named_rng(seed, "menger", i)
            n = rng.randint(2, 20)
            g = erdos_renyi(n, rng.uniform(0.05, 0.4), rng)
            verts = list(range(n))
            rng.shuffle(verts)
            a = rng.randint(1, n - 1)
            b = rng.randint(1, n - a)
            s, t = verts[:a], verts[a:a + b]
            w = max_vertex_disjoint_paths(g, s, t)
            consistent += len(w.paths) == len(w.cut) and separates(g, s, t, w.cut)
        prisms = {}
        for ell in range(3, 13):
            w = max_vertex_disjoint_paths(make_prism(ell), range(ell), range(ell, 2 * ell))
            prisms[str(ell)] = len(w.paths)
        ok = consistent == instances and all(v == int(k) for k, v in prisms.items())
        return ok, {"consistent": consistent, "total": instances, "prism_values": prisms}
    return _timed("menger", run)


def catalog_sweep() -> list[BoundEntry]:
    entries = []
    for fam in FAMILIES:
        if fam in ("forest", "cycle", "apex_forest"):
            entries += [BoundEntry(fam, {"n": n}) for n in range(3, 60)]
        elif fam == "complete_bipartite_2t":
            entries += [BoundEntry(fam, {"t": t}) for t in range(2, 60)]
        elif fam in ("wheel_RT", "wheel_ours"):
            entries += [BoundEntry(fam, {"k": k}) for k in range(4, 200)]
        elif fam in ("twisted_prism", "prism_or_grid"):
            entries += [BoundEntry(fam, {"ell": ell}) for ell in range(3, 200)]
        elif fam == "grid_4x4":
            entries.append(BoundEntry(fam))
        elif fam == "disjoint_cycles_r2":
            entries += [BoundEntry(fam, {"n": n}) for n in range(6, 200)]
        elif fam == "disjoint_cycles_general":
            entries.append(BoundEntry(fam, {"n": 9, "r": 3}))
        else:
            entries.append(BoundEntry(fam, {"n": 8, "r": 4}))
    return entries


def catalog_runs() -> CaseResult:
    def run():
        wheel_ok = all(f_upper(BoundEntry("wheel_ours", {"k": k})) <= f_upper(BoundEntry("wheel_RT", {"k": k}))
                       for k in range(11, 10_001))
        crossover = [k for k in range(4, 11)
                     if f_upper(BoundEntry("wheel_ours", {"k": k})) > f_upper(BoundEntry("wheel_RT", {"k": k}))]
        below = [e.to_obj() for e in catalog_sweep()
                 if not isinstance(f_upper(e), SymbolicBound) and f_upper(e) < h_vertices(e) - 2]
        prism_ok = all(f_upper(BoundEntry("prism_or_grid", {"ell": ell}))
                       <= f_upper(BoundEntry("twisted_prism", {"ell": ell})) for ell in range(3, 1000))
        grid = f_upper(BoundEntry("grid_4x4"))
        ok = wheel_ok and not below and grid == 160 and prism_ok
        return ok, {"wheel_ours_le_wheel_rt": wheel_ok, "wheel_crossover_below_11": crossover,
                    "below_lower_bound": below, "grid_4x4": grid, "prism_or_grid_le_twisted": prism_ok}
    return _timed("catalog", run)


# ---------------------------------------------------------------- bound cases


def bound_case(name: str, h: Graph, entry: BoundEntry, mode, jobs: int) -> CaseResult:
    start = time.perf_counter()
    report = verify_bound(h, entry, mode, jobs)
    rec = report.to_record()
    return CaseResult(name, report.verdict, {"observed": report.observed_max_tw, "bound": report.bound},
                      time.perf_counter() - start, rec)


def _entry(family: str, params: dict, overrides: dict[str, int]) -> BoundEntry:
    return BoundEntry(family, params, override=overrides.get(family))


def run_suite(suite: str, seed: int = 0, jobs: int = 1, overrides: dict[str, int] | None = None,
              on_result: Callable[[CaseResult], None] | None = None) -> list[CaseResult]:
    """Run the default (quick) or full suite; results come back in a fixed order."""
    if suite not in ("default", "full"):
        raise ValueError(f"unknown suite {suite!r}")
    overrides = overrides or {}
    full = suite == "full"
    n_ex = 7 if full else 6

    cases: list[Callable[[], CaseResult]] = [
        lambda: twisted_prism_runs(seed, 200 if full else 20, 50 if full else 5),
        grid_prism_runs,
        lambda: duality_runs(seed, 100 if full else 20),
        lambda: cycle_tightness_runs(7 if full else 6),
        lambda: two_cycles_runs(7, jobs) if full else two_cycles_small(),
        lambda: tree_composition_runs(6 if full else 5, jobs),
        lambda: phi_runs(seed, 100 if full else 20),
        lambda: monotone_runs(seed, 10_000 if full else 500),
        lambda: path_partition_runs(seed, 200 if full else 40),
        lambda: menger_runs(seed, 500 if full else 100),
        catalog_runs,
        lambda: bound_case("bound-cycle-C4", make_cycle(4), _entry("cycle", {"n": 4}, overrides),
                           Exhaustive(n_ex), jobs),
        lambda: bound_case("bound-two-triangles", disjoint_union([make_cycle(3), make_cycle(3)]),
                           _entry("disjoint_cycles_r2", {"n": 6}, overrides), Exhaustive(n_ex), jobs),
        lambda: bound_case("bound-wheel-5", make_wheel(5), _entry("wheel_ours", {"k": 5}, overrides),
                           RandomSample(12, 500 if full else 40, seed), jobs),
    ]
    results = []
    for make in cases:
        res = make()
        results.append(res)
        if on_result:
            on_result(res)
    return results


def two_cycles_small() -> CaseResult:
    def run():
        report = empirical_f(disjoint_union([make_cycle(3), make_cycle(3)]), 6)
        ok = report.observed_max_tw == 4 and is_isomorphic(report.witness, make_complete(5))
        return ok, {"observed_max_tw": report.observed_max_tw, "n_max": 6}
    return _timed("two-disjoint-cycles", run)
