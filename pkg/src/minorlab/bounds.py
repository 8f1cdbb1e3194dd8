"""Catalog of treewidth bounds for excluded minors and the harness that checks them."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Iterable, Mapping

from .decomposition import CapExceeded, exact_treewidth
from .formats import graph_to_obj
from .graph import (
    Graph,
    disjoint_union,
    enumerate_graphs_upto,
    is_isomorphic,
    make_complete_bipartite,
    make_cycle,
    make_grid,
    make_wheel,
)
from .minor import find_minor_model
from .random_graphs import erdos_renyi, random_regular
from .rng import derive_seed, named_rng

FAMILIES = (
    "forest",
    "cycle",
    "complete_bipartite_2t",
    "wheel_RT",
    "wheel_ours",
    "apex_forest",
    "twisted_prism",
    "prism_or_grid",
    "grid_4x4",
    "disjoint_cycles_r2",
    "disjoint_cycles_general",
    "subdivision_r_edges",
)

EMPIRICAL_N_CAP = 8


def ceil_sqrt(x: int) -> int:
    r = isqrt(x)
    return r if r * r == x else r + 1


def ceil_frac(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def strict_to_inclusive(x: Fraction) -> int:
    """Largest integer strictly below ``x``."""
    return int(x) - 1 if x.denominator == 1 else x.numerator // x.denominator


def _ceil_quarter_one_plus_sqrt(m: int) -> int:
    """ceil((1 + sqrt(m)) / 4) in exact integer arithmetic."""
    q = 1
    # (1 + sqrt(m)) / 4 <= q  iff  sqrt(m) <= 4q - 1
    while (4 * q - 1) ** 2 < m:
        q += 1
    return q


@dataclass(frozen=True)
class SymbolicBound:
    formula: str
    constants: Mapping[str, str]
    strict: bool

    def __str__(self) -> str:
        rel = "<" if self.strict else "<="
        return f"tw {rel} {self.formula}"


@dataclass(frozen=True)
class BoundEntry:
    family: str
    params: Mapping[str, int] = field(default_factory=dict)
    citation: str = ""
    override: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown bound family {self.family!r}")
        object.__setattr__(self, "params", dict(self.params))
        _check_params(self)

    def to_obj(self) -> dict:
        obj = {"family": self.family, "params": dict(self.params), "citation": self.citation}
        if self.override is not None:
            obj["override"] = self.override
        return obj


_REQUIRED = {
    "forest": {"n": 1},
    "cycle": {"n": 3},
    "complete_bipartite_2t": {"t": 2},
    "wheel_RT": {"k": 4},
    "wheel_ours": {"k": 4},
    "apex_forest": {"n": 2},
    "twisted_prism": {"ell": 3},
    "prism_or_grid": {"ell": 3},
    "grid_4x4": {},
    "disjoint_cycles_r2": {"n": 6},
    "disjoint_cycles_general": {"n": 3, "r": 1},
    "subdivision_r_edges": {"n": 1, "r": 2},
}


def _check_params(entry: BoundEntry) -> None:
    need = _REQUIRED[entry.family]
    if set(entry.params) != set(need):
        raise ValueError(f"{entry.family} takes parameters {sorted(need)}, got {sorted(entry.params)}")
    for key, low in need.items():
        value = entry.params[key]
        if not isinstance(value, int) or value < low:
            raise ValueError(f"{entry.family}: {key} must be an integer >= {low}")
    if entry.family == "disjoint_cycles_general" and entry.params["n"] < 3 * entry.params["r"]:
        raise ValueError("r disjoint cycles need at least 3r vertices")


def f_upper(entry: BoundEntry) -> int | SymbolicBound:
    """Inclusive integer bound on treewidth, or the symbolic formula when constants are unknown.

    Strict bounds "tw < X" are stored as the largest integer below X.
    """
    if entry.override is not None:
        return entry.override
    p = entry.params
    fam = entry.family
    if fam in ("forest", "cycle"):
        return p["n"] - 2
    if fam == "complete_bipartite_2t":
        return 2 * p["t"] - 2
    if fam == "wheel_RT":
        return 36 * p["k"] - 39
    if fam == "wheel_ours":
        k = p["k"]
        return 2 * k + 18 * _ceil_quarter_one_plus_sqrt(2 * k - 1) - 10
    if fam == "apex_forest":
        return (3 * p["n"] - 6) // 2
    if fam == "twisted_prism":
        ell = p["ell"]
        return 2 * ell + 18 * _ceil_quarter_one_plus_sqrt(2 * ell + 1) - 8
    if fam == "prism_or_grid":
        return 2 * p["ell"] + 10
    if fam == "grid_4x4":
        return 160
    if fam == "disjoint_cycles_r2":
        n = p["n"]
        x = Fraction(n) + Fraction(9, 2) * ceil_sqrt(4 + n) + 2
        return strict_to_inclusive(x)
    if fam == "disjoint_cycles_general":
        return SymbolicBound("3|V(H)|/2 + c r^2 log r", {"c": "an absolute constant, c := 4 c*", "c*": "the Erdős–Pósa constant"}, True)
    return SymbolicBound("(r+1)/2 |V(H)| + b_r", {"b_r": "max{2r^2, 8r, 12 c_{8r}^2 g_{2r}^2}",
                                                  "c_{8r}": "K_{8r}-minor-free treewidth constant",
                                                  "g_{2r}": "grid side hosting every planar graph on <= 2r vertices"}, False)


def is_numeric(entry: BoundEntry) -> bool:
    return not isinstance(f_upper(entry), SymbolicBound)


def h_vertices(entry: BoundEntry) -> int:
    """Vertex count of the smallest excluded graph the entry is about."""
    p = entry.params
    fam = entry.family
    if fam in ("forest", "cycle", "apex_forest", "disjoint_cycles_r2", "disjoint_cycles_general",
               "subdivision_r_edges"):
        return p["n"]
    if fam == "complete_bipartite_2t":
        return p["t"] + 2
    if fam in ("wheel_RT", "wheel_ours"):
        return p["k"]
    if fam == "twisted_prism":
        return 2 * p["ell"]
    if fam == "prism_or_grid":
        return min(2 * p["ell"], 16)
    return 16


def matches_family(h: Graph, entry: BoundEntry) -> bool:
    """Cheap structural check that ``h`` is a graph the entry speaks about."""
    fam = entry.family
    p = entry.params
    if fam == "forest":
        return h.n == p["n"] and h.is_forest()
    if fam == "cycle":
        return is_isomorphic(h, make_cycle(p["n"]))
    if fam == "complete_bipartite_2t":
        return is_isomorphic(h, make_complete_bipartite(2, p["t"]))
    if fam in ("wheel_RT", "wheel_ours"):
        return is_isomorphic(h, make_wheel(p["k"]))
    if fam == "apex_forest":
        return h.n == p["n"] and any(h.delete_vertex(v).is_forest() for v in range(h.n))
    if fam == "grid_4x4":
        return is_isomorphic(h, make_grid(4, 4))
    if fam == "disjoint_cycles_r2":
        comps = [c for c in h.components() if c.bit_count() > 1]
        return h.n == p["n"] and len(comps) == 2 and all(
            all((h.adj[v] & c).bit_count() == 2 for v in _bits(c)) for c in comps)
    return h.n == h_vertices(entry)


def _bits(mask: int) -> Iterable[int]:
    v = 0
    while mask:
        if mask & 1:
            yield v
        mask >>= 1
        v += 1


def default_catalog() -> list[BoundEntry]:
    return [
        BoundEntry("forest", {"n": 5}, "forest: f(H) = |V(H)| - 2"),
        BoundEntry("cycle", {"n": 4}, "cycle: f(H) = |V(H)| - 2"),
        BoundEntry("complete_bipartite_2t", {"t": 3}, "f(K_2,t) <= 2t - 2"),
        BoundEntry("wheel_RT", {"k": 5}, "wheel: 36|V(H)| - 39"),
        BoundEntry("wheel_ours", {"k": 5}, "wheel: 2k + 18 ceil((1 + sqrt(2k - 1))/4) - 10"),
        BoundEntry("apex_forest", {"n": 6}, "apex forest: 3/2 |V(H)| - 3"),
        BoundEntry("twisted_prism", {"ell": 8}, "twisted prism: 2l + 18 ceil((1 + sqrt(2l + 1))/4) - 8"),
        BoundEntry("prism_or_grid", {"ell": 8}, "twisted prism or 4x4 grid: 2l + 10"),
        BoundEntry("grid_4x4", {}, "4x4 grid: 160"),
        BoundEntry("disjoint_cycles_r2", {"n": 6}, "two disjoint cycles: tw < |V(H)| + 9/2 ceil(sqrt(4 + |V(H)|)) + 2"),
        BoundEntry("disjoint_cycles_general", {"n": 9, "r": 3}, "r disjoint cycles: tw < 3|V(H)|/2 + c r^2 log r"),
        BoundEntry("subdivision_r_edges", {"n": 8, "r": 4}, "subdivided planar graph with r edges: (r+1)/2 |V(H)| + b_r"),
    ]


# ---------------------------------------------------------------- verification


@dataclass(frozen=True)
class Exhaustive:
    n_max: int

    def to_obj(self) -> dict:
        return {"kind": "exhaustive", "n_max": self.n_max}


@dataclass(frozen=True)
class RandomSample:
    n: int
    samples: int
    seed: int = 0

    def to_obj(self) -> dict:
        return {"kind": "random", "n": self.n, "samples": self.samples, "seed": self.seed}


@dataclass
class VerificationReport:
    h: Graph
    mode: dict
    observed_max_tw: int
    witness: Graph | None
    bound: int | None
    verdict: str
    examined: int
    minor_free: int
    cap_overruns: int = 0
    seed: int | None = None
    entry: dict | None = None

    def to_record(self) -> dict:
        return {
            "h": graph_to_obj(self.h),
            "entry": self.entry,
            "mode": self.mode,
            "seed": self.seed,
            "observed_max_tw": self.observed_max_tw,
            "bound": self.bound,
            "verdict": self.verdict,
            "witness": graph_to_obj(self.witness) if self.witness is not None else None,
            "examined": self.examined,
            "minor_free": self.minor_free,
            "cap_overruns": self.cap_overruns,
        }


def _examine(args: tuple[Graph, Graph]) -> tuple[str, int]:
    """('minor', -) if g has an h-minor, ('free', tw) if not, ('cap', -) on overrun."""
    g, h = args
    try:
        if find_minor_model(g, h) is not None:
            return "minor", 0
        return "free", exact_treewidth(g)[0]
    except CapExceeded:
        return "cap", 0


def _map(items: list, jobs: int) -> list:
    if jobs <= 1 or len(items) < 2:
        return [_examine(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_examine, items, chunksize=max(1, len(items) // (jobs * 8))))


def _survey(h: Graph, graphs: list[Graph], jobs: int) -> tuple[int, Graph | None, int, int]:
    """Max treewidth among h-minor-free graphs, first witness, free count and overrun count."""
    outcomes = _map([(g, h) for g in graphs], jobs)
    best, witness, free, caps = -1, None, 0, 0
    for g, (kind, tw) in zip(graphs, outcomes):
        if kind == "cap":
            caps += 1
        elif kind == "free":
            free += 1
            if tw > best:
                best, witness = tw, g
    if witness is not None and find_minor_model(witness, h) is not None:
        raise AssertionError("witness unexpectedly contains the excluded minor")
    return best, witness, free, caps


def _verdict(observed: int, bound: int | None) -> str:
    if bound is None:
        return "n/a"
    return "pass" if observed <= bound else "fail"


def empirical_f(h: Graph, n_max: int, jobs: int = 1, bound: int | None = None) -> VerificationReport:
    """Largest treewidth over all graphs on <= n_max vertices with no h-minor."""
    if n_max > EMPIRICAL_N_CAP:
        raise CapExceeded(f"exhaustive enumeration capped at n={EMPIRICAL_N_CAP}, got {n_max}")
    graphs = list(enumerate_graphs_upto(n_max))
    best, witness, free, caps = _survey(h, graphs, jobs)
    return VerificationReport(h, {"kind": "exhaustive", "n_max": n_max}, best, witness, bound,
                              _verdict(best, bound), len(graphs), free, caps)


def sample_graph(mode: RandomSample, index: int) -> Graph:
    """Sample ``index`` of a random run: Erdős–Rényi on even indices, 3-regular on odd ones."""
    rng = named_rng(mode.seed, "sample", mode.n, index)
    n = mode.n
    if index % 2 == 0 or n < 4:
        p = rng.uniform(2 / n, 4 / n) if n > 1 else 0.0
        return erdos_renyi(n, min(1.0, p), rng)
    return random_regular(n - n % 2, 3, rng)


def verify_bound(h: Graph, entry: BoundEntry, mode: Exhaustive | RandomSample, jobs: int = 1) -> VerificationReport:
    """Check every examined h-minor-free graph against the entry's bound."""
    bound = f_upper(entry)
    if isinstance(bound, SymbolicBound):
        raise ValueError(f"{entry.family} has a symbolic bound and cannot be checked numerically")
    if entry.override is None and not matches_family(h, entry):
        raise ValueError(f"graph does not match bound family {entry.family}")
    if isinstance(mode, Exhaustive):
        report = empirical_f(h, mode.n_max, jobs, bound)
        report.entry = entry.to_obj()
        return report
    graphs = [sample_graph(mode, i) for i in range(mode.samples)]
    best, witness, free, caps = _survey(h, graphs, jobs)
    return VerificationReport(h, mode.to_obj(), best, witness, bound, _verdict(best, bound),
                              len(graphs), free, caps, seed=mode.seed, entry=entry.to_obj())


def verify_tree_composition(h1: Graph, t: Graph, n_max: int, jobs: int = 1) -> VerificationReport:
    """Deleting a tree's worth of vertices: tw(G) <= observed f(h1) + |V(t)| for (h1 + t)-minor-free G."""
    if not t.is_forest():
        raise ValueError("t must be acyclic")
    if n_max > 7:
        raise CapExceeded(f"tree composition check capped at n=7, got {n_max}")
    base = empirical_f(h1, n_max, jobs)
    bound = max(base.observed_max_tw, -1) + t.n
    h = disjoint_union([h1, t])
    report = empirical_f(h, n_max, jobs, bound)
    report.mode = {"kind": "tree_composition", "n_max": n_max, "base_observed": base.observed_max_tw,
                   "tree": graph_to_obj(t)}
    return report


def replay_seed(seed: int, *names: object) -> int:
    """Seed recorded alongside a report so the run can be replayed."""
    return derive_seed(seed, *names)
