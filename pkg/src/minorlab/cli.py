"""Command-line entry point: generators, solvers, constructions, certificate checks and bound runs.

Exit codes: 0 success/accept, 1 verification failure, 2 input error, 3 resource cap.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .bounds import FAMILIES
from .bramble import Bramble, bramble_order, bramble_problem
from .constructions.cycles import cycle_packing_exact, cycle_packing_obj, cycle_packing_problem
from .constructions.grids import grid_band_cycles, grid_hamiltonian_cycle, grid_prism_model
from .constructions.phi import subdivision_grid_model
from .constructions.twisted import twisted_prism_grid_construction
from .decomposition import (
    CapExceeded,
    TreeDecomposition,
    exact_treewidth,
    tree_decomposition_problem,
    treewidth_bounds_heuristic,
)
from .formats import FormatError, graph_from_obj, parse_graph, serialize
from .graph import (
    Graph,
    TwistedPrismSpec,
    make_complete,
    make_complete_bipartite,
    make_complete_binary_tree,
    make_cycle,
    make_grid,
    make_path,
    make_petersen,
    make_prism,
    make_twisted_prism,
    make_wheel,
    subdivide,
)
from .minor import MinorModel, find_minor_model, minor_model_problem
from .rng import named_rng

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc}") from exc


def _load_graph(path: str) -> Graph:
    return parse_graph(_read(path))


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"


# ---------------------------------------------------------------- gen


def _parse_pi(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise InputError(f"bad permutation {text!r}") from exc


def build_family(family: str, params: Sequence[int], pi: str | None = None) -> Graph:
    arity = {"grid": 2, "twisted-prism": 1, "prism": 1, "wheel": 1, "cycle": 1, "complete": 1,
             "path": 1, "petersen": 0, "complete-bipartite": 2, "binary-tree": 1}
    if family not in arity:
        raise InputError(f"unknown family {family!r}")
    if len(params) != arity[family]:
        raise InputError(f"{family} takes {arity[family]} integer parameter(s)")
    try:
        if family == "grid":
            return make_grid(*params)
        if family == "twisted-prism":
            (ell,) = params
            spec = TwistedPrismSpec(ell, _parse_pi(pi)) if pi else TwistedPrismSpec.identity(ell)
            return make_twisted_prism(spec)
        if family == "prism":
            return make_prism(*params)
        if family == "wheel":
            return make_wheel(*params)
        if family == "cycle":
            return make_cycle(*params)
        if family == "complete":
            return make_complete(*params)
        if family == "path":
            return make_path(*params)
        if family == "complete-bipartite":
            return make_complete_bipartite(*params)
        if family == "binary-tree":
            return make_complete_binary_tree(*params)
        return make_petersen()
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def cmd_gen(args) -> int:
    g = build_family(args.family, args.params, args.pi)
    _write(args.out, serialize(g, args.format))
    return EXIT_OK


# ---------------------------------------------------------------- tw


def cmd_tw(args) -> int:
    g = _load_graph(args.graph)
    if args.heuristic:
        lower, upper, td = treewidth_bounds_heuristic(g)
        print(f"lower≥{lower} upper≤{upper}")
    else:
        width, td = exact_treewidth(g)
        print(width)
    if args.cert:
        _write(args.cert, _dump(td.to_obj()))
    return EXIT_OK


# ---------------------------------------------------------------- verify


def verify_certificate(cert: dict, g: Graph) -> tuple[bool, str | None]:
    """Accept or reject ``cert`` against ``g``; raises InputError on schema problems."""
    if not isinstance(cert, dict) or "type" not in cert:
        raise InputError("certificate must be a JSON object with a 'type' field")
    kind = cert["type"]
    try:
        if kind == "tree_decomposition":
            td = TreeDecomposition.from_obj(cert)
            try:
                problem = tree_decomposition_problem(g, td)
            except IndexError as exc:
                return False, str(exc)
            if problem:
                return False, problem
            if "width" in cert and cert["width"] != td.width:
                return False, f"claimed width {cert['width']} but bags give {td.width}"
            return True, None
        if kind == "bramble":
            b = Bramble(tuple(frozenset(int(v) for v in e) for e in cert["elements"]))
            try:
                problem = bramble_problem(g, b)
            except IndexError as exc:
                return False, str(exc)
            if problem:
                return False, problem
            if "claimed_order" in cert:
                order, _ = bramble_order(g, b)
                if order < int(cert["claimed_order"]):
                    return False, f"hitting set of size {order} found"
            return True, None
        if kind == "minor_model":
            h = graph_from_obj(cert["h"])
            model = MinorModel.from_obj(cert)
            try:
                problem = minor_model_problem(g, h, model)
            except (IndexError, KeyError) as exc:
                return False, str(exc.args[0] if exc.args else exc)
            return (problem is None), problem
        if kind == "cycle_packing":
            cycles = [[int(v) for v in c] for c in cert["cycles"]]
            problem = cycle_packing_problem(g, cycles)
            if problem:
                return False, problem
            claimed = cert.get("claimed_value")
            if claimed is not None and claimed != len(cycles):
                return False, f"claimed {claimed} cycles but {len(cycles)} listed"
            return True, None
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed {kind} certificate: {exc}") from exc
    raise InputError(f"unknown certificate type {kind!r}")


def cmd_verify(args) -> int:
    try:
        cert = json.loads(_read(args.cert))
    except json.JSONDecodeError as exc:
        raise InputError(f"certificate is not JSON: {exc}") from exc
    g = _load_graph(args.graph)
    ok, reason = verify_certificate(cert, g)
    print(_dump({"type": cert.get("type"), "verdict": "accept" if ok else "reject", "reason": reason}), end="")
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------- embed


def _embed(args) -> tuple[Graph, dict]:
    name = args.construction
    if name == "grid-prism":
        model = grid_prism_model(args.r)
        ell = 8 * args.r * args.r - 4 * args.r
        return make_grid(4 * args.r, 4 * args.r), model.to_obj(make_prism(ell))
    if name == "twisted-prism-grid":
        if args.pi:
            pi = _parse_pi(args.pi)
            spec = TwistedPrismSpec(len(pi), pi)
        else:
            rng = named_rng(args.seed, "embed", "twisted-prism-grid", args.ell)
            perm = list(range(1, args.ell + 1))
            rng.shuffle(perm)
            spec = TwistedPrismSpec(args.ell, tuple(perm))
        res = twisted_prism_grid_construction(spec)
        obj = res.model.to_obj(make_grid(4, 4))
        obj["construction"] = {"case": res.case, "rungs": list(res.rungs), "pi": list(spec.pi)}
        return make_twisted_prism(spec), obj
    if name == "phi":
        side = args.base_grid
        if args.h:
            h = _load_graph(args.h)
            model = find_minor_model(make_grid(side, side), h, max_h=side * side, max_g=side * side)
            if model is None:
                raise InputError(f"the graph is not a minor of the {side}x{side} grid")
        else:
            h = make_grid(side, side)
            model = MinorModel({v: frozenset([v]) for v in range(h.n)})
        rng = named_rng(args.seed, "embed", "phi")
        if args.count is not None:
            counts = {e: args.count for e in h.edges()}
        else:
            counts = {e: rng.randrange(args.ell) for e in h.edges()}
        out, big = subdivision_grid_model(h, model, side, counts, args.ell)
        return make_grid(big, big), out.to_obj(subdivide(h, counts))
    if name == "grid-band":
        cycles = grid_band_cycles(args.side, args.l1, args.l2)
        return make_grid(args.side, args.side), cycle_packing_obj(cycles)
    if name == "grid-ham":
        cyc = grid_hamiltonian_cycle(args.a, args.b, args.skip_corner)
        return make_grid(args.a, args.b), cycle_packing_obj([cyc])
    if name == "cycle-packing":
        if not args.graph:
            raise InputError("cycle-packing needs --graph")
        g = _load_graph(args.graph)
        cycles = cycle_packing_exact(g)
        obj = cycle_packing_obj(cycles)
        obj["claimed_value"] = len(cycles)
        return g, obj
    raise InputError(f"unknown construction {name!r}")


def cmd_embed(args) -> int:
    try:
        host, obj = _embed(args)
    except ValueError as exc:
        if isinstance(exc, FormatError):
            raise
        raise InputError(str(exc)) from exc
    ok, reason = verify_certificate(obj, host)
    if not ok:
        print(f"internal error: construction failed self-check: {reason}", file=sys.stderr)
        return EXIT_FAIL
    _write(args.cert, _dump(obj))
    if args.graph_out:
        _write(args.graph_out, serialize(host, "json"))
    return EXIT_OK


# ---------------------------------------------------------------- check-bounds


def _parse_overrides(items: Sequence[str]) -> dict[str, int]:
    out = {}
    for item in items:
        fam, sep, value = item.partition("=")
        if not sep or fam not in FAMILIES:
            raise InputError(f"bad override {item!r}; expected family=integer")
        try:
            out[fam] = int(value)
        except ValueError as exc:
            raise InputError(f"bad override value in {item!r}") from exc
    return out


def cmd_check_bounds(args) -> int:
    from .suite import run_suite

    overrides = _parse_overrides(args.override)
    results_path = args.results or os.environ.get("MINORLAB_RESULTS")
    records = []

    def show(res):
        print(f"{res.name:<24} {res.verdict}", flush=True)
        print(f"  {res.name}: {res.seconds:.2f}s", file=sys.stderr)

    print(f"{'case':<24} verdict")
    results = run_suite(args.suite, args.seed, args.jobs, overrides, on_result=show)
    records = [r.to_record(args.seed) for r in results]
    if results_path:
        try:
            with open(results_path, "a") as fh:
                for rec in records:
                    fh.write(json.dumps(rec, sort_keys=True) + "\n")
        except OSError as exc:
            raise InputError(f"cannot write results to {results_path}: {exc}") from exc
    failed = sum(r.verdict == "fail" for r in results)
    overruns = sum((r.record or {}).get("cap_overruns", 0) for r in results)
    print(f"{len(results) - failed}/{len(results)} passed; cap overruns: {overruns}")
    return EXIT_FAIL if failed else EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="minorlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a named graph")
    p.add_argument("family", help="grid, twisted-prism, prism, wheel, cycle, complete, path, "
                                  "petersen, complete-bipartite, binary-tree")
    p.add_argument("params", nargs="*", type=int)
    p.add_argument("--pi", help="comma-separated 1-indexed permutation for twisted-prism")
    p.add_argument("--format", choices=["json", "dimacs", "dot"], default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("tw", help="treewidth, exact or as a heuristic bracket")
    p.add_argument("graph")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", default=True)
    mode.add_argument("--heuristic", action="store_true")
    p.add_argument("--cert", help="write the tree decomposition here")
    p.set_defaults(func=cmd_tw)

    p = sub.add_parser("verify", help="check a certificate against a graph")
    p.add_argument("cert")
    p.add_argument("graph")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("embed", help="run a construction and write its certificate")
    p.add_argument("construction", choices=["grid-prism", "twisted-prism-grid", "phi", "grid-band",
                                            "grid-ham", "cycle-packing"])
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--ell", type=int, default=75)
    p.add_argument("--pi")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--base-grid", type=int, default=2)
    p.add_argument("--h", help="graph file to embed (phi); defaults to the base grid")
    p.add_argument("--count", type=int, help="uniform subdivision count (phi); random below ell if omitted")
    p.add_argument("--side", type=int, default=6)
    p.add_argument("--l1", type=int, default=5)
    p.add_argument("--l2", type=int, default=5)
    p.add_argument("--a", type=int, default=4)
    p.add_argument("--b", type=int, default=4)
    p.add_argument("--skip-corner", action="store_true")
    p.add_argument("--graph", help="input graph (cycle-packing)")
    p.add_argument("--cert")
    p.add_argument("--graph-out", help="also write the host graph")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("check-bounds", help="run the verification suite")
    p.add_argument("--suite", choices=["default", "full"], default="default")
    p.add_argument("--results", help="append JSONL records here (default: $MINORLAB_RESULTS)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--override", action="append", default=[], metavar="FAMILY=BOUND",
                   help="replace a catalog bound, e.g. cycle=0")
    p.set_defaults(func=cmd_check_bounds)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        if args.command == "tw" and not args.heuristic:
            print("hint: rerun with --heuristic", file=sys.stderr)
        return EXIT_CAP
    except (InputError, FormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
