import json
import subprocess
import sys

import pytest

from minorlab.bramble import grid_cross_bramble
from minorlab.cli import main
from minorlab.formats import from_json, to_json
from minorlab.graph import TwistedPrismSpec, make_complete, make_grid, make_prism, make_twisted_prism


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return write


def test_gen_examples(capsys):
    code, out, _ = run(capsys, "gen", "grid", 4, 4, "--format", "dimacs")
    assert code == 0 and out.splitlines()[0] == "p edge 16 24"
    code, out, _ = run(capsys, "gen", "twisted-prism", 8, "--pi", "3,5,2,1,8,7,4,6")
    assert from_json(out) == make_twisted_prism(TwistedPrismSpec(8, (3, 5, 2, 1, 8, 7, 4, 6)))
    code, out, _ = run(capsys, "gen", "wheel", 6, "--format", "json")
    assert json.loads(out)["n"] == 6
    code, out, _ = run(capsys, "gen", "petersen", "--format", "dot")
    assert out.startswith("graph")


@pytest.mark.parametrize("argv", [["gen", "grid", "3"], ["gen", "klein-bottle", "3"],
                                  ["gen", "twisted-prism", "4", "--pi", "1,1,2,3"]])
def test_gen_input_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_tw_exact_and_certificate(capsys, files, tmp_path):
    k5 = files("k5.json", to_json(make_complete(5)))
    assert run(capsys, "tw", k5)[1].strip() == "4"
    grid = files("grid.json", to_json(make_grid(4, 4)))
    cert = str(tmp_path / "td.json")
    code, out, _ = run(capsys, "tw", grid, "--exact", "--cert", cert)
    assert (code, out.strip()) == (0, "4")
    code, out, _ = run(capsys, "verify", cert, grid)
    assert code == 0 and json.loads(out)["verdict"] == "accept"


def test_tw_heuristic_and_cap(capsys, files):
    prism = files("p.json", to_json(make_twisted_prism(TwistedPrismSpec.identity(75))))
    code, out, _ = run(capsys, "tw", prism, "--heuristic")
    assert code == 0
    lower, upper = out.strip().split()
    assert lower.startswith("lower≥") and upper.startswith("upper≤")
    assert int(lower[6:]) <= int(upper[6:])
    code, _, err = run(capsys, "tw", prism)
    assert code == 3 and "--heuristic" in err


def test_verify_minor_model_and_tampering(capsys, files, tmp_path):
    cert = str(tmp_path / "gp.json")
    host = str(tmp_path / "grid.json")
    assert run(capsys, "embed", "grid-prism", "--r", 1, "--cert", cert, "--graph-out", host)[0] == 0
    code, out, _ = run(capsys, "verify", cert, host)
    assert code == 0 and json.loads(out) == {"type": "minor_model", "verdict": "accept", "reason": None}

    obj = json.loads(open(cert).read())
    obj["branch_sets"]["0"].append(obj["branch_sets"]["1"][0])
    bad = files("bad.json", json.dumps(obj))
    code, out, _ = run(capsys, "verify", bad, host)
    assert code == 1 and json.loads(out)["reason"] == "branch sets not disjoint"


def test_verify_bramble_claims(capsys, files):
    grid = files("g.json", to_json(make_grid(3, 3)))
    honest = files("b.json", json.dumps(grid_cross_bramble(3).to_obj(claimed_order=4)))
    assert run(capsys, "verify", honest, grid)[0] == 0
    inflated = files("b2.json", json.dumps(grid_cross_bramble(3).to_obj(claimed_order=5)))
    code, out, _ = run(capsys, "verify", inflated, grid)
    assert code == 1 and json.loads(out)["reason"] == "hitting set of size 4 found"


@pytest.mark.parametrize("cert", ['{"type": "mystery"}', "not json", '{"type": "bramble"}',
                                  '{"type": "minor_model", "h": {"n": 1, "edges": []}}'])
def test_verify_schema_errors(capsys, files, cert):
    grid = files("g.json", to_json(make_grid(2, 2)))
    assert run(capsys, "verify", files("c.json", cert), grid)[0] == 2


def test_verify_missing_file(capsys, tmp_path):
    assert run(capsys, "verify", tmp_path / "nope.json", tmp_path / "nope2.json")[0] == 2


@pytest.mark.parametrize("argv", [
    ["twisted-prism-grid", "--ell", 75, "--seed", 7],
    ["twisted-prism-grid", "--pi", ",".join(str(i) for i in range(1, 76))],
    ["grid-prism", "--r", 2],
    ["phi", "--base-grid", 2, "--ell", 5],
    ["phi", "--base-grid", 3, "--ell", 2, "--count", 1],
    ["grid-band", "--side", 6, "--l1", 11, "--l2", 5],
    ["grid-ham", "--a", 5, "--b", 5, "--skip-corner"],
])
def test_embed_certificates_verify(capsys, tmp_path, argv):
    cert, host = str(tmp_path / "c.json"), str(tmp_path / "h.json")
    assert run(capsys, "embed", *argv, "--cert", cert, "--graph-out", host)[0] == 0
    code, out, _ = run(capsys, "verify", cert, host)
    assert code == 0, out


def test_embed_grid_prism_size(capsys, tmp_path):
    cert = str(tmp_path / "c.json")
    run(capsys, "embed", "grid-prism", "--r", 2, "--cert", cert)
    obj = json.loads(open(cert).read())
    assert from_json(json.dumps(obj["h"])) == make_prism(24)


def test_embed_cycle_packing(capsys, files, tmp_path):
    g = files("g.json", to_json(make_grid(3, 3)))
    cert = str(tmp_path / "c.json")
    assert run(capsys, "embed", "cycle-packing", "--graph", g, "--cert", cert)[0] == 0
    assert json.loads(open(cert).read())["claimed_value"] == 1
    assert run(capsys, "verify", cert, g)[0] == 0


def test_embed_input_errors(capsys):
    assert run(capsys, "embed", "twisted-prism-grid", "--ell", 20)[0] == 2
    assert run(capsys, "embed", "grid-ham", "--a", 3, "--b", 3)[0] == 2
    assert run(capsys, "embed", "cycle-packing")[0] == 2


def test_check_bounds_default_passes(capsys, tmp_path):
    results = tmp_path / "r.jsonl"
    code, out, _ = run(capsys, "check-bounds", "--results", results)
    assert code == 0
    assert "14/14 passed" in out
    records = [json.loads(line) for line in results.read_text().splitlines()]
    assert len(records) == 14 and all(r["seed"] == 0 for r in records)
    assert all(r["verdict"] == "pass" for r in records)


def test_check_bounds_override_fails(capsys, tmp_path):
    code, out, _ = run(capsys, "check-bounds", "--results", tmp_path / "r.jsonl", "--override", "cycle=0")
    assert code == 1
    assert "bound-cycle-C4" in out and "fail" in out


def test_check_bounds_bad_override(capsys):
    assert run(capsys, "check-bounds", "--override", "cycle")[0] == 2
    assert run(capsys, "check-bounds", "--override", "dragon=3")[0] == 2


def test_check_bounds_env_results_path(capsys, tmp_path, monkeypatch):
    env_path = tmp_path / "env.jsonl"
    flag_path = tmp_path / "flag.jsonl"
    monkeypatch.setenv("MINORLAB_RESULTS", str(env_path))
    run(capsys, "check-bounds")
    assert env_path.exists()
    run(capsys, "check-bounds", "--results", flag_path)
    assert flag_path.exists()
    assert len(env_path.read_text().splitlines()) == 14


def test_check_bounds_jobs_do_not_change_records(capsys, tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    run(capsys, "check-bounds", "--seed", 3, "--results", a)
    run(capsys, "check-bounds", "--seed", 3, "--jobs", 2, "--results", b)
    assert a.read_bytes() == b.read_bytes()


def test_full_suite_is_byte_identical(tmp_path):
    outputs = []
    for name in ("a.jsonl", "b.jsonl"):
        path = tmp_path / name
        proc = subprocess.run([sys.executable, "-m", "minorlab", "check-bounds", "--suite", "full",
                               "--seed", "7", "--results", str(path)], capture_output=True, text=True)
        assert proc.returncode == 0, proc.stdout + proc.stderr
        outputs.append(path.read_bytes())
    assert outputs[0] == outputs[1]
