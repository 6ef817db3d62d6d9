import json
import subprocess
import sys

import pytest

from defhyper.cli import main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def ap_spec(tmp_path, capsys):
    path = tmp_path / "ap.txt"
    assert main(["build-example", "ap", "n=1", "t=3", "--out", str(path)]) == 0
    capsys.readouterr()
    return path


@pytest.fixture
def subspace_spec(tmp_path, capsys):
    path = tmp_path / "sub.txt"
    assert main(["build-example", "subspace", "n=3", "k=1", "--out", str(path)]) == 0
    capsys.readouterr()
    return path


def test_density(ap_spec, capsys):
    code, out, _ = run(["density", str(ap_spec)], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["density"]["minimal_r"] == 1


def test_induce(subspace_spec, capsys):
    code, out, _ = run(["induce", str(subspace_spec), "--d", "1", "--k", "2"], capsys)
    data = json.loads(out)
    assert data["density"]["dimension"] == 3
    assert data["induced_spec"].startswith("prime 2147483647\nhypergraph n=2 t=2")


def test_verify_main_json_out(subspace_spec, tmp_path, capsys):
    target = tmp_path / "rep.json"
    code, out, _ = run(["verify-main", str(subspace_spec), "--d", "1", "--k", "2", "--json-out", str(target)], capsys)
    assert code == 0
    assert target.read_text() == out
    assert json.loads(out)["verdict"] == "pass"


def test_verify_prints_and_expansion(subspace_spec, tmp_path, capsys):
    code, out, _ = run(["verify-prints", str(subspace_spec), "--d", "1", "--k", "2", "--trials", "3"], capsys)
    assert json.loads(out)["trials"][0]["partial_dim"] == 3
    lines = tmp_path / "lines.txt"
    main(["build-example", "lines", "--out", str(lines)])
    capsys.readouterr()
    code, out, _ = run(["verify-expansion", str(lines), "--d", "1", "--k", "1", "--through-origin"], capsys)
    data = json.loads(out)
    assert data["verdict"] == "flagged"
    assert {tr["dim_proj2_Af"] for tr in data["trials"]} == {0}


def test_interp_rank(capsys):
    code, out, _ = run(["interp-rank", "--k", "1", "--n", "1", "--t", "3", "--d", "2"], capsys)
    data = json.loads(out)
    assert data["verdict"] == "pass"
    assert len(data["trials"]) == 20


def test_oracle_dim(ap_spec, capsys):
    code, out, _ = run(["oracle-dim", str(ap_spec), "--primes", "5,7"], capsys)
    assert json.loads(out)["oracle"]["counts"] == [20, 42]


def test_errors_exit_nonzero(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("hypergraph n=1 t=2\ncell\n  eq x1_1 +\nend\n")
    code, _, err = run(["density", str(bad)], capsys)
    assert code == 2
    assert "line 3" in err
    code, _, err = run(["density", str(tmp_path / "missing.txt")], capsys)
    assert code == 2


def test_same_seed_same_bytes(subspace_spec, capsys):
    argv = ["verify-main", str(subspace_spec), "--d", "1", "--k", "2", "--seed", "4"]
    _, a, _ = run(argv, capsys)
    _, b, _ = run(argv, capsys)
    assert a == b


def test_module_entry_point(ap_spec):
    res = subprocess.run([sys.executable, "-m", "defhyper", "density", str(ap_spec)], capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["density"]["dimension"] == 2
