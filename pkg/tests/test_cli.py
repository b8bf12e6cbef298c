import json
import subprocess
import sys

import pytest

from fibrum.cli import main
from fibrum.fib import FiberedElement, mackey_product, standard_basis
from fibrum.serialize import dump_element, dump_pair, dumps, load_element


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_group(capsys):
    code, doc = run_json(capsys, "group", "Q8")
    assert code == 0 and doc["order"] == 8 and len(doc["center"]) == 2
    assert doc["config"]["seed"] == 0


def test_group_text(capsys):
    code, out = run(capsys, "group", "S3", "--text")
    assert code == 0 and out.splitlines()[0].split() == ["index", "label", "order", "class"]


def test_group_from_file(tmp_path, capsys, g):
    from fibrum.serialize import dump_group

    path = tmp_path / "g.json"
    path.write_text(dumps(dump_group(g("D8"))))
    code, doc = run_json(capsys, "group", str(path))
    assert code == 0 and doc["order"] == 8


def test_basis(capsys):
    code, doc = run_json(capsys, "basis", "--g", "C2", "--h", "C1", "--n", "2")
    assert code == 0 and doc["size"] == 3


def test_product(tmp_path, capsys, g):
    G, H, K = g("C4"), g("C2"), g("C2")
    x = FiberedElement.basis(standard_basis(G, H, 4)[5])
    y = FiberedElement.basis(standard_basis(H, K, 4)[2])
    (tmp_path / "x.json").write_text(dumps(dump_element(x)))
    (tmp_path / "y.json").write_text(dumps(dump_element(y)))
    code, doc = run_json(capsys, "product", "--g", "C4", "--h", "C2", "--k", "C2", "--n", "4", str(tmp_path / "x.json"), str(tmp_path / "y.json"))
    assert code == 0
    assert load_element(doc) == mackey_product(x, y)


def test_product_modulus_mismatch(tmp_path, capsys, g):
    x = FiberedElement.basis(standard_basis(g("C2"), g("C2"), 2)[0])
    (tmp_path / "x.json").write_text(dumps(dump_element(x)))
    code, doc = run_json(capsys, "product", "--g", "C2", "--h", "C2", "--k", "C2", "--n", "4", str(tmp_path / "x.json"), str(tmp_path / "x.json"))
    assert code == 1 and doc["error"]


def test_reduced_q8(capsys):
    code, doc = run_json(capsys, "reduced", "--group", "Q8", "--n", "8")
    assert code == 0
    faithful_center = [p for p in doc["pairs"] if len(p["k"]) == 2 and sorted(p["kappa"]) == [0, 4]]
    assert faithful_center and all(p["reduced"] and p["hypothesis"] for p in faithful_center)


def test_linkage(capsys):
    code, doc = run_json(capsys, "linkage", "--g", "Q8", "--h", "D8", "--n", "4")
    assert code == 0 and doc["linked"] and doc["bruteforce"] and doc["extension"] and doc["witness"]
    code, doc = run_json(capsys, "linkage", "--g", "Q8", "--h", "D8", "--n", "2")
    assert code == 0 and not doc["linked"] and doc["witness"] is None


def test_gamma(capsys):
    code, doc = run_json(capsys, "gamma", "--group", "Q8", "--n", "4")
    assert code == 0 and doc["order"] == 6
    assert doc["ses"]["corrected_identity"] and not doc["ses"]["iota_injective"]


def test_idem(capsys):
    code, doc = run_json(capsys, "idem", "--group", "C4", "--n", "2", "--check")
    assert code == 0 and len(doc["pairs"]) == 5 and doc["relation_failures"] == []


def test_squeeze(capsys):
    code, doc = run_json(capsys, "squeeze", "--group", "C4", "--n", "4", "--k", "0,2", "--kappa", "0,2")
    assert code == 0 and doc["g_tilde_order"] == 2


def test_decompose(tmp_path, capsys, g):
    p = standard_basis(g("C4"), g("C2"), 4)[7]
    (tmp_path / "p.json").write_text(dumps(dump_pair(p)))
    code, doc = run_json(capsys, "decompose", str(tmp_path / "p.json"))
    assert code == 0 and [f["name"] for f in doc["factors"]] == ["ind", "inf", "ins", "middle", "del", "def", "res"]
    code, doc = run_json(capsys, "decompose", "--five", str(tmp_path / "p.json"))
    assert code == 0 and len(doc["factors"]) == 5


def test_simple_eval(capsys):
    code, doc = run_json(capsys, "simple-eval", "--group", "C1", "--n", "12", "--at", "S3,C4")
    assert code == 0 and doc["dims"] == {"S3": 3, "C4": 4}
    # Z/6 has no fourth roots of unity: only the classes of C4 up to Galois are separated
    code, doc = run_json(capsys, "simple-eval", "--group", "C1", "--n", "6", "--at", "C4")
    _, rank = run_json(capsys, "linearize", "--group", "C4", "--n", "6", "--p", str(doc["quadruple"]["module"]["p"]))
    assert doc["dims"]["C4"] == rank["rank"] == 3


def test_linearize(capsys):
    code, doc = run_json(capsys, "linearize", "--group", "S3", "--n", "6")
    assert code == 0 and doc["rank"] == 3 and doc["surjective"]
    code, doc = run_json(capsys, "linearize", "--probe", "C2xC2", "--n", "1", "--p", "5", "--functor", "burnside")
    assert code == 0 and doc["conditions"] == {"i": True, "ii": True, "iii": False}


def test_verify_mackey_small(capsys):
    code, doc = run_json(capsys, "verify", "mackey", "--max-order", "3", "--n", "4")
    assert code == 0 and doc["passed"] and doc["criteria"][0]["details"]["mismatches"] == []


def test_verify_exit_code_on_failure(capsys):
    code, doc = run_json(capsys, "verify", "ses", "--n", "2")
    assert code == 3 and not doc["passed"]


def test_errors(capsys):
    code, doc = run_json(capsys, "group", "Z7")
    assert code == 1 and doc["error"]
    code, doc = run_json(capsys, "basis", "--g", "C2", "--h", "C1")
    assert code == 1
    code, doc = run_json(capsys, "verify", "nosuch")
    assert code == 1
    with pytest.raises(SystemExit):
        main(["nosuch"])


def test_entry_point():
    r = subprocess.run([sys.executable, "-m", "fibrum.cli", "basis", "--g", "C3", "--h", "C1", "--n", "3"], capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["size"] == 4
