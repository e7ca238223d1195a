import json

import pytest

from actforge.cli import main
from actforge.workspace import load_workspace


def run(capsys, *argv):
    code = main(["--json", *argv])
    out = capsys.readouterr().out.strip().splitlines()
    return code, json.loads(out[-1])


def test_construct_and_validate(capsys, tmp_path):
    path = str(tmp_path / "w.json")
    code, rep = run(capsys, "construct", "diagonal", "--monoid", "Z2", "--out", path)
    assert code == 0 and rep["size"] == 4
    code, rep = run(capsys, "validate", path)
    assert code == 0 and rep["counts"]["acts"] == 1
    assert load_workspace(path).acts["diag(Z2)"].size == 4


@pytest.mark.parametrize("argv,size", [
    (["construct", "dp", "--act", "regular:Z2", "--act", "small:Z2:2"], 8),
    (["construct", "wreath", "--act", "regular:Z2", "--act", "regular:E2"], 4),
    (["construct", "wreath-monoid", "--act", "regular:Z2", "--act", "regular:Z2"], 8),
    (["construct", "m0", "--monoid", "Z3"], 4),
    (["construct", "attach", "--monoid", "Z2", "--act", "regular:Z2"], 4),
    (["construct", "product-monoid", "--monoid", "cyclic:2", "--monoid", "chain:3"], 6),
])
def test_construct_sizes(capsys, argv, size):
    code, rep = run(capsys, *argv)
    assert code == 0 and rep["size"] == size


def test_generate(capsys):
    code, rep = run(capsys, "generate", "diagonal", "--monoid", "Z3")
    assert code == 0 and rep["generates"] and (rep["U"], rep["V"]) == ([0, 1], [0, 1])
    code, rep = run(capsys, "generate", "diagonal", "--monoid", "Z3", "--rectangular")
    assert (rep["U"], rep["V"]) == ([0], [0, 1, 2])
    code, rep = run(capsys, "generate", "minimal", "--act", "regular:T2")
    assert code == 0 and rep["elements"] == [1]


@pytest.mark.parametrize("argv", [
    ["present", "act", "--act", "small:E2:2"],
    ["present", "act", "--act", "regular:Z3", "--canonical", "--reduce"],
    ["present", "diagonal", "--monoid", "E2"],
    ["present", "m0", "--monoid", "Z2"],
    ["present", "product-diagonal", "--monoid", "Z2", "--monoid", "trivial"],
    ["present", "dp", "--act", "regular:E2", "--act", "small:E2:3"],
    ["present", "wreath", "--act", "regular:Z2", "--act", "regular:E2"],
])
def test_present_verifies(capsys, argv):
    code, rep = run(capsys, *argv)
    assert code == 0 and rep["verdict"]["ok"]


def test_present_literal_fails_with_witness(capsys):
    code, rep = run(capsys, "present", "product-diagonal", "--monoid", "Z2", "--monoid", "trivial", "--literal")
    assert code == 1
    v = rep["verdict"]
    assert not v["ok"] and (v["closure_classes"], v["kernel_classes"]) == (8, 4) and v["witness"]


def test_verify_and_connect(capsys, tmp_path):
    p = str(tmp_path / "p.json")
    c = str(tmp_path / "c.json")
    run(capsys, "present", "act", "--act", "regular:Z3", "--canonical", "--out", p)
    code, rep = run(capsys, "verify", p)
    assert code == 0 and all(v["ok"] for v in rep["results"].values())
    code, rep = run(capsys, "connect", "--presentation", p, "--lhs", "0.g", "--rhs", "2.g2", "--out", c)
    assert code == 0 and len(rep["certificate"]["steps"]) == 1
    code, rep = run(capsys, "connect", "--replay", c)
    assert code == 0


def test_connect_not_consequence(capsys, tmp_path):
    p = str(tmp_path / "p.json")
    run(capsys, "present", "act", "--act", "free:Z2:2", "--out", p)
    code, rep = run(capsys, "connect", "--presentation", p, "--lhs", "0.1", "--rhs", "1.1")
    assert code == 1 and rep["error"] == "NotConsequence"


def test_connect_maps(capsys):
    code, rep = run(capsys, "connect", "--maps", "--monoid", "E2", "--U", "0,1", "--at", "0",
                    "--theta", "1,0", "--phi", "1,1")
    assert code == 0
    assert rep["certificate"]["steps"] == [{"mode": "toU", "psi": [1, 0], "u": 0}]


@pytest.mark.parametrize("acts,U,before,after", [
    (("regular:Z2", "regular:E2"), "left-zero", 4, 1),
    (("regular:Z2", "regular:Z3"), "fg", 9, 2),
])
def test_reduce_wreath(capsys, acts, U, before, after):
    code, rep = run(capsys, "reduce", "--wreath", "--act", acts[0], "--act", acts[1], "--U", U)
    assert code == 0 and (rep["t1_before"], rep["t1_after"]) == (before, after) and rep["verdict"]["ok"]


def test_reduce_presentation_file(capsys, tmp_path):
    p = str(tmp_path / "p.json")
    out = str(tmp_path / "r.json")
    run(capsys, "present", "act", "--act", "regular:Z3", "--canonical", "--out", p)
    code, _ = run(capsys, "reduce", p, "--out", out)
    assert code == 0
    assert load_workspace(out).presentations


def test_input_errors_exit_2(capsys, tmp_path):
    code, rep = run(capsys, "construct", "diagonal", "--monoid", "Q8")
    assert code == 2 and rep["error"] == "ValidationError"
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    code, rep = run(capsys, "validate", str(bad))
    assert code == 2 and rep["error"] == "ParseError"


def test_cap_exit_3(capsys, monkeypatch):
    monkeypatch.setenv("ACTFORGE_CAP", "3")
    code, rep = run(capsys, "construct", "diagonal", "--monoid", "Z2")
    assert code == 3 and rep["error"] == "SizeLimitExceeded"


def test_plain_output(capsys):
    assert main(["construct", "m0", "--monoid", "Z2"]) == 0
    assert "Z2^0" in capsys.readouterr().out


def test_suite_subset(capsys):
    code, rep = run(capsys, "suite", "--only", "5", "9")
    assert code == 0
