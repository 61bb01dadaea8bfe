import json

import pytest

from crossedsq import cli

GOOD = {"L": "C2", "M": "C2", "N": "C2", "P": "C2",
        "lam": [0, 1], "lamp": [0, 1], "mu": [0, 1], "mup": [0, 1],
        "act_L": "trivial", "act_M": "trivial", "act_N": "trivial",
        "h": [[0, 0], [0, 0]]}


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


def run(*argv):
    return cli.run(list(argv))


def test_no_arguments_prints_usage(capsys):
    assert cli.main([]) == 2
    assert "usage" in capsys.readouterr().err


def test_unknown_subcommand(capsys):
    assert cli.main(["frobnicate"]) == 2


def test_missing_spec_is_usage_error(capsys):
    assert cli.main(["check-square"]) == 2


def test_unreadable_spec(tmp_path, capsys):
    assert cli.main(["mg0", "--spec", str(tmp_path / "absent.json")]) == 2
    assert "cannot read" in capsys.readouterr().err


def test_malformed_spec(tmp_path, capsys):
    p = tmp_path / "x.json"
    p.write_text("{not json")
    assert cli.main(["mg0", "--spec", str(p)]) == 2


def test_suspension_pi3_c2(tmp_path, capsys):
    g = write(tmp_path, "c2.json", {"kind": "table", "order": 2, "table": [[0, 1], [1, 0]]})
    out = tmp_path / "report.json"
    code, rep = run("suspension-pi3", "--group", g, "--out", str(out))
    assert code == 0
    res = rep["results"]
    assert res["orders"]["pi1"] == 1
    assert res["abelian_invariants"]["pi2"] == [2]
    assert res["abelian_invariants"]["pi3"] == [2]
    saved = json.loads(out.read_text())
    assert set(saved) >= {"command", "inputs", "results", "timing_ms"}
    assert saved["results"] == json.loads(json.dumps(res))


def test_check_square_good_and_bad(tmp_path, capsys):
    assert run("check-square", "--spec", write(tmp_path, "g.json", GOOD))[0] == 0
    bad = dict(GOOD, h=[[0, 0], [0, 1]])
    code, rep = run("check-square", "--spec", write(tmp_path, "b.json", bad), "--exhaustive")
    assert code == 1
    checks = rep["results"]["axiom_table"]["crossed square"]["checks"]
    failed = [c for c in checks.values() if not c["passed"]]
    assert failed and all("witness" in c for c in failed)


def test_check_square_inclusion(tmp_path, capsys):
    spec = write(tmp_path, "i.json", {"inclusion": "S3", "n1": [1], "n2": [3]})
    code, rep = run("check-square", "--spec", spec)
    assert code == 0
    assert rep["results"]["orders"]["P"] == 6


def test_bad_square_shape_is_spec_error(tmp_path, capsys):
    spec = write(tmp_path, "s.json", dict(GOOD, h=[[0]]))
    assert run("check-square", "--spec", spec)[0] == 2


def test_tensor_square_and_coproduct(tmp_path, capsys):
    g = write(tmp_path, "s3.json", "S3")
    code, rep = run("tensor-square", "--group", g)
    assert code == 0 and rep["results"]["orders"]["L"] == 6
    corner = {"x": {"M": "C2", "P": "C2", "d": [0, 0], "action": "trivial"},
              "y": {"M": "C3", "P": "C2", "d": [0, 0, 0], "action": "trivial"}}
    code, rep = run("coproduct", "--spec", write(tmp_path, "c.json", corner))
    assert code == 0 and rep["results"]["orders"]["coproduct"] == 6


def test_ellis_square(tmp_path, capsys):
    doc = {"xmod": {"M": "C2", "P": "C2", "d": [0, 0], "action": "trivial"}, "f3": {"b": 1}}
    code, rep = run("ellis-square", "--spec", write(tmp_path, "e.json", doc))
    assert code == 0
    assert rep["results"]["orders"]["P"] == 4


def test_ellis_square_rejects_bad_f3(tmp_path, capsys):
    doc = {"xmod": {"M": "C2", "P": "C2", "d": [0, 1]}, "f3": {"b": 1}}
    assert run("ellis-square", "--spec", write(tmp_path, "e.json", doc))[0] == 2


@pytest.mark.parametrize("command,key,order", [
    ("mg0", "mG0", 6), ("mg1", "M", 3), ("mg2", "M", 3), ("homotopy", "pi0", 6),
    ("moore", "NG1", 3), ("cg2", "pi1", 3),
])
def test_simplicial_commands_on_corpus(tmp_path, capsys, command, key, order):
    spec = write(tmp_path, "t.json", {"corpus": "nerve-C3-S3-twisted"})
    code, rep = run(command, "--spec", spec)
    assert code == 0
    assert rep["results"]["orders"][key] == order


def test_model_document(tmp_path, capsys):
    doc = {"kind": "model", "skeleton": {"B1": ["x"], "B2": ["y"], "f2": {"y": "x^2"}},
           "target": "C4", "B1": {"x": 1}}
    code, rep = run("mg1", "--spec", write(tmp_path, "m.json", doc))
    assert code == 0
    assert rep["results"]["orders"] == {"M": 2, "P": 4}


def test_model_with_broken_relator(tmp_path, capsys):
    doc = {"kind": "model", "skeleton": {"B1": ["x"], "B2": ["y"], "f2": {"y": "x^2"}},
           "target": "C4", "B1": {"x": 1}, "B2": {"y": 0}}
    assert run("mg0", "--spec", write(tmp_path, "m.json", doc))[0] == 2
    assert "relator" in capsys.readouterr().err


def test_overflow_exit_code(tmp_path, capsys):
    g = write(tmp_path, "z.json", {"kind": "fp", "gens": ["a"], "rels": []})
    assert run("suspension-pi3", "--group", g, "--max-cosets", "100")[0] == 2


def test_spot_check(tmp_path, capsys):
    code, rep = run("spot-check", "--group", write(tmp_path, "c3.json", "C3"))
    assert code == 0
    assert rep["results"]["orders"]["model_L"] == 1


def test_reports_are_deterministic(tmp_path, capsys):
    g = write(tmp_path, "c2.json", "C2")
    a = run("mg2", "--group", g)[1]
    b = run("mg2", "--group", g)[1]
    a.pop("timing_ms"), b.pop("timing_ms")
    assert a == b
