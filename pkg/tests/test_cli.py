import json

import pytest

from snmod.cli import EXIT_CAP, EXIT_DOMAIN, EXIT_FAIL, EXIT_OK, main


def run(capsys, *argv):
    rc = main(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


def run_json(capsys, *argv):
    rc, out, _ = run(capsys, *argv)
    assert rc == EXIT_OK
    return json.loads(out)


def test_partition_commands(capsys):
    assert run_json(capsys, "partition", "mullineux", "--p", "3", "(3,2,2)")["result"] == "(5,1,1)"
    assert run_json(capsys, "partition", "mullineux", "--p", "3", "(4,1,1)")["result"] == "(4,1,1)"
    assert run_json(capsys, "partition", "js", "--p", "2", "(5,3,1)")["result"] is True
    assert run_json(capsys, "partition", "special", "beta", "10")["result"] == "(6,4)"
    assert run_json(capsys, "partition", "regular", "--p", "2", "(3,2,1)")["result"] is True


def test_signature_and_crystal(capsys):
    out = run_json(capsys, "partition", "signature", "--p", "3", "--i", "0", "(5,4,2)")
    assert out["signatures"]["0"]["word"] == "+++" and out["signatures"]["0"]["phi"] == 3
    out = run_json(capsys, "partition", "crystal", "--p", "2", "(4,1)")
    assert out["crystal"]["0"]["f_tilde"] == "(5,1)" and out["crystal"]["1"]["epsilon"] == 2


def test_report_meta(capsys):
    out = run_json(capsys, "--seed", "5", "partition", "special", "alpha", "6")
    assert out["meta"]["seed"] == 5 and out["meta"]["caps"] == {"dim": 4096, "words": 200}
    assert "version" in out["meta"]


def test_module_commands(capsys):
    assert run_json(capsys, "module", "dim", "--p", "2", "D", "(6,4)")["result"] == 16
    assert run_json(capsys, "module", "fixed", "--p", "2", "S1dual", "--group", "wreath:3:2")["result"] == 1
    out = run_json(capsys, "module", "factors", "--p", "2", "M3", "--n", "9")
    assert out["factors"] == [["(9)", 2], ["(8,1)", 1], ["(7,2)", 1], ["(6,3)", 1]]
    assert run_json(capsys, "module", "hom", "--p", "2", "D(5,1)", "M2", "--n", "6")["result"] == 1


def test_perm_signature(capsys):
    out = run_json(capsys, "module", "perm-signature", "--p", "2", "--n", "10", "--k", "2")
    assert out["factors"] == [["(10)", 3], ["(9,1)", 2], ["(8,2)", 1]]


def test_classify(capsys):
    out = run_json(capsys, "classify", "--p", "2", "--n", "10", "--lambda", "(6,4)", "--group", "wreath:5:2")
    assert out["cases"] == ["A(vi)", "wreath iff"] and out["verdict"] == "Irreducible"
    out = run_json(capsys, "classify", "--p", "2", "--n", "10", "--lambda", "(9,1)",
                   "--group", "wreath:5:2", "--ground-truth")
    assert "A(v)" in out["cases"] and "TNat" in out["certificate"]
    assert out["ground_truth"] == "AbsIrr" and out["consistent"] is True


def test_survey(capsys, tmp_path):
    path = tmp_path / "s.json"
    rc, _, _ = run(capsys, "survey", "--p", "2", "--n", "8", "--families", "An,young,wreath",
                   "--no-timing", "--out", str(path))
    assert rc == EXIT_OK
    rep = json.loads(path.read_text())
    assert rep["cells"] and all(c["consistent"] for c in rep["cells"])
    first = path.read_bytes()
    run(capsys, "survey", "--p", "2", "--n", "8", "--families", "An,young,wreath", "--no-timing", "--out", str(path))
    assert path.read_bytes() == first


def test_json_is_deterministic(capsys):
    argv = ["module", "factors", "--p", "3", "M2", "--n", "7"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b


@pytest.mark.parametrize("argv", [
    ["partition", "mullineux", "--p", "2", "(2,2)"],
    ["partition", "mullineux", "--p", "3", "(3,a)"],
    ["module", "dim", "--p", "2", "D", "(3,3)"],
    ["classify", "--p", "2", "--n", "6", "--lambda", "(4,2)", "--group", "wreath:4:2"],
    ["classify", "--p", "2", "--n", "6", "--lambda", "(4,2)", "--group", "nonsense"],
    ["module", "dim", "--p", "2", "Q7"],
])
def test_domain_errors(capsys, argv):
    rc, out, err = run(capsys, *argv)
    assert rc == EXIT_DOMAIN and err.startswith("error:")


def test_cap_error(capsys):
    rc, _, err = run(capsys, "--dim-cap", "10", "module", "dim", "--p", "2", "D", "(6,4)")
    assert rc == EXIT_CAP


def test_config_file_and_override(capsys, tmp_path):
    cfg = tmp_path / "snmod.conf"
    cfg.write_text("# caps\ndim_cap = 10\nseed = 7\n")
    rc, _, _ = run(capsys, "--config", str(cfg), "module", "dim", "--p", "2", "D", "(6,4)")
    assert rc == EXIT_CAP
    out = run_json(capsys, "--config", str(cfg), "--dim-cap", "100", "module", "dim", "--p", "2", "D", "(6,4)")
    assert out["result"] == 16 and out["meta"]["seed"] == 7
    bad = tmp_path / "bad.conf"
    bad.write_text("colour = blue\n")
    rc, _, _ = run(capsys, "--config", str(bad), "partition", "special", "beta", "6")
    assert rc == EXIT_DOMAIN


def test_output_formats(capsys):
    rc, out, _ = run(capsys, "partition", "mullineux", "--p", "3", "(3,2,2)", "--output", "text")
    assert rc == 0 and out.strip() == "(5,1,1)"
    rc, out, _ = run(capsys, "module", "factors", "--p", "2", "M3", "--n", "9", "--output", "csv")
    assert out.splitlines()[0] == "label,mult" and len(out.splitlines()) == 5


def test_verify_exit_codes(capsys):
    rc, out, _ = run(capsys, "verify", "crystal", "--n", "12", "--p", "2", "--output", "text")
    assert rc == EXIT_OK and out.startswith("PASS crystal")
    rc, out, _ = run(capsys, "verify", "wilson", "--n", "10")
    assert rc == EXIT_OK and json.loads(out)["passed"]
    rc, out, _ = run(capsys, "verify", "x-elements", "--output", "text")
    assert "x3(v1^v2): v1^v4 - v2^v4" in out
    assert rc == (EXIT_OK if out.startswith("PASS") else EXIT_FAIL)
