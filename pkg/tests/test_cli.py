import json

import pytest

from ncalg.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_factor_quat_diff(capsys):
    code, out, _ = run(capsys, "factor", "quat-diff", "i+j")
    assert code == 0
    data = json.loads(out)
    assert data["kind"] == "quat-difference" and data["config"]["seed"] == 0


def test_factor_two_comm_field(capsys):
    code, out, _ = run(capsys, "factor", "two-comm", "--field", "5", "1,0;0,1")
    assert code == 0
    assert json.loads(out)["domain"] == {"kind": "gf", "p": 5}


def test_norm_boundary_exit_3(capsys):
    code, _, err = run(capsys, "factor", "quat-diff", "3")
    assert code == 3
    assert "‖q‖ ≤ 2" in err


def test_parse_error_exit_2(capsys):
    code, _, _ = run(capsys, "factor", "two-comm", "1,2;3")
    assert code == 2


def test_forced_waring_case_precondition(capsys):
    code, _, err = run(capsys, "factor", "waring2", "--field", "7", "1,0;0,2", "--case", "b")
    assert code == 3 and "case" in err


@pytest.mark.parametrize("argv", [
    ("factor", "two-comm", "--field", "7", "1,2,0;3,4,1;0,0,5"),
    ("factor", "two-comm", "--domain", "quat", "1+i,2;j,3-k"),
    ("factor", "qgtn", "1,2,i;0,j,1;k,1,0"),
    ("factor", "skew", "0,1;-1,0"),
    ("factor", "sl-diff", "--domain", "rational", "1,2;3,4"),
    ("factor", "quat-comm", "0.6+0.8i"),
    ("factor", "waring2", "--domain", "quat-exact", "1,i;j,k"),
])
def test_round_trip_and_determinism(tmp_path, capsys, argv):
    path = tmp_path / "c.json"
    assert main([*argv, "--seed", "7", "-o", str(path)]) == 0
    first = path.read_text(encoding="utf-8")
    assert main([*argv, "--seed", "7", "-o", str(path)]) == 0
    assert path.read_text(encoding="utf-8") == first
    assert main(["verify", str(path)]) == 0
    capsys.readouterr()


def test_tampered_certificate_fails(tmp_path, capsys):
    path = tmp_path / "c.json"
    assert main(["factor", "two-comm", "--field", "5", "1,2;3,4", "-o", str(path)]) == 0
    data = json.loads(path.read_text())
    row = data["parts"][1]["operands"][0][0]
    row[0] = "1" if row[0] != "1" else "2"
    path.write_text(json.dumps(data))
    code, out, _ = run(capsys, "verify", str(path))
    assert code == 1 and "MISMATCH" in out


def test_verify_malformed_file(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{")
    assert run(capsys, "verify", str(path))[0] == 2
    assert run(capsys, "verify", str(tmp_path / "missing.json"))[0] == 2


def test_env_seed_override(monkeypatch, capsys):
    monkeypatch.setenv("NCALG_SEED", "42")
    code, out, _ = run(capsys, "factor", "sl-diff", "--field", "7", "1,2;3,4")
    assert code == 0 and json.loads(out)["config"]["seed"] == 42


def test_text_format(capsys):
    code, out, _ = run(capsys, "factor", "two-comm", "--field", "5", "1,2;3,4", "--format", "text")
    assert code == 0 and out.startswith("two-commutators: OK")


def test_explore_dichotomy(capsys):
    code, out, _ = run(capsys, "explore", "dichotomy", "--ring", "2x2@2", "x1*x2 - x2*x1")
    data = json.loads(out)
    assert code == 0 and data["verdict"] == "FULL" and data["exhaustive"]


def test_explore_pcomm(capsys):
    code, out, _ = run(capsys, "explore", "pcomm", "--ring", "2x2@3", "--p", "x^2")
    assert code == 0 and json.loads(out)["verdict"] == "EQUAL_[R,R]"


def test_explore_sweep_csv(capsys):
    code, out, err = run(capsys, "explore", "sweep", "--ring", "2x2@2", "--max-deg", "2")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("index,poly") and len(lines) == 1 + 2 ** 7
    assert "REFUTATION" not in out
    assert json.loads(err)["refutations"] == 0


@pytest.mark.parametrize("argv", [
    ("explore", "image", "x1^2", "--ring", "2x2@3"),
    ("explore", "sumlen", "x1*x2 - x2*x1", "--ring", "2x2@3", "-k", "2"),
    ("explore", "probe", "-m", "2", "-k", "2", "--ring", "2x2@3"),
    ("explore", "tilde", "x1*x2*x3", "--ring", "2x2@2"),
])
def test_explore_modes(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and "config" in json.loads(out)


def test_explore_budget_exit_5(capsys):
    code, _, _ = run(capsys, "explore", "image", "x1", "--ring", "3x3@3")
    assert code == 5
