import json
import subprocess
import sys

import pytest

from qtorus.cli import main
from qtorus.report import corpus_paths

CORPUS = {k: str(v) for k, v in corpus_paths().items()}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def _write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def test_analyze_text_and_json(capsys, tmp_path):
    code, out, _ = run(capsys, "analyze", "--config", CORPUS["rank2_ell3"])
    assert code == 0 and "PI degree d = 3" in out and "Z(L) = k[[x1^±3, x2^±3]]" in out
    code, out, _ = run(capsys, "analyze", "--config", CORPUS["rank2_ell3"], "--json", "-")
    assert code == 0 and json.loads(out)["pi_degree"] == 3
    dest = tmp_path / "r.json"
    code, out, _ = run(capsys, "analyze", "--config", CORPUS["all_anticommuting_n3"], "--json", str(dest))
    assert code == 0 and json.loads(dest.read_text())["witness"] == [1, 1, 1]


def test_pi_degree_and_center_basis(capsys):
    assert run(capsys, "pi-degree", "--config", CORPUS["all_anticommuting_n3"])[1] == "2\n"
    code, out, _ = run(capsys, "center-basis", "--config", CORPUS["partial_anticommuting_n3"], "--json")
    assert json.loads(out) == [[2, 0, 0], [0, 1, 1], [0, 0, 2]]
    out = run(capsys, "center-basis", "--config", CORPUS["all_anticommuting_n3"])[1]
    assert out.splitlines()[0] == "1 1 1"


def test_bad_config_exit_1(capsys, tmp_path):
    cfg = _write(tmp_path, "bad.json", {"n": 2, "ell": 2, "h": [[1, 1], [1, 0]]})
    code, _, err = run(capsys, "pi-degree", "--config", cfg)
    assert code == 1 and "q_11 ≠ 1" in err
    code, _, err = run(capsys, "pi-degree", "--config", str(tmp_path / "missing.json"))
    assert code == 1


def test_usage_error_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["oracle", "--config", CORPUS["q_minus1"], "--check", "bogus"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def _series(terms, precision="inf", shift=(0, 0)):
    return {"shift": list(shift), "precision": precision,
            "terms": [{"exp": list(e), "coeff": c} for e, c in terms]}


def test_mul_square(capsys, tmp_path):
    f = _write(tmp_path, "f.json", _series([((1, 0), ["1"]), ((0, 1), ["1"])]))
    code, out, _ = run(capsys, "mul", "--config", CORPUS["q_minus1"], "--lhs", f, "--rhs", f)
    assert code == 0
    assert json.loads(out) == _series([((2, 0), ["1"]), ((0, 2), ["1"])])
    dest = tmp_path / "out.json"
    run(capsys, "mul", "--config", CORPUS["q_minus1"], "--lhs", f, "--rhs", f, "--out", str(dest))
    assert json.loads(dest.read_text())["terms"][0]["exp"] == [2, 0]


def test_mul_prime_field(capsys, tmp_path):
    f = _write(tmp_path, "f.json", _series([((1, 0), "1"), ((0, 1), "1")]))
    code, out, _ = run(capsys, "mul", "--config", CORPUS["q_minus1_prime13"], "--lhs", f, "--rhs", f)
    assert code == 0 and json.loads(out)["terms"][1]["coeff"] == "1"


def test_invert(capsys, tmp_path):
    f = _write(tmp_path, "f.json", _series([((0, 0), ["1"]), ((1, 0), ["-1"])]))
    code, out, _ = run(capsys, "invert", "--config", CORPUS["q_minus1"], "--series", f, "--precision", "4")
    assert code == 0
    got = json.loads(out)
    assert got["precision"] == 4 and [t["exp"] for t in got["terms"]] == [[k, 0] for k in range(4)]
    g = _write(tmp_path, "g.json", _series([((1, 0), ["1"]), ((0, 1), ["1"])]))
    code, _, err = run(capsys, "invert", "--config", CORPUS["q_minus1"], "--series", g, "--precision", "4")
    assert code == 1 and err.startswith("error:")


def test_is_central(capsys, tmp_path):
    z = _write(tmp_path, "z.json", _series([((2, 0), ["1"])]))
    x = _write(tmp_path, "x.json", _series([((1, 0), ["1"])]))
    assert run(capsys, "is-central", "--config", CORPUS["q_minus1"], "--series", z)[:2] == (0, "true\n")
    assert run(capsys, "is-central", "--config", CORPUS["q_minus1"], "--series", x)[:2] == (0, "false\n")


def test_malformed_series(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    code, _, err = run(capsys, "is-central", "--config", CORPUS["q_minus1"], "--series", str(bad))
    assert code == 1 and "bad.json:1:" in err


@pytest.mark.parametrize("check", ["image", "kernel", "diagonal"])
def test_oracle_agrees(capsys, check):
    for name in ("all_anticommuting_n3", "partial_anticommuting_n3", "mixed_n4_ell6"):
        code, out, _ = run(capsys, "oracle", "--config", CORPUS[name], "--check", check)
        assert code == 0 and "agrees with lattice computation: yes" in out


def test_oracle_budget_exit_1(capsys, monkeypatch):
    monkeypatch.setenv("QTORUS_ORACLE_BUDGET", "3")
    code, _, err = run(capsys, "oracle", "--config", CORPUS["all_anticommuting_n3"], "--check", "image")
    assert code == 1 and "budget" in err


def test_verify_single_config(capsys):
    code, out, _ = run(capsys, "verify", "--config", CORPUS["all_anticommuting_n3"], "--seed", "3")
    assert code == 0 and "FAIL" not in out and "kernels:" in out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "qtorus", "pi-degree", "--config", CORPUS["mixed_n4_ell6"]],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout.strip().isdigit()
