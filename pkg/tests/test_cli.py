import json
import re
import subprocess
import sys

import pytest

import dwcalc.kappa as kappa_mod
from dwcalc.cli import main, parse_args
from dwcalc.cocycles import omega_l
from dwcalc.cyclotomic import Cyclotomic, RootOfUnity
from dwcalc.seifert import dw_formula, parse_seifert


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_valid_compute():
    cfg = parse_args(["compute", "--group", "cyclic:9", "--level", "4", "--seifert", "g=1;(2,1),(3,-1)"])
    assert cfg.level == 4 and cfg.group.order == 9 and cfg.seifert.fibers == ((2, 1), (3, -1))


@pytest.mark.parametrize(
    "argv, flag",
    [
        (["compute", "--group", "cyclic:9", "--level", "1", "--seifert", "g=0;(2,4)"], "--seifert"),
        (["compute", "--group", "cyclic:9", "--level", "9", "--seifert", "g=0;(1,1)"], "--level"),
        (["compute", "--group", "symmetric:3", "--level", "1", "--seifert", "g=0;"], "--level"),
        (["compute", "--group", "nope:3", "--seifert", "g=0;"], "--group"),
        (["compute", "--group", "cyclic:3", "--seifert", "g=0;", "--bogus"], "--bogus"),
        (["gauss", "--p", "9", "--a", "1"], "--p"),
        (["kappa", "--group", "cyclic:4", "--level", "1", "--a", "1", "--b", "1", "--z", "7"], "--z"),
    ],
)
def test_usage_errors(argv, flag, capsys):
    with pytest.raises(SystemExit) as exc:
        parse_args(argv)
    assert exc.value.code == 2
    assert flag in capsys.readouterr().err


def test_compute_json_roundtrip(capsys):
    argv = ["compute", "--group", "cyclic:9", "--level", "4", "--seifert", "g=1;(2,1),(3,-1)", "--format", "json"]
    code, out, _ = run(argv, capsys)
    assert code == 0
    data = json.loads(out)
    w = omega_l(9, 4)
    expect = dw_formula(w.group, w, parse_seifert("g=1;(2,1),(3,-1)")).value
    assert Cyclotomic.from_json(data["value"]) == expect
    assert data["method"] == "formula"


def test_compute_methods_agree(capsys):
    values = {}
    for method in ("prime", "formula"):
        code, out, _ = run(
            ["compute", "--group", "cyclic:5", "--level", "2", "--seifert", "g=1;(5,2),(3,1)",
             "--method", method, "--format", "json"],
            capsys,
        )
        assert code == 0
        values[method] = Cyclotomic.from_json(json.loads(out)["value"])
    assert values["prime"] == values["formula"]


def test_compute_auto_picks_oracle_for_nonabelian(capsys):
    code, out, _ = run(["compute", "--group", "symmetric:3", "--seifert", "g=0;(1,1)"], capsys)
    assert code == 0
    assert "Z = 1/6" in out and "method = oracle" in out


def test_oracle_refuses_twisted(capsys):
    code, _, err = run(
        ["compute", "--group", "cyclic:3", "--level", "1", "--seifert", "g=0;", "--method", "oracle"], capsys
    )
    assert code == 2 and "oracle" in err


def test_budget_exit_code(capsys):
    code, _, err = run(
        ["compute", "--group", "symmetric:4", "--seifert", "g=2;(2,1)", "--method", "oracle", "--budget", "10"],
        capsys,
    )
    assert code == 3 and "budget" in err


def test_cocycle_file(tmp_path, capsys):
    path = tmp_path / "w.json"
    path.write_text(json.dumps(omega_l(3, 1).to_json()))
    code, out, _ = run(["compute", "--group", "cyclic:3", "--cocycle", str(path), "--seifert", "g=0;(1,1),(1,2)"], capsys)
    assert code == 0
    assert "Z = -1/3 - (2/3)*z3" in out


def test_verify_kappa_passes(capsys):
    code, out, _ = run(["verify", "--suite", "kappa", "--max-order", "5"], capsys)
    assert code == 0
    assert re.search(r"kappa\s+PASS", out)


def test_verify_catches_sign_bug(monkeypatch, capsys):
    honest = kappa_mod.kappa

    def buggy(q):
        k = honest(q)
        return k.inverse() if q.a * q.b < 0 else k

    monkeypatch.setattr(kappa_mod, "kappa", buggy)
    code, out, _ = run(["verify", "--suite", "kappa", "--max-order", "4", "--format", "json"], capsys)
    assert code == 1
    suite = json.loads(out)["suites"][0]
    assert not suite["passed"]
    assert re.match(r"m=\d+ l=\d+ a=-?\d+ b=-?\d+ z=\d+", suite["witness"])


def test_kappa_command(capsys):
    code, out, _ = run(["kappa", "--group", "cyclic:3", "--level", "1", "--a", "4", "--b", "1", "--z", "1", "--oracle",
                        "--format", "json"], capsys)
    data = json.loads(out)
    assert code == 0 and data["agree"]
    assert RootOfUnity(data["kappa"]["order"], data["kappa"]["exponent"]) == RootOfUnity(3, 2)


def test_gauss_command(capsys):
    code, out, _ = run(["gauss", "--p", "3", "--a", "1", "--format", "json"], capsys)
    data = json.loads(out)
    assert code == 0 and data["legendre"] == 1 and data["norm"] == "3"
    assert Cyclotomic.from_json(data["value"]) == 1 + 2 * RootOfUnity(3, 1).to_cyclotomic()


def test_characters_command(capsys):
    code, out, _ = run(["characters", "--group", "cyclic:3", "--level", "2", "--format", "json"], capsys)
    data = json.loads(out)
    assert code == 0 and len(data["characters"]) == 9
    assert all(c["dim"] == "1" for c in data["characters"])
    assert data["gram"] == [["1" if i == j else "0" for j in range(9)] for i in range(9)]


def test_output_is_byte_identical_across_processes():
    argv = [sys.executable, "-m", "dwcalc.cli", "compute", "--group", "abelian:2,4",
            "--seifert", "g=1;(2,1),(3,-1),(4,3)", "--format", "json"]
    runs = [subprocess.run(argv, capture_output=True, check=True).stdout for _ in range(2)]
    assert runs[0] == runs[1]
    assert json.loads(runs[0])["method"] == "formula"
