"""End-to-end tests of the command-line interface."""

import json
import random
from fractions import Fraction

import pytest

from logresidue import PiScalar, Scalar, random_curvature, random_gauge
from logresidue import cli


def write_gauge(path, G):
    def entry(x):
        return str(x.re) if x.im == 0 else [str(x.re), str(x.im)]

    data = {
        "n": G.n,
        "d_W": G.dw,
        "A_lin": [
            [[[entry(x) for x in row] for row in m.rows] for m in rowA]
            for rowA in G.A_lin
        ],
    }
    path.write_text(json.dumps(data))


def write_curvature(path, R):
    data = {
        "n": R.n,
        "R": [
            [[[str(x) for x in row] for row in mat] for mat in blk]
            for blk in R.R
        ],
    }
    path.write_text(json.dumps(data))


@pytest.fixture
def gauge2(tmp_path):
    G = random_gauge(2, 2, random.Random(101))
    path = tmp_path / "gauge2.json"
    write_gauge(path, G)
    return path


def run(capsys, argv):
    code = cli.main(argv)
    return code, capsys.readouterr().out


def test_index_flat_passes(gauge2, capsys):
    code, out = run(capsys, ["index-flat", str(gauge2), "--method", "taylor"])
    assert code == 0
    assert "PASS" in out and "FAIL" not in out
    assert "pi^-1" in out


def test_emit_symbol_roundtrip(gauge2, tmp_path, capsys):
    sym_path = tmp_path / "sym.json"
    code, out = run(
        capsys,
        ["index-flat", str(gauge2), "--method", "taylor",
         "--emit-symbol", str(sym_path)],
    )
    assert code == 0
    sres_line = next(l for l in out.splitlines() if "sres_log" in l)
    code, out = run(
        capsys, ["residue", str(sym_path), "--method", "all", "--trace", "str"]
    )
    assert code == 0
    assert "routes agree: yes" in out
    # the exact value printed by the index pipeline reappears verbatim
    exact = sres_line.split(":")[1].split("(~")[0].strip()
    assert exact in out


def test_json_output_is_machine_readable(gauge2, capsys):
    code, out = run(
        capsys, ["index-flat", str(gauge2), "--method", "taylor", "--json"]
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["command"] == "index-flat"
    assert payload["results"]["taylor"]["pass"] is True


def test_determinism(gauge2, capsys):
    argv = ["index-flat", str(gauge2), "--method", "taylor", "--json"]
    _, first = run(capsys, argv)
    _, second = run(capsys, argv)
    assert first == second


def test_input_errors_exit_2(tmp_path, capsys):
    missing = tmp_path / "nope.json"
    assert cli.main(["residue", str(missing)]) == 2
    capsys.readouterr()
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert cli.main(["residue", str(bad)]) == 2
    capsys.readouterr()
    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps({"n": 2, "d_W": 1}))
    assert cli.main(["index-dirac4", str(wrong)]) == 2
    capsys.readouterr()


def test_selftest_negative_control(monkeypatch, capsys):
    monkeypatch.setattr(
        cli, "_moment_reference", lambda n, alpha: PiScalar(Scalar(1), n // 2)
    )
    code, out = run(capsys, ["selftest", "--seed", "0", "--json"])
    assert code == 4
    payload = json.loads(out)
    failed = [c for c in payload["checks"] if not c["pass"]]
    assert any("moment" in c["name"] for c in failed)


def test_rational_parsing():
    assert cli._parse_scalar("3/4") == Scalar(Fraction(3, 4))
    assert cli._parse_scalar(["1/2", "-5"]) == Scalar(Fraction(1, 2), Fraction(-5))
    with pytest.raises(cli.InputError):
        cli._parse_scalar("1/0")
    with pytest.raises(cli.InputError):
        cli._parse_scalar({"p": 1})


def test_residue_rejects_shallow_floor(gauge2, tmp_path, capsys):
    sym_path = tmp_path / "sym.json"
    run(capsys, ["index-flat", str(gauge2), "--method", "taylor",
                 "--emit-symbol", str(sym_path)])
    code, _ = run(capsys, ["residue", str(sym_path), "--floor", "0"])
    assert code == 2
