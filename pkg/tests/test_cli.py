"""Command-line interface: exit codes, output formats, determinism."""

import json

import pytest

from macpieri.cli import run


def capture(capsys, argv):
    code = run(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_poly_latex_example(capsys):
    code, out, _ = capture(capsys, ["poly", "--partition", "2", "--vars", "2",
                                    "--format", "latex"])
    assert code == 0
    assert "m_{(2)}" in out and "m_{(1,1)}" in out


def test_pieri_latex_example(capsys):
    code, out, _ = capture(capsys, ["pieri", "--n", "1", "--weight", "1",
                                    "--r", "1", "--format", "latex"])
    assert code == 0
    assert out.strip() == r"P_{(2)} + \frac{(1-q)(1+t)}{1-qt}\,P_{(0)}"


def test_pieri_json_roundtrip(capsys):
    code, out, _ = capture(capsys, ["pieri", "--n", "2", "--weight", "1,1",
                                    "--r", "2", "--format", "json"])
    assert code == 0
    data = json.loads(out)
    assert data["terms"]
    for term in data["terms"]:
        assert set(term) >= {"theta", "coeff", "target"}


def test_recur_json(capsys):
    code, out, _ = capture(capsys, ["recur", "--n", "2", "--weight", "2,1",
                                    "--k", "2", "--format", "json"])
    assert code == 0
    data = json.loads(out)
    assert all(term["target"][1] == 0 for term in data["terms"])


def test_matinv_symbolic(capsys):
    code, out, _ = capture(capsys, ["matinv", "--n", "1", "--k", "1", "--r", "2",
                                    "--box", "0..3", "--symbolic"])
    assert code == 0
    data = json.loads(out)
    assert data["pairs_checked"] > 0 and data["failures"] == []


def test_matinv_trials(capsys):
    code, out, _ = capture(capsys, ["matinv", "--n", "2", "--k", "2", "--r", "1",
                                    "--box", "0,0..1,1", "--trials", "2",
                                    "--rng-seed", "5"])
    assert code == 0
    assert json.loads(out)["failures"] == []


def test_verify_suite(capsys):
    code, out, _ = capture(capsys, ["verify", "--suite", "pieri",
                                    "--max-size", "3"])
    assert code == 0
    data = json.loads(out)
    assert data["ok"]
    assert data["totals"]["fail"] == 0 and data["totals"]["pass"] > 0


def test_exit_codes(capsys):
    assert run(["no-such-verb"]) == 2
    capsys.readouterr()
    assert run(["pieri", "--n", "1", "--weight", "oops", "--r", "1"]) == 2
    capsys.readouterr()


def test_determinism(capsys):
    argv = ["recur", "--n", "3", "--weight", "1,1,1", "--k", "2",
            "--format", "latex"]
    _, first, _ = capture(capsys, argv)
    _, second, _ = capture(capsys, argv)
    assert first == second
