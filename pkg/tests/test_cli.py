import json
import subprocess
import sys

import pytest

from coxlab.cli import main

SQ = "x1^2,x2^2,x3^2"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_hilbert_and_macaulay_examples(capsys):
    assert run(capsys, "hilbert", "--variety", "p:3", "--class", "5")[1].strip() == "56"
    assert run(capsys, "macaulay", "lower", "5", "2")[1].strip() == "2"
    code, out, _ = run(capsys, "macaulay", "decomp", "5", "2", "--json")
    assert code == 0 and json.loads(out)


def test_check_macaulay_example(capsys):
    code, out, _ = run(capsys, "check", "macaulay", "--variety", "p:2", "--n", "3", "--trials", "200",
                       "--seed", "42", "--json")
    rep = json.loads(out)
    assert code == 0 and rep["violations"] == 0 and len(rep["records"]) == 200
    assert rep["fingerprint"]["seed"] == 42


def test_link_and_li(capsys):
    code, out, _ = run(capsys, "gorenstein", "link", "--variety", "p:2", "--gens", "x1^3,x2^3,x3^3",
                       "--socle", "x1^2*x2^2*x3^2", "--gens2", SQ, "--socle2", "x1*x2*x3")
    assert code == 0 and "x1*x2*x3" in out
    for i in range(3):
        code, out, _ = run(capsys, "ideal", "li", "--variety", "p:3", "--gens", SQ + ",x4^2", "--eta", "1",
                           "--k", "1", "--i", str(i))
        assert code == 0 and out.strip() == "1"


@pytest.mark.parametrize(
    "argv,code",
    [
        (["gorenstein", "verify", "--variety", "p:2", "--gens", SQ, "--socle", "x1*x2*x3"], 0),
        (["gorenstein", "verify", "--variety", "p:2", "--gens", SQ, "--socle", "x1^2*x2*x3"], 1),
        (["check", "restriction", "--variety", "pxp:1,1", "--divisor", "1,1", "--n", "1", "--trials", "5"], 0),
        (["check", "macaulay", "--variety", "f:1", "--divisor", "1,1", "--trials", "2"], 2),
        (["macaulay", "lower", "-1", "2"], 2),
        (["bounds", "corollary", "5", "1", "9"], 2),
        (["hilbert", "--variety", "zz:3", "--class", "1"], 2),
        (["variety", "validate", "--fan", "/nonexistent.json"], 2),
        (["bounds", "certificate", "--eps", "1", "--k", "1", "--r", "4"], 0),
    ],
)
def test_exit_code_matrix(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_usage_error_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["macaulay", "nope", "1", "1"])
    assert exc.value.code == 2


def test_forced_campaign_is_exploratory(capsys):
    code, out, _ = run(capsys, "check", "macaulay", "--variety", "f:1", "--divisor", "1,1", "--n", "1",
                       "--trials", "3", "--force", "--json")
    assert json.loads(out)["exploratory"] is True and code in (0, 1)


def test_json_byte_identical_across_processes():
    argv = [sys.executable, "-m", "coxlab", "check", "restriction", "--variety", "p:2", "--n", "1-2",
            "--trials", "10", "--seed", "7", "--json"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["verdict"] is True
