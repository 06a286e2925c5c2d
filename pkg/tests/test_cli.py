import json

import pytest

from qmodular.certify import dumps
from qmodular.cli import UsageError, parse_complex, run


def test_expand_G(capsys):
    assert run(["expand", "--series", "G", "--order", "8", "--format", "text"]) == 0
    assert capsys.readouterr().out.strip() == "1 + q + q^2 + q^3 + 2q^4 + 2q^5 + 3q^6 + 3q^7 + 4q^8"


def test_expand_json_and_flags(capsys):
    assert run(["expand", "--series", "AG", "--k", "3", "--i", "3", "--order", "8", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["series"] == "AG:3,3" and data["order"] == 8
    assert data["coefficients"][0] == {"exponent": 0, "numerator": 1, "denominator": 1}
    assert run(["expand", "--series", "A", "--m", "3", "--order", "6"]) == 0
    assert capsys.readouterr().out.strip() == "1 + q + q^2"


def test_check_exit_codes(capsys):
    assert run(["check", "--suite", "rr-log-deriv", "--order", "500"]) == 0
    out = capsys.readouterr().out
    assert "2 passed, 0 failed" in out
    assert run(["check", "--suite", "ag-sum-product", "--k", "3", "--order", "40", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["all_passed"] is True


def test_certify_rr_to_file(tmp_path, capsys):
    out = tmp_path / "cert.json"
    assert run(["certify", "--family", "rr", "--tol", "1e-9", "--out", str(out)]) == 0
    text = out.read_text()
    data = json.loads(text)
    assert data["verdict"] == "CERTIFIED"
    assert dumps(data) + "\n" == text
    assert "verdict CERTIFIED" in capsys.readouterr().err


def test_certify_ag_discrepancy_exit_code(capsys):
    assert run(["certify", "--family", "ag", "--k", "3", "--format", "json"]) == 3
    assert json.loads(capsys.readouterr().out)["verdict"] == "CERTIFIED_WITH_DISCREPANCY"


def test_eval(capsys):
    assert run(["eval", "--series", "G", "--tau", "i", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["values"][0]["alpha"] == ["-1", "60"]
    assert data["values"][0]["value"][0] == pytest.approx(1.11247686986, abs=1e-10)
    assert run(["eval", "--family", "rr", "--tau", "0.1+1.2i"]) == 0
    assert run(["eval", "--series", "E+", "--tau", "0.3+1i"]) == 0


@pytest.mark.parametrize("argv,flag", [
    (["frobnicate"], "command"),
    (["expand"], "--series"),
    (["expand", "--series", "ZZ"], "--series"),
    (["expand", "--series", "AG", "--k", "3"], "--k"),
    (["check", "--suite", "nope"], "--suite"),
    (["check"], "--suite"),
    (["certify"], "--family"),
    (["certify", "--family", "rr", "--k", "3"], "--k"),
    (["eval", "--series", "G"], "--tau"),
    (["eval", "--series", "G", "--tau", "1+"], "--tau"),
    (["eval", "--series", "G", "--tau", "0.1+0.01i"], "--tau"),
    (["expand", "--series", "G", "--order", "x"], "--order"),
    (["expand", "--series", "G", "--format", "xml"], "--format"),
])
def test_usage_errors(argv, flag, capsys):
    assert run(argv) == 2
    assert flag in capsys.readouterr().err


def test_parse_complex():
    assert parse_complex("0.1+1.2i") == complex(0.1, 1.2)
    assert parse_complex("-0.3 - 0.5i") == complex(-0.3, -0.5)
    assert parse_complex("i") == 1j
    assert parse_complex("2.5i") == 2.5j
    assert parse_complex("1e-1+1E0i") == complex(0.1, 1.0)
    assert parse_complex("3") == 3
    for bad in ["", "abc", "1+2j", "1+2i+3i"]:
        with pytest.raises(UsageError):
            parse_complex(bad)
