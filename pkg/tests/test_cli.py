from __future__ import annotations

import json
import os
import subprocess
import sys

import pytest

from verlie.cli import main, parse_object, run
from verlie.ver4 import UsageError


def _json(capsys):
    out = capsys.readouterr().out
    return json.loads(out)


def test_classify_P(capsys):
    assert main(["classify", "--m", "0", "--n", "1", "--field", "gf2"]) == 0
    cert = _json(capsys)
    assert cert["payload"]["orbit_count"] == 3
    assert cert["schema_version"] == 1 and cert["command"] == "classify"


def test_koszul_P(capsys):
    assert main(["koszul", "--object", "P", "--max-degree", "10"]) == 0
    assert _json(capsys)["verdicts"]["exact_in_positive_degrees"]


def test_fourcenter_glP(capsys):
    assert main(["fourcenter", "--m", "0", "--n", "1"]) == 0
    claims = _json(capsys)["payload"]["claims"]
    assert any(not c["expected_central"] and not c["central"] for c in claims)


def test_failing_verdict_exit_1(capsys):
    assert main(["verify-tables", "--table", "2*1+P", "--row", "2.3", "--field", "gf2"]) == 1
    assert _json(capsys)["verdicts"] == {"2*1+P/2.3": False}


@pytest.mark.parametrize(
    "argv",
    [
        ["classify", "--bogus"],
        ["nosuch"],
        ["casimir", "--lambda", "zz"],
        ["classify", "--m", "2", "--n", "1"],
        ["pbw", "--row", "3"],
        ["koszul", "--object", "Q"],
    ],
)
def test_usage_and_resource_errors_exit_2(argv, capsys):
    assert main(argv) == 2


def test_parse_object():
    assert parse_object("P") == (0, 1)
    assert parse_object("2*1+P") == (2, 1)
    assert parse_object("2P") == (0, 2)
    with pytest.raises(UsageError):
        parse_object("1+Q")


def test_params_field_literals(capsys):
    assert main(["casimir", "--m", "0", "--n", "1", "--field", "gf4", "--lambda", "t+1", "--mu", "t"]) == 0
    forms = _json(capsys)["payload"]["forms"]
    assert [(f["lambda"], f["mu"]) for f in forms] == [("t+1", "t")]


def test_certificates_deterministic_across_processes():
    outs = []
    for seed in ("0", "12345"):
        env = dict(os.environ, PYTHONHASHSEED=seed)
        r = subprocess.run(
            [sys.executable, "-m", "verlie.cli", "classify", "--m", "1", "--n", "1"],
            capture_output=True, env=env, check=False,
        )
        assert r.returncode == 0
        outs.append(r.stdout)
    assert outs[0] == outs[1]


def test_run_returns_certificate(capsys):
    code, cert = run(["center", "--max-degree", "2"])
    capsys.readouterr()
    assert cert["payload"]["centralizer_dims"] == [1, 2, 4]
    assert code == 1
