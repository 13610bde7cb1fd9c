import dataclasses
import io
import json

import pytest

from etacert.cli import main, parse_exponents
from etacert.congruences import PAPER_CASES
from etacert.qseries import ExponentVector

K7 = ["--m", "25", "--M", "35", "--N", "35", "--t", "17",
      "--r", "1:4,5:-1,7:-1", "--rprime", "1:3,7:11", "--mod", "5"]


def run(argv, **kwargs):
    out = io.StringIO()
    status = main(argv, out=out, **kwargs)
    return status, out.getvalue()


def test_parse_exponents():
    assert parse_exponents("1:4,5:-1,7:-1") == {1: 4, 5: -1, 7: -1}
    assert parse_exponents("") == {}


def test_verify_paper_text():
    status, out = run(["verify-paper"])
    assert status == 0
    lines = [line for line in out.splitlines() if line.endswith("verified")
             and "orbit=" in line]
    assert len(lines) == 5
    assert "elapsed" not in out
    assert "proved: p_8(25n+16) = 0 (mod 5)" in out


def test_verify_paper_json_is_deterministic():
    status, out = run(["verify-paper", "--json"])
    assert status == 0
    certs = json.loads(out)
    assert [c["floor_v"] for c in certs] == [28, 42, 84, 13, 11]
    assert all(c["verdict"] == "verified" for c in certs)
    assert run(["verify-paper", "--json"])[1] == out


def test_verify_paper_timing():
    status, out = run(["verify-paper", "--timing"])
    assert status == 0 and "elapsed" in out.splitlines()[-1]


def test_verify_paper_corrupted_registry():
    bad = dict(PAPER_CASES)
    bad["k7"] = dataclasses.replace(bad["k7"], rprime=ExponentVector(35, {1: 3}))
    status, out = run(["verify-paper"], registry=bad)
    assert status == 1
    assert "failed at cusp-bound" in out


def test_verify_paper_inconsistent_registry():
    bad = dict(PAPER_CASES)
    bad["k7"] = dataclasses.replace(bad["k7"], k=8)
    assert run(["verify-paper"], registry=bad)[0] == 1


def test_verify_k7():
    status, out = run(["verify"] + K7)
    assert status == 0
    assert "verdict: orbit={17} floor_v=28 verified" in out


def test_verify_json():
    status, out = run(["verify", "--json"] + K7)
    assert status == 0
    assert json.loads(out)["floor_v"] == 28


def test_verify_delta_star_failure():
    argv = list(K7)
    argv[argv.index("--N") + 1] = "7"
    argv[argv.index("--rprime") + 1] = "1:3,7:11"
    status, out = run(["verify"] + argv)
    assert status == 1
    assert '"condition": "C1"' in out


@pytest.mark.parametrize("argv", [
    ["verify"] + K7[:-6] + ["--r", "1:4,5", "--rprime", "1:3", "--mod", "5"],
    ["verify"] + [a if a != "1:3,7:11" else "3:1" for a in K7],
    ["verify"] + [a if a != "17" else "30" for a in K7],
    ["coeff", "--k", "1"],
    ["coeff", "--k", "0", "--up-to", "20000"],
    ["scan", "--k", "1", "--m", "25", "--mod", "5", "--n-checks", "5000"],
    ["frobnicate"],
    [],
])
def test_usage_errors(argv, capsys):
    assert run(argv)[0] == 2


def test_coeff():
    assert run(["coeff", "--k", "0", "--up-to", "5"]) == (0, "0 1\n1 1\n2 2\n3 3\n4 5\n5 7\n")
    assert run(["coeff", "--k", "2", "--up-to", "2"])[1] == "0 1\n1 1\n2 3\n"
    assert run(["coeff", "--k", "7", "--up-to", "0"])[1] == "0 1\n"
    status, out = run(["coeff", "--k", "7", "--up-to", "17", "--mod", "5", "--json"])
    assert status == 0 and json.loads(out)[17] == 0


def test_coeff_guard_env(monkeypatch):
    monkeypatch.setenv("ETACERT_WORK_GUARD", "10")
    assert run(["coeff", "--k", "0", "--up-to", "11"])[0] == 2
    assert run(["coeff", "--k", "0", "--up-to", "10"])[0] == 0


def test_scan():
    status, out = run(["scan", "--k", "2", "--m", "3", "--mod", "3"])
    assert status == 0
    assert out.splitlines()[0].startswith("CANDIDATE (not a proof) t=2")
    status, out = run(["scan", "--k", "7", "--m", "25", "--mod", "5"])
    assert "t=17:" in out
    status, out = run(["scan", "--k", "7", "--m", "25", "--mod", "5", "--json"])
    assert 17 in json.loads(out)["candidates"]
    assert json.loads(out)["status"] == "CANDIDATE (not a proof)"


def test_scan_deterministic():
    first = run(["scan", "--k", "0", "--m", "2", "--mod", "2"])
    assert first == run(["scan", "--k", "0", "--m", "2", "--mod", "2"])
    assert first[0] == 0
