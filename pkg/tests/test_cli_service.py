import json

import pytest
from fastapi.testclient import TestClient

from repcr import cli
from repcr.service import app

client = TestClient(app)


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_char_simple(capsys):
    code, out, _ = run(capsys, "char", "G2", "--p", "3", "--weight", "1,0", "--simple", "--json")
    assert code == 0 and json.loads(out)["dim"] == 7


def test_char_weyl_symbolic(capsys):
    code, out, _ = run(capsys, "char", "--type", "A3", "--weight", "ω2", "--json")
    assert code == 0 and json.loads(out)["dim"] == 6


def test_cr_verdicts(capsys):
    code, out, _ = run(capsys, "cr", "A9", "--p", "2", "--lambda", "ω2", "--mu", "ω9", "--json")
    data = json.loads(out)
    assert code == 0 and data["verdict"] == "CR" and data["certificate"]["rule"] == "an_p2_case3"
    code, out, _ = run(capsys, "cr", "G2", "--p", "2", "--lambda", "1,0", "--mu", "0,1", "--oracle")
    assert code == 0 and "NotCR" in out and "agree: True" in out


def test_jantzen(capsys):
    code, out, _ = run(capsys, "jantzen", "G2", "--p", "7", "--weight", "2,0")
    assert code == 0 and "[0,0] 1" in out.replace(" ", "").replace("]1", "] 1")


@pytest.mark.parametrize("argv", [
    ["cr", "G2", "--p", "4", "--lambda", "1,0", "--mu", "0,1"],
    ["char", "X9", "--weight", "1"],
    ["char", "A2", "--weight", "1,-1"],
    ["char", "A2", "--weight", "1,0,0"],
    ["char", "A2", "--weight", "1,0", "--simple"],
    ["char", "--weight", "1,0"],
    ["reproduce", "nosuch"],
    ["cr", "A2", "--p", "2"],
])
def test_usage_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        code = cli.main(argv)
        raise SystemExit(code)
    assert exc.value.code == 2


def test_reproduce_dry_run(capsys):
    code, out, _ = run(capsys, "reproduce", "g2p5", "--dry-run")
    assert code == 0 and "checks" in out


def test_reproduce_failure_exit_1(capsys):
    code, out, _ = run(capsys, "reproduce", "g2p2")
    assert code == 1 and "FAIL  g2p2.factor_L(2w2)" in out


def test_service_endpoints():
    assert client.get("/health").json() == {"status": "ok"}
    r = client.post("/char", json={"type": "G2", "weight": "1,0", "mode": "simple", "p": 2})
    assert r.status_code == 200 and r.json()["dim"] == 6
    r = client.post("/cr", json={"type": "A9", "p": 2, "lambda": "ω2", "mu": "ω9"})
    assert r.json()["verdict"] == "CR"
    r = client.post("/jantzen", json={"type": "G2", "weight": "2,0", "p": 7})
    assert r.status_code == 200
    r = client.post("/reproduce/g2p5", json={"dry_run": True})
    assert r.status_code == 200 and r.json()["checks"]


def test_service_errors():
    assert client.post("/cr", json={"type": "G2", "p": 6, "lambda": "1,0", "mu": "0,1"}).status_code == 422
    assert client.post("/char", json={"type": "Q3", "weight": "1"}).status_code == 422
    assert client.post("/reproduce/nosuch").status_code == 422
    assert client.post("/cr", json={"type": "G2", "p": 1, "lambda": "1,0", "mu": "0,1"}).status_code == 422
