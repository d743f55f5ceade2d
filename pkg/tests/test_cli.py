import json

import pytest

from ringlock.cli import FAILED, INCONCLUSIVE, OK, USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_nfields(capsys):
    assert run(capsys, "nfields", "7") == (OK, "2 3 4 7\n")
    code, out = run(capsys, "nfields", "7", "--format", "json")
    assert json.loads(out)["fields"] == [2, 3, 4, 7]


@pytest.mark.parametrize("argv", [
    ["char-cert", "7"],
    ["reduce-cert", "5", "2"],
    ["reduce-cert", "22", "2", "--full"],
    ["eg-system", "2", "3"],
    ["bn", "2", "3", "T^3+T+1"],
    ["p2-trace", "3"],
    ["idem-cert", "5"],
    ["idem-cert", "2", "T^2+T+1"],
])
def test_generators_roundtrip_through_verify(capsys, tmp_path, argv):
    path = tmp_path / "c.json"
    assert main(argv + ["--out", str(path)]) == OK
    assert run(capsys, "verify", str(path))[0] == OK
    code, text = run(capsys, "render", str(path))
    assert code == OK and text.strip()
    code, text = run(capsys, *argv, "--format", "text")
    assert code == OK and text.strip()


def test_tampered_certificate(capsys, tmp_path):
    path = tmp_path / "c.json"
    main(["char-cert", "7", "--out", str(path)])
    d = json.loads(path.read_text())
    d["payload"]["n"] = 9
    path.write_text(json.dumps(d))
    assert run(capsys, "verify", str(path))[0] == FAILED
    assert run(capsys, "render", str(path))[0] == FAILED


def test_usage_errors(capsys):
    assert main(["bogus"]) == USAGE
    assert main(["verify", "/nonexistent/file.json"]) == USAGE
    assert main(["table", "10", "5"]) == USAGE
    assert main(["bn", "2", "3", "T^3+T+1", "--enum", "custom"]) == USAGE
    assert main(["nfields", "x"]) == USAGE
    capsys.readouterr()


def test_number_commands(capsys):
    code, out = run(capsys, "simple", "--limit", "12")
    assert out.split() == ["2", "3", "5", "6", "11", "12"]
    assert run(capsys, "good", "2", "20")[0] == OK
    code, out = run(capsys, "unpleasant", "2", "2", "100", "--format", "json")
    data = json.loads(out)
    assert data["min"] == 74 and data["unpleasant"] == sorted(data["unpleasant"])
    assert run(capsys, "density", "1000")[0] == OK


def test_period(capsys):
    assert run(capsys, "period", "2", "3", "T^2+T") == (OK, "period 3 index 1\n")
    assert run(capsys, "period", "2", "6", "T^2", "--budget", "2")[0] == INCONCLUSIVE


def test_bn_no_termination_is_inconclusive(capsys):
    assert run(capsys, "bn", "2", "3", "T^3+T+1", "--enum", "affine")[0] == INCONCLUSIVE


def test_wstatus(capsys, tmp_path, monkeypatch):
    code, out = run(capsys, "wstatus", "2", "6", "T^2")
    assert code == OK and "Open" in out
    monkeypatch.setenv("RINGLOCK_BUDGET", "64")
    trace = tmp_path / "t.json"
    code, out = run(capsys, "wstatus", "3", "2", "T^3", "--saturate", "--trace-out", str(trace))
    assert code == OK and "ProvenSemantically" in out
    assert run(capsys, "verify", str(trace))[0] == OK
    monkeypatch.setenv("RINGLOCK_BUDGET", "8")
    assert run(capsys, "wstatus", "3", "2", "T^3", "--saturate")[0] == INCONCLUSIVE


def test_plan_and_bundle(capsys, tmp_path):
    code, out = run(capsys, "plan", "16", "--bundle", str(tmp_path / "b"))
    assert code == OK and "Complete" in out
    assert run(capsys, "verify", str(tmp_path / "b" / "manifest.json"))[0] == OK
    code, out = run(capsys, "plan", "64", "--format", "json")
    assert code == OK and json.loads(out)["status"] == "Open"


def test_table(capsys):
    code, out = run(capsys, "table", "60", "66")
    assert code == OK
    assert out.splitlines()[4] == "64 Open"
