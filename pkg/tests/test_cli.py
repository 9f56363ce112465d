import json

import pytest

from nefcert.cli import run, symmetrize_report
from nefcert.divisors import divisor_D
from nefcert.pic import DegreeProblem, DivisorClass, enumerate_proper_partitions


def test_certify_then_verify(tmp_path, capsys):
    out = tmp_path / "e9.json"
    assert run(["certify", "--degrees", "1,1,1,1,1,1,1,1,1", "--m", "3", "--family", "E", "--out", str(out)]) == 0
    assert run(["verify", str(out)]) == 0
    assert "ACCEPT" in capsys.readouterr().out


def test_verify_rejects_tampered(tmp_path, capsys):
    out = tmp_path / "c.json"
    run(["certify", "--degrees", "1,1,1,1,1,1", "--m", "3", "--family", "D", "--out", str(out)])
    data = json.loads(out.read_text())
    data["weights"][0]["value"] = "100/1"
    out.write_text(json.dumps(data))
    capsys.readouterr()
    assert run(["verify", str(out), "--json"]) == 1
    report = json.loads(capsys.readouterr().out)
    assert not report["accepted"]
    assert "FlowMismatch" in {f["kind"] for f in report["failures"]}


def test_fnef(capsys):
    assert run(["fnef", "--degrees", "1,1,1,1", "--m", "4", "--family", "D", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["min_degree"] == "0"


def test_build(capsys):
    assert run(["build", "--degrees", "3,2,1,2,4,1,1,2,3,1,1,1", "--m", "11", "--family", "D"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["n"] == 12 and data["psi"][0] == "24/1"
    assert DivisorClass.from_json(data) == divisor_D(DegreeProblem((3, 2, 1, 2, 4, 1, 1, 2, 3, 1, 1, 1), 11))


def test_build_symmetric(capsys):
    assert run(["build", "--degrees", "1,1,1,1,1,1", "--m", "3", "--family", "E", "--symmetric"]) == 0
    sym = json.loads(capsys.readouterr().out)["symmetric"]
    assert sym == {"psi": "2", "boundary": {"Delta_2": "-2", "Delta_3": "-3"}}


def test_equiv_and_normal_form(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    a.write_text(json.dumps(DivisorClass(4, [1, 1, 0, 0]).to_json()))
    b.write_text(json.dumps(DivisorClass.pure_boundary(4, {(1, 3): 1, (1, 4): 1}).to_json()))
    assert run(["equiv", str(a), str(b)]) == 0
    b.write_text(json.dumps(DivisorClass.psi_class(3, 4).to_json()))
    assert run(["equiv", str(a), str(b)]) == 1
    assert run(["normal-form", str(a)]) == 2  # n = 4
    a.write_text(json.dumps(DivisorClass.pure_boundary(5, {(1, 2): 1}).to_json()))
    capsys.readouterr()
    assert run(["normal-form", str(a)]) == 0
    assert json.loads(capsys.readouterr().out)["psi"] == ["2/3", "2/3", "-1/3", "-1/3", "-1/3"]


@pytest.mark.parametrize("argv", [
    [],
    ["build", "--degrees", "1,1,1", "--m", "3", "--family", "D"],
    ["build", "--degrees", "1,1,1,2", "--m", "3", "--family", "D"],
    ["build", "--degrees", "x,1", "--m", "3", "--family", "D"],
    ["build", "--degrees", "1,1,1,1", "--m", "2", "--family", "E"],
    ["verify", "/nonexistent/file.json"],
])
def test_usage_errors(argv):
    assert run(argv) == 2


def test_math_failure_exit(tmp_path):
    # s = 1 admits no unbalancing order
    out = tmp_path / "x.json"
    argv = ["certify", "--degrees", "1,1,1,1", "--m", "4", "--family", "D", "--positive-on", "1,2", "--out", str(out)]
    assert run(argv) == 3


def test_grid(capsys):
    assert run(["grid", "--n-max", "6", "--m-list", "3,4", "--family", "E", "--fnef", "--json"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert len(rows) == 6
    assert all(r["cells"] == r["verified"] and not r["failures"] for r in rows)


def test_symmetrize_examples():
    sizes = {2: 1, 3: 1, 4: 2}
    B = DivisorClass.pure_boundary(9, {P: sizes[min(len(P.block), 9 - len(P.block))]
                                       for P in enumerate_proper_partitions(9)})
    prof = symmetrize_report(B)
    assert prof.psi == 0 and prof.boundary == {2: 1, 3: 1, 4: 2}
    assert symmetrize_report(divisor_D(DegreeProblem((1, 1, 1, 2, 4), 3))) is None
    assert set(symmetrize_report(DivisorClass.zero(7)).boundary.values()) == {0}
