from __future__ import annotations

import json

import pytest

from spiralblock.cli import run

D1 = ["--principal", "A1", "--degrees", "0", "--m", "1", "--eta", "2"]


def test_validate_ok(capsys):
    assert run(["validate", *D1]) == 0
    assert capsys.readouterr().out.strip() == "valid"


def test_rank_a2(capsys):
    assert run(["rank", "--principal", "A2", "--degrees", "0,0", "--m", "1", "--eta", "2"]) == 0
    assert capsys.readouterr().out.strip() == "3"


def test_invalid_datum(fixtures_dir, capsys):
    assert run(["validate", "--datum", str(fixtures_dir / "bad_symmetry.json")]) == 1
    assert "symmetry violated" in capsys.readouterr().err
    assert run(["rank", "--datum", str(fixtures_dir / "bad_infinite.json")]) == 1
    assert "group closure cap exceeded" in capsys.readouterr().err


def test_usage_errors(tmp_path, capsys):
    assert run(["rank"]) == 2
    assert run(["rank", "--principal", "A1"]) == 2
    assert run(["nonsense"]) == 2
    garbled = tmp_path / "x.json"
    garbled.write_text("{")
    assert run(["rank", "--datum", str(garbled)]) == 2
    assert run(["factorize", *D1]) == 2
    capsys.readouterr()


def test_factorize_bad_labeling(fixtures_dir, capsys):
    code = run(["factorize", "--datum", str(fixtures_dir / "d1.json"), "--labeling", str(fixtures_dir / "bad_labeling_d1.json")])
    assert code == 1
    assert "inconsistent labeling" in capsys.readouterr().err


def test_factorize_d1(fixtures_dir, tmp_path):
    out = tmp_path / "f.json"
    code = run(["factorize", "--datum", str(fixtures_dir / "d1.json"), "--labeling", str(fixtures_dir / "labeling_d1.json"),
                "--strict", "--out", str(out)])
    doc = json.loads(out.read_text())
    assert code == 0
    assert doc["audit"] == {"pParity": True, "tEven": True, "heartFixed": True}
    assert doc["ordering"] == [0, 1]


def test_toy_strict(fixtures_dir, capsys):
    args = ["factorize", "--matrix", str(fixtures_dir / "toy_matrix.json"), "--labeling", str(fixtures_dir / "labeling_d1.json")]
    assert run(args) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["audit"]["pParity"] is False
    assert run([*args, "--strict"]) == 1


def test_audit_d1(capsys):
    assert run(["audit", *D1, "--eta-alt", "3"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines and all(line.startswith("PASS") for line in lines)


@pytest.mark.parametrize("cmd", ["chambers", "gram", "basis"])
def test_json_commands(cmd, tmp_path):
    out = tmp_path / f"{cmd}.json"
    assert run([cmd, *D1, "--out", str(out)]) == 0
    assert json.loads(out.read_text())


def test_report_deterministic(fixtures_dir, tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        assert run(["report", "--datum", str(fixtures_dir / "d1.json"), "--labeling",
                    str(fixtures_dir / "labeling_d1.json"), "--seed", "3", "--out", str(p)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()
    doc = json.loads(paths[0].read_text())
    assert doc["rank"] == 2 and doc["radicalDim"] == 1 and len(doc["chambers"]) == 3
