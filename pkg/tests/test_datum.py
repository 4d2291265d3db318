from __future__ import annotations

import json

import pytest

from spiralblock.datum import BlockDatum, DatumError, load_datum, principal_datum, save_datum, validate
from spiralblock.rootsys import build_root_system


def test_d1_shape(d1):
    assert len(d1.car) == 3
    assert len(d1.weyl_elements) == 2
    assert set(d1.centralizer_roots) == {(2,), (-2,)}
    assert d1.delta == 0 and validate(d1) == []


def test_d2_shape(d2):
    assert sorted((e.i, e.alpha) for e in d2.car) == [(0, (0,)), (1, (-2,)), (1, (2,))]
    assert d2.centralizer_roots == ()
    # centralizer rule: no degree-0 roots, so W is trivial
    assert len(d2.weyl_elements) == 1


def test_d2_stabilizer_rule():
    d = principal_datum(build_root_system("A1"), [1], 2, 1, weyl="stabilizer")
    assert len(d.weyl_elements) == 2 and validate(d) == []


def test_d3_shape(d3):
    zero = [e for e in d3.car if not any(e.alpha)]
    assert len(d3.car) == 7 and zero[0].dim == 2
    assert len(d3.weyl_elements) == 6 and len(d3.centralizer_roots) == 6


def test_round_trip(tmp_path, d3):
    path = tmp_path / "d3.json"
    save_datum(d3, path)
    again = load_datum(path)
    assert again.to_json() == d3.to_json()
    assert BlockDatum.from_json(json.loads(path.read_text())) == again


def test_fixture_file(fixtures_dir, d1):
    assert load_datum(fixtures_dir / "d1.json").to_json() == d1.to_json()


def test_missing_partner_rejected(fixtures_dir):
    with pytest.raises(DatumError) as err:
        load_datum(fixtures_dir / "bad_symmetry.json")
    assert any(v.startswith("symmetry violated") for v in err.value.violations)


def test_infinite_generator_rejected(fixtures_dir):
    with pytest.raises(DatumError) as err:
        load_datum(fixtures_dir / "bad_infinite.json")
    assert any("group closure cap exceeded" in v for v in err.value.violations)


def test_shear_generator_rejected(d1):
    data = d1.to_json()
    data["rankE"] = 2
    data["car"] = [{"i": 0, "alpha": [0, 0], "n": 0, "dim": 1}]
    data["centralizerRoots"] = []
    data["weylGenerators"] = [[[1, 1], [0, 1]]]
    problems = validate(BlockDatum.from_json(data))
    assert any("group closure cap exceeded" in p for p in problems)


def test_parse_errors(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(DatumError):
        load_datum(path)
    path.write_text(json.dumps({"m": 1}))
    with pytest.raises(DatumError):
        load_datum(path)


def test_with_eta(d1):
    assert d1.with_eta(3).eta == 3 and d1.with_eta(3).car == d1.car
