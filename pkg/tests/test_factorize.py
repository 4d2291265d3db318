from __future__ import annotations

import json

import pytest

from spiralblock.blockspace import build_block_space, canonical_signed_basis, positive_basis
from spiralblock.exactalg import ONE, V, ZERO, RatFunc
from spiralblock.factorize import (
    FactorizationError,
    LabelingError,
    Orbit,
    OrbitLabeling,
    build_m,
    factorize_m,
    odd_vanishing_report,
    p_matrix,
    parity_audit,
)
from spiralblock.ratmatrix import matmul


def _gram(d):
    space = build_block_space(d)
    pb = positive_basis(canonical_signed_basis(space))
    return [[space.pair(b, c) for c in pb.elements] for b in pb.elements]


@pytest.fixture(scope="module")
def d1_m(d1):
    return build_m(_gram(d1), OrbitLabeling.from_kappas([0, 2]))


def test_d1_factorization(d1_m):
    f = factorize_m(d1_m, OrbitLabeling.from_kappas([0, 2]))
    assert [list(r) for r in f.s] == [[ONE, ZERO], [ONE, ONE]]
    assert [list(r) for r in f.t] == [[ONE / (1 - V**4), ZERO], [ZERO, RatFunc.of(V**-4)]]
    assert [list(r) for r in f.sp] == [[ONE, ONE], [ZERO, ONE]]
    assert f.reconstruct() == d1_m
    assert parity_audit(f).ok and odd_vanishing_report(f)
    assert p_matrix(f) == [[ONE, ONE], [ZERO, ONE]]


def test_identity():
    m = [[ONE if i == j else ZERO for j in range(3)] for i in range(3)]
    f = factorize_m(m, OrbitLabeling.from_kappas([0, 1, 2]))
    assert [list(r) for r in f.t] == m and [list(r) for r in f.s] == m


def test_toy_fails_parity():
    m = [[ONE, RatFunc.of(V**-1)], [RatFunc.of(V**-1), ONE]]
    f = factorize_m(m, OrbitLabeling.from_kappas([0, 2]))
    assert f.s[1][0] == RatFunc.of(V**-1)
    assert f.t[1][1] == 1 - V**-2
    audit = parity_audit(f)
    assert not audit.p_parity and not audit.heart_fixed and audit.t_even
    assert not odd_vanishing_report(f)


def test_inconsistent_labeling(d1_m):
    with pytest.raises(FactorizationError, match="inconsistent labeling"):
        factorize_m(d1_m, OrbitLabeling.from_kappas([0, 0]))


def test_shared_orbit_block(d1_m):
    one_orbit = OrbitLabeling((Orbit("a", 0, (0, 1)),))
    f = factorize_m(d1_m, one_orbit)
    assert [list(r) for r in f.t] == d1_m


def test_singular_block():
    m = [[ZERO, ONE], [ONE, ZERO]]
    with pytest.raises(FactorizationError, match="singular block"):
        factorize_m(m, OrbitLabeling.from_kappas([0, 2]))


def test_labeling_errors(tmp_path):
    with pytest.raises(LabelingError):
        OrbitLabeling.from_kappas([0]).check(2)
    with pytest.raises(LabelingError):
        build_m([[ONE, ONE]], OrbitLabeling.from_kappas([0]))
    bad = tmp_path / "lab.json"
    bad.write_text(json.dumps({"orbits": [{"id": "x", "kappa": -1, "members": [0]}]}))
    with pytest.raises(LabelingError):
        OrbitLabeling.load(bad)


def test_permutation_equivariance(d1_m):
    """Relabeling the input order does not change the factors in kappa order."""
    swapped = [[d1_m[1][1], d1_m[1][0]], [d1_m[0][1], d1_m[0][0]]]
    a = factorize_m(d1_m, OrbitLabeling.from_kappas([0, 2]))
    b = factorize_m(swapped, OrbitLabeling.from_kappas([2, 0]))
    assert b.ordering == (1, 0)
    assert (a.s, a.t, a.sp) == (b.s, b.t, b.sp)


def test_uniqueness(d1_m):
    """Any other unitriangular S with block-diagonal T fails to reproduce M."""
    other_s = [[ONE, ZERO], [RatFunc.of(V**-2), ONE]]
    f = factorize_m(d1_m, OrbitLabeling.from_kappas([0, 2]))
    t = [list(r) for r in f.t]
    sp = [[other_s[j][i] for j in range(2)] for i in range(2)]
    assert matmul(matmul(other_s, t), sp) != d1_m


def test_d3_parity(d3):
    lab = OrbitLabeling.from_kappas([0, 4, 6])
    f = factorize_m(build_m(_gram(d3), lab), lab)
    assert parity_audit(f).ok
    assert p_matrix(f) == [[ONE, 1 + V**-2, ONE], [ZERO, ONE, ONE], [ZERO, ZERO, ONE]]


def test_json_shape(d1_m):
    doc = factorize_m(d1_m, OrbitLabeling.from_kappas([0, 2])).to_json()
    assert set(doc) == {"ordering", "S", "T", "Sp", "P", "audit"}
    assert doc["audit"] == {"pParity": True, "tEven": True, "heartFixed": True}
