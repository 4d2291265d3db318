from __future__ import annotations

import pytest

from spiralblock.blockspace import (
    bar_vector,
    block_rank,
    build_block_space,
    canonical_signed_basis,
    eta_invariance_check,
    heart_check,
    heart_pairing_check,
    heart_vector,
    lattice_generators,
    positive_basis,
)
from spiralblock.datum import principal_datum
from spiralblock.exactalg import ONE, V, IntLaurent, RatFunc
from spiralblock.rootsys import build_root_system

@pytest.fixture(scope="module")
def space1(d1):
    return build_block_space(d1)

@pytest.fixture(scope="module")
def basis1(space1):
    return positive_basis(canonical_signed_basis(space1))

def test_radical_and_rank(space1):
    assert space1.quotient_dim == 2
    assert space1.radical_basis == [[RatFunc.of(-1), RatFunc.of(0), RatFunc.of(1)]]
    assert space1.radical_audit()

def test_generators(space1):
    tags = [g.tag for g, _ in lattice_generators(space1)]
    assert tags == ["c0.f0", "c1.f0", "c1.f1", "c2.f0"]
    mid, mid_scaled = space1.generator_vector(1), space1.generator_vector(2)
    assert space1.equal_in_v(mid, mid_scaled.scale(IntLaurent({1: 1, -1: 1})))

def test_heart_on_generators(space1):
    scaled = space1.generator_vector(2)
    plus = space1.generator_vector(3)
    assert heart_vector(scaled) == scaled
    assert heart_vector(plus) == plus

def test_d1_basis(space1, basis1):
    b1, b2 = basis1.elements
    scaled = space1.generator_vector(2)
    plus = space1.chamber_vector(2)
    assert space1.equal_in_v(b1, scaled)
    assert space1.equal_in_v(b2, plus - scaled)
    denom = 1 - V**4
    assert space1.pair(b1, b1) == ONE / denom
    assert space1.pair(b2, b2) == ONE / denom
    assert space1.pair(b1, b2) == V**2 / denom

def test_d1_expansions(basis1):
    exp = basis1.expansions
    assert exp["c1.f0"] == [RatFunc.of(V + V**-1), RatFunc.of(0)]
    assert exp["c2.f0"] == [ONE, ONE]

def test_search_agrees(space1, basis1):
    found = positive_basis(canonical_signed_basis(space1, method="search"))
    assert len(found.elements) == 2
    assert all(any(space1.equal_in_v(x, y) for y in basis1.elements) for x in found.elements)

def test_basis_bar_invariant(basis1):
    assert all(bar_vector(b) == b for b in basis1.elements)

def test_heart_check(space1, basis1):
    assert heart_check(space1, basis1.elements, [0, 2]) == [True, True]
    assert heart_check(space1, basis1.elements, [1, 2]) == [False, True]
    assert heart_pairing_check(space1, basis1.elements)

def test_eta_invariance(d1):
    for eta in (3, 4):
        assert eta_invariance_check(d1, eta).ok

def test_ranks(d2, d3):
    assert block_rank(d2) == 3
    assert block_rank(d3) == 3
    assert block_rank(principal_datum(build_root_system("A2"), [1, 0], 2, 1)) == 4

def test_d3_basis_size(d3):
    space = build_block_space(d3)
    sb = canonical_signed_basis(space)
    assert len(positive_basis(sb).elements) == 3
