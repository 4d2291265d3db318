from __future__ import annotations

import random
from fractions import Fraction as F

import pytest

from spiralblock.arrangement import (
    InfeasibleError,
    act,
    chamber_index,
    enumerate_chambers,
    enumerate_faces,
    membership_ecirc,
    membership_edoubleprime,
    membership_eprime,
    representative,
    sign_vector,
)
from spiralblock.datum import BlockDatum


def test_membership_d1(d1):
    assert membership_eprime(d1, [F(1, 5)])
    assert not membership_eprime(d1, [0])
    assert not membership_eprime(d1, [1])
    assert membership_edoubleprime(d1, [0])
    assert not membership_edoubleprime(d1, [1])
    assert membership_edoubleprime(d1, [F(1, 5)])


def test_d1_chambers(d1):
    cs = enumerate_chambers(d1)
    assert [c.signs for c in cs] == [(-1, 1), (-1, -1), (1, -1)]
    assert [sign_vector(d1, c.representative) for c in cs] == [c.signs for c in cs]
    assert all(membership_eprime(d1, c.representative) for c in cs)


def test_d2_chambers(d2):
    assert len(enumerate_chambers(d2)) == 3


def test_d3_chamber_count(d3):
    assert len(enumerate_chambers(d3)) == 19


def test_infeasible_signs(d1):
    with pytest.raises(InfeasibleError):
        representative(d1, (1, 1))


def test_d1_faces(d1):
    cs = enumerate_chambers(d1)
    mid = enumerate_faces(d1, cs[1])
    assert [f.zero_roots for f in mid] == [(), ((-2,), (2,))]
    assert mid[1].representative == (0,)
    assert [f.zero_roots for f in enumerate_faces(d1, cs[2])] == [()]


def test_weyl_permutes_chambers(d3):
    cs = enumerate_chambers(d3)
    for c in cs:
        images = {chamber_index(d3, cs, act(w, c.representative)) for w in d3.weyl_on_e}
        assert all(0 <= i < len(cs) for i in images)


def test_membership_chain_random(d3):
    rng = random.Random(3)
    for _ in range(200):
        p = [F(rng.randint(-12, 12), rng.choice([1, 2, 3, 6])) for _ in range(2)]
        if membership_eprime(d3, p):
            assert membership_edoubleprime(d3, p)
        if membership_edoubleprime(d3, p):
            assert membership_ecirc(d3, p)


def test_representatives_depend_on_seed_only(d1):
    assert representative(d1, (-1, -1), seed=4) == representative(d1, (-1, -1), seed=4)


def test_rank_zero():
    d = BlockDatum(m=1, eta=1, rank_e=0, car=(), weyl_generators=(), centralizer_roots=())
    cs = enumerate_chambers(d)
    assert len(cs) == 1 and cs[0].representative == ()
