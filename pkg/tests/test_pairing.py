from __future__ import annotations

from fractions import Fraction as F

import pytest

from spiralblock.arrangement import enumerate_chambers, enumerate_faces
from spiralblock.datum import BlockDatum
from spiralblock.exactalg import ONE, V, IntLaurent
from spiralblock.pairing import a_phi, build_gram, gram_value, h_value, spiral_dims, tau


def test_tau_examples(d1):
    assert tau(d1, [F(1, 5)], [F(-1, 5)]) == -2
    assert tau(d1, [F(1, 5)], [F(6, 5)]) == 1
    assert tau(d1, [F(6, 5)], [F(6, 5)]) == 0


def test_spiral_dims(d1):
    assert spiral_dims(d1, [F(1, 5)], 2) == (0, 0)
    assert spiral_dims(d1, [F(6, 5)], 0) == (2, 1)


def test_h_values(d1):
    assert h_value(d1, [F(1, 5)]) == 1
    assert h_value(d1, [F(6, 5)]) == 2
    assert h_value(d1, [F(-6, 5)]) == 2
    with pytest.raises(ValueError):
        h_value(d1, [0])


def test_gram_values(d1):
    mid, plus = [F(1, 5)], [F(6, 5)]
    assert gram_value(d1, mid, mid) == (1 + V**-2) / (1 - V**2)
    assert gram_value(d1, plus, plus) == 2 / (1 - V**2)
    assert gram_value(d1, plus, mid) == (V + V**-1) / (1 - V**2)


def test_d1_gram(d1):
    g = build_gram(d1, audit_seed=5)
    a = 2 / (1 - V**2)
    b = (V + V**-1) / (1 - V**2)
    c = (1 + V**-2) / (1 - V**2)
    assert [list(r) for r in g.entries] == [[a, b, a], [b, c, b], [a, b, a]]


def test_a_phi(d1, d3):
    cs = enumerate_chambers(d1)
    faces = enumerate_faces(d1, cs[1])
    assert a_phi(d1, faces[0]) == IntLaurent.const(1)
    assert a_phi(d1, faces[1]) == IntLaurent({1: 1, -1: 1})
    assert a_phi(d3, [0, 0]) == IntLaurent({3: 1, 1: 2, -1: 2, -3: 1})


def test_trivial_block():
    d = BlockDatum(m=1, eta=1, rank_e=0, car=(), weyl_generators=(), centralizer_roots=())
    g = build_gram(d)
    assert [list(r) for r in g.entries] == [[ONE]]


def test_parallel_matches_serial(d3):
    assert build_gram(d3, jobs=2).entries == build_gram(d3).entries
