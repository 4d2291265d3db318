from __future__ import annotations

import random
from fractions import Fraction

import pytest

from spiralblock.lp import InfeasibleLP, UnboundedLP, lp_min


def _feasible(a, b, x) -> bool:
    return all(sum(Fraction(ai) * xi for ai, xi in zip(row, x)) <= bi for row, bi in zip(a, b))


def test_simple_box():
    value, x = lp_min([1, 1], [[-1, 0], [0, -1], [1, 0], [0, 1]], [2, 3, 5, 5])
    assert value == -5 and x == [-2, -3]


def test_infeasible_and_unbounded():
    with pytest.raises(InfeasibleLP):
        lp_min([0], [[1], [-1]], [-1, -1])
    with pytest.raises(UnboundedLP):
        lp_min([-1], [[-1]], [0])


def test_degenerate_vertex():
    # many constraints through the origin
    a = [[1, k] for k in range(-3, 4)] + [[-1, 0]]
    value, x = lp_min([-1, 0], a, [0] * 8)
    assert value == 0 and _feasible(a, [0] * 8, x)


def test_random_against_brute_force():
    """Optimal value matches the best feasible vertex of small random 2D programs."""
    rng = random.Random(7)
    for _ in range(60):
        a = [[rng.randint(-4, 4), rng.randint(-4, 4)] for _ in range(5)] + [[1, 0], [-1, 0], [0, 1], [0, -1]]
        b = [rng.randint(-3, 6) for _ in range(5)] + [10, 10, 10, 10]
        c = [rng.randint(-3, 3), rng.randint(-3, 3)]
        vertices = []
        for i in range(len(a)):
            for j in range(i + 1, len(a)):
                det = a[i][0] * a[j][1] - a[i][1] * a[j][0]
                if det:
                    x = [Fraction(b[i] * a[j][1] - b[j] * a[i][1], det), Fraction(a[i][0] * b[j] - a[j][0] * b[i], det)]
                    if _feasible(a, b, x):
                        vertices.append(x)
        if not vertices:
            with pytest.raises(InfeasibleLP):
                lp_min(c, a, b)
            continue
        best = min(c[0] * x[0] + c[1] * x[1] for x in vertices)
        value, x = lp_min(c, a, b)
        assert value == best and _feasible(a, b, x)
