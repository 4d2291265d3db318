"""Exact rational linear programming: dense two-phase simplex with Bland's rule.

Only what the arrangement code needs: ``min c.x`` subject to ``A x <= b`` with
free variables. Bland's rule rules out cycling on degenerate vertices.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class InfeasibleLP(ValueError):
    pass


class UnboundedLP(ValueError):
    pass


def _pivot(tab: list[list[Fraction]], basis: list[int], r: int, j: int) -> None:
    row = tab[r]
    p = row[j]
    if p != 1:
        tab[r] = row = [x / p if x else x for x in row]
    support = [(k, x) for k, x in enumerate(row) if x]
    for i, other in enumerate(tab):
        if i != r:
            f = other[j]
            if f:
                for k, x in support:
                    other[k] = other[k] - f * x
    basis[r] = j


def _run(tab: list[list[Fraction]], basis: list[int], allowed: int) -> None:
    """Minimize the objective stored in the last row (reduced costs, rhs last column)."""
    m = len(tab) - 1
    while True:
        obj = tab[-1]
        enter = next((j for j in range(allowed) if obj[j] < 0), None)
        if enter is None:
            return
        best = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            raise UnboundedLP("objective unbounded")
        _pivot(tab, basis, best[1], enter)


def lp_min(c: Sequence, a: Sequence[Sequence], b: Sequence) -> tuple[Fraction, list[Fraction]]:
    """Exact ``min c.x`` subject to ``a x <= b`` over free rational ``x``.

    >>> lp_min([-1], [[1], [-1]], [3, 0])
    (Fraction(-3, 1), [Fraction(3, 1)])
    """
    n = len(c)
    m = len(a)
    c = [Fraction(x) for x in c]
    # columns: x+ (n), x- (n), slack (m), artificial (m), rhs
    width = 2 * n + 2 * m + 1
    tab: list[list[Fraction]] = []
    basis: list[int] = []
    for i, row in enumerate(a):
        sign = -1 if Fraction(b[i]) < 0 else 1
        line = [Fraction(0)] * width
        for j, x in enumerate(row):
            x = Fraction(x) * sign
            line[j] = x
            line[n + j] = -x
        line[2 * n + i] = Fraction(sign)
        line[2 * n + m + i] = Fraction(1)
        line[-1] = Fraction(b[i]) * sign
        tab.append(line)
        basis.append(2 * n + m + i)

    # phase 1: minimize the sum of artificials
    phase1 = [Fraction(0)] * width
    for line in tab:
        phase1 = [p - x for p, x in zip(phase1, line)]
    for i in range(m):
        phase1[2 * n + m + i] = Fraction(0)
    tab.append(phase1)
    _run(tab, basis, 2 * n + m)
    if tab[-1][-1] != 0:
        raise InfeasibleLP("constraint set is empty")
    tab.pop()
    # drive remaining artificials out of the basis
    for i in range(m):
        if basis[i] >= 2 * n + m:
            j = next((j for j in range(2 * n + m) if tab[i][j] != 0), None)
            if j is not None:
                _pivot(tab, basis, i, j)

    # phase 2
    cost = c + [-x for x in c] + [Fraction(0)] * (2 * m) + [Fraction(0)]
    obj = list(cost)
    for i, j in enumerate(basis):
        if obj[j]:
            f = obj[j]
            obj = [o - f * t for o, t in zip(obj, tab[i])]
    tab.append(obj)
    _run(tab, basis, 2 * n + m)
    values = [Fraction(0)] * (2 * n + 2 * m)
    for i, j in enumerate(basis):
        values[j] = tab[i][-1]
    x = [values[j] - values[n + j] for j in range(n)]
    return sum((ci * xi for ci, xi in zip(c, x)), Fraction(0)), x
