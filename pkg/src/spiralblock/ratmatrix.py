"""Dense matrices over Q(v): products, Bareiss echelon form, kernels, inverses."""
from __future__ import annotations

from typing import Sequence

from .exactalg import ONE, ZERO, RatFunc

Matrix = list[list[RatFunc]]


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[RatFunc.of(x) for x in row] for row in rows]


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)] if a else []


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if a and len(a[0]) != len(b):
        raise ValueError("size mismatch")
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        new = []
        for k in range(cols):
            acc = ZERO
            for j, x in enumerate(row):
                if not x.is_zero():
                    y = b[j][k]
                    if not y.is_zero():
                        acc = acc + x * y
            new.append(acc)
        out.append(new)
    return out


def matvec(a: Matrix, x: Sequence[RatFunc]) -> list[RatFunc]:
    return [sum((r * c for r, c in zip(row, x) if not r.is_zero() and not c.is_zero()), ZERO) for row in a]


def apply_entrywise(a: Matrix, f) -> Matrix:
    return [[f(x) for x in row] for row in a]


def is_zero_matrix(a: Matrix) -> bool:
    return all(x.is_zero() for row in a for x in row)


def bareiss_echelon(a: Matrix) -> tuple[Matrix, list[int]]:
    """Fraction-free row echelon form.

    Pivot columns are taken left to right (first independent columns); within
    a column the pivot row is the candidate of smallest total degree. Returns
    the echelon matrix and the list of pivot columns.
    """
    m = [list(row) for row in a]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    prev = ONE
    r = 0
    for j in range(ncols):
        if r == nrows:
            break
        cands = [i for i in range(r, nrows) if not m[i][j].is_zero()]
        if not cands:
            continue
        p = min(cands, key=lambda i: (m[i][j].total_degree(), i))
        m[r], m[p] = m[p], m[r]
        piv = m[r][j]
        for i in range(r + 1, nrows):
            lead = m[i][j]
            if lead.is_zero():
                if prev != ONE:
                    m[i] = [x * piv / prev if k > j else x for k, x in enumerate(m[i])]
                else:
                    m[i] = [x * piv if k > j else x for k, x in enumerate(m[i])]
                continue
            row = m[i]
            new = row[:j] + [ZERO]
            for k in range(j + 1, ncols):
                val = piv * row[k] - lead * m[r][k]
                new.append(val / prev if prev != ONE else val)
            m[i] = new
        prev = piv
        pivots.append(j)
        r += 1
    return m, pivots


def rank(a: Matrix) -> int:
    return len(bareiss_echelon(a)[1])


def nullspace(a: Matrix) -> list[list[RatFunc]]:
    """Basis of ``{x : a x = 0}``: one vector per free column, 1 in that column."""
    ncols = len(a[0]) if a else 0
    ech, pivots = bareiss_echelon(a)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        x = [ZERO] * ncols
        x[f] = ONE
        for r in reversed(range(len(pivots))):
            j = pivots[r]
            acc = ZERO
            for k in range(j + 1, ncols):
                if not ech[r][k].is_zero() and not x[k].is_zero():
                    acc = acc + ech[r][k] * x[k]
            x[j] = -acc / ech[r][j]
        basis.append(x)
    return basis


def solve(a: Matrix, b: Sequence[RatFunc]) -> list[RatFunc]:
    """Solve ``a x = b`` for square invertible ``a``."""
    n = len(a)
    aug = [list(row) + [RatFunc.of(b[i])] for i, row in enumerate(a)]
    ech, pivots = bareiss_echelon(aug)
    if pivots[:n] != list(range(n)) or len(pivots) != n:
        raise ZeroDivisionError("singular matrix")
    x = [ZERO] * n
    for r in reversed(range(n)):
        acc = ech[r][n]
        for k in range(r + 1, n):
            if not ech[r][k].is_zero():
                acc = acc - ech[r][k] * x[k]
        x[r] = acc / ech[r][r]
    return x


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    cols = [solve(a, [ONE if i == j else ZERO for i in range(n)]) for j in range(n)]
    return transpose(cols)
