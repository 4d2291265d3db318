"""The matrix M of a labeled basis and its unique factorization ``M = S T S'``.

Orbits are processed by increasing ``kappa``; ``S`` is block unitriangular
below the diagonal, ``S'`` above it, and ``T`` is block diagonal by orbit.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .exactalg import (
    IntLaurent,
    RatFunc,
    ONE,
    ZERO,
    in_n_v_inverse_squared,
    in_q_of_v_squared,
)
from .ratmatrix import Matrix, inverse, matmul


class LabelingError(ValueError):
    pass


class FactorizationError(ArithmeticError):
    pass


@dataclass(frozen=True)
class Orbit:
    id: str
    kappa: int
    members: tuple[int, ...]


@dataclass(frozen=True)
class OrbitLabeling:
    orbits: tuple[Orbit, ...]

    @classmethod
    def from_kappas(cls, kappas: Sequence[int]) -> OrbitLabeling:
        """One orbit per basis element."""
        return cls(tuple(Orbit(str(i), int(k), (i,)) for i, k in enumerate(kappas)))

    @classmethod
    def from_json(cls, data: dict) -> OrbitLabeling:
        try:
            orbits = tuple(
                Orbit(str(o["id"]), int(o["kappa"]), tuple(int(x) for x in o["members"])) for o in data["orbits"]
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise LabelingError(f"labeling parse error: {exc!r}") from exc
        for o in orbits:
            if o.kappa < 0:
                raise LabelingError(f"orbit {o.id}: kappa must be nonnegative")
        return cls(orbits)

    @classmethod
    def load(cls, path: str | Path) -> OrbitLabeling:
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise LabelingError(f"labeling parse error: {exc}") from exc
        return cls.from_json(data)

    def to_json(self) -> dict:
        return {"orbits": [{"id": o.id, "kappa": o.kappa, "members": list(o.members)} for o in self.orbits]}

    def check(self, size: int) -> None:
        seen: list[int] = sorted(i for o in self.orbits for i in o.members)
        if seen != list(range(size)):
            raise LabelingError(f"labeling must cover indices 0..{size - 1} exactly once")

    def kappa_of(self, size: int) -> list[int]:
        self.check(size)
        out = [0] * size
        for o in self.orbits:
            for i in o.members:
                out[i] = o.kappa
        return out

    def orbit_of(self, size: int) -> list[str]:
        self.check(size)
        out = [""] * size
        for o in self.orbits:
            for i in o.members:
                out[i] = o.id
        return out

    def ordering(self, size: int) -> list[int]:
        """Orbits by increasing kappa (ties by first member), members in input order."""
        self.check(size)
        orbits = sorted(self.orbits, key=lambda o: (o.kappa, min(o.members)))
        return [i for o in orbits for i in sorted(o.members)]


def build_m(gram: Sequence[Sequence[RatFunc]], labeling: OrbitLabeling) -> Matrix:
    """``M[b][b'] = v^(-kappa(b) - kappa(b')) (b:b')``."""
    n = len(gram)
    if any(len(row) != n for row in gram):
        raise LabelingError("size mismatch: Gram matrix is not square")
    kappa = labeling.kappa_of(n)
    return [
        [RatFunc.of(gram[i][j]) * RatFunc.of(IntLaurent.monomial(-kappa[i] - kappa[j])) for j in range(n)]
        for i in range(n)
    ]


@dataclass(frozen=True)
class Factorization:
    ordering: tuple[int, ...]
    kappa: tuple[int, ...]
    orbit: tuple[str, ...]
    s: tuple[tuple[RatFunc, ...], ...]
    t: tuple[tuple[RatFunc, ...], ...]
    sp: tuple[tuple[RatFunc, ...], ...]

    def matrices(self) -> tuple[Matrix, Matrix, Matrix]:
        return [list(r) for r in self.s], [list(r) for r in self.t], [list(r) for r in self.sp]

    def reconstruct(self) -> Matrix:
        s, t, sp = self.matrices()
        return matmul(matmul(s, t), sp)

    def to_json(self) -> dict:
        def enc(m):
            return [[x.to_json() for x in row] for row in m]

        return {
            "ordering": list(self.ordering),
            "S": enc(self.s),
            "T": enc(self.t),
            "Sp": enc(self.sp),
            "P": enc(p_matrix(self)),
            "audit": parity_audit(self).to_json(),
        }


def _sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(r, s)] for r, s in zip(a, b)]


def _block(m: Matrix, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
    return [[m[i][j] for j in cols] for i in rows]


def _zero(r: int, c: int) -> Matrix:
    return [[ZERO] * c for _ in range(r)]


def factorize_m(m: Matrix, labeling: OrbitLabeling) -> Factorization:
    """The unique ``(S, T, S')`` with ``M = S T S'`` in the kappa-sorted ordering.

    >>> from spiralblock.exactalg import V
    >>> f = factorize_m([[ONE, V**-1], [V**-1, ONE]], OrbitLabeling.from_kappas([0, 2]))
    >>> str(f.s[1][0]), str(f.t[1][1])
    ('v^-1', '1 - v^-2')
    """
    n = len(m)
    if any(len(row) != n for row in m):
        raise LabelingError("size mismatch: M is not square")
    order = labeling.ordering(n)
    kappa_all = labeling.kappa_of(n)
    orbit_all = labeling.orbit_of(n)
    pm = [[RatFunc.of(m[i][j]) for j in order] for i in order]
    kappa = [kappa_all[i] for i in order]
    orbit = [orbit_all[i] for i in order]

    groups: list[list[int]] = []
    for pos, k in enumerate(kappa):
        if groups and kappa[groups[-1][0]] == k:
            groups[-1].append(pos)
        else:
            groups.append([pos])

    s = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    sp = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    t = _zero(n, n)

    def put(target: Matrix, rows, cols, block: Matrix) -> None:
        for a, i in enumerate(rows):
            for b, j in enumerate(cols):
                target[i][j] = block[a][b]

    def correction(rows, cols, upto: int) -> Matrix:
        acc = _zero(len(rows), len(cols))
        for g in groups[:upto]:
            term = matmul(matmul(_block(s, rows, g), _block(t, g, g)), _block(sp, g, cols))
            acc = [[x + y for x, y in zip(r, q)] for r, q in zip(acc, term)]
        return acc

    for k, gk in enumerate(groups):
        tkk = _sub(_block(pm, gk, gk), correction(gk, gk, k))
        for a, i in enumerate(gk):
            for b, j in enumerate(gk):
                if orbit[i] != orbit[j] and not tkk[a][b].is_zero():
                    raise FactorizationError("inconsistent labeling")
        try:
            tinv = inverse(tkk)
        except ZeroDivisionError:
            raise FactorizationError("singular block") from None
        put(t, gk, gk, tkk)
        for gi in groups[k + 1 :]:
            lower = matmul(_sub(_block(pm, gi, gk), correction(gi, gk, k)), tinv)
            upper = matmul(tinv, _sub(_block(pm, gk, gi), correction(gk, gi, k)))
            put(s, gi, gk, lower)
            put(sp, gk, gi, upper)

    freeze = lambda mat: tuple(tuple(r) for r in mat)  # noqa: E731
    return Factorization(tuple(order), tuple(kappa), tuple(orbit), freeze(s), freeze(t), freeze(sp))


def p_matrix(f: Factorization) -> Matrix:
    """``P[B][B'] = S[B'][B]``: the multiplicity series, unit diagonal."""
    n = len(f.s)
    return [[f.s[j][i] for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class ParityReport:
    p_parity: bool
    t_even: bool
    heart_fixed: bool
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return self.p_parity and self.t_even and self.heart_fixed

    def to_json(self) -> dict:
        return {"pParity": self.p_parity, "tEven": self.t_even, "heartFixed": self.heart_fixed}


def parity_audit(f: Factorization) -> ParityReport:
    failures = []
    p_ok = True
    for name, mat in (("S", f.s), ("Sp", f.sp)):
        for i, row in enumerate(mat):
            for j, x in enumerate(row):
                if not in_n_v_inverse_squared(x):
                    p_ok = False
                    failures.append(f"{name}[{i}][{j}] = {x} is not in N[v^-2]")
    t_ok = True
    for i, row in enumerate(f.t):
        for j, x in enumerate(row):
            if not in_q_of_v_squared(x):
                t_ok = False
                failures.append(f"T[{i}][{j}] = {x} is not in Q(v^2)")
    heart_ok = all(x.heart() == x for mat in (f.s, f.t, f.sp) for row in mat for x in row)
    if not heart_ok:
        failures.append("a factor is not fixed by the heart involution")
    return ParityReport(p_ok, t_ok, heart_ok, tuple(failures))


def odd_vanishing_report(f: Factorization) -> bool:
    return parity_audit(f).p_parity
