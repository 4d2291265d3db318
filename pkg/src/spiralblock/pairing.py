"""The integers tau and h, spiral dimensions, Gram entries ``[c1|c2]`` and the factors ``a_phi``."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .arrangement import Chamber, Face, Point, act, as_point, enumerate_chambers, membership_eprime, pair
from .datum import BlockDatum
from .exactalg import IntLaurent, RatFunc
from .rootsys import poincare, root_reflection_group


class GramAuditError(RuntimeError):
    """The Gram matrix failed symmetry or representative independence."""


def tau(d: BlockDatum, phi: Sequence, phi2: Sequence) -> int:
    """Signed count of car* weights separating ``phi`` and ``phi2``.

    >>> from spiralblock.datum import principal_datum
    >>> from spiralblock.rootsys import build_root_system
    >>> d1 = principal_datum(build_root_system("A1"), [0], 1, 2)
    >>> tau(d1, [Fraction(1, 5)], [Fraction(-1, 5)]), tau(d1, [Fraction(1, 5)], [Fraction(6, 5)])
    (-2, 1)
    """
    return _tau_profiles(d, _profile(d, as_point(phi)), _profile(d, as_point(phi2)))


def _star(d: BlockDatum):
    return [e for e in d.car if e.is_star]


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _profile(d: BlockDatum, phi: Point) -> tuple[tuple[int, int, int], ...]:
    """Per car* weight: ``(dim, sign(<phi:alpha> + n - 2) if in degree delta, sign(<phi:alpha> + n) if in degree 0)``."""
    out = []
    for e in _star(d):
        p = pair(phi, e.alpha)
        out.append((e.dim, _sign(p + e.n - 2) if e.i == d.delta else 0, _sign(p + e.n) if e.i == 0 else 0))
    return tuple(out)


def _tau_profiles(d: BlockDatum, p1, p2) -> int:
    total = 0
    for (dim, a1, b1), (_, a2, b2) in zip(p1, p2):
        if a1 * a2 < 0:
            total += dim
        if b1 * b2 < 0:
            total -= dim
    return total


def spiral_dims(d: BlockDatum, phi: Sequence, big_n: int) -> tuple[int, int]:
    """``(dim p_N, dim u_N)`` at ``phi``: weights with ``<phi:alpha> >= 2N/eta - n`` (strict for u)."""
    phi = as_point(phi)
    r = big_n % d.m
    dim_p = dim_u = 0
    for e in d.car:
        if e.i != r:
            continue
        lhs = pair(phi, e.alpha)
        rhs = Fraction(2 * big_n, d.eta) - e.n
        if lhs >= rhs:
            dim_p += e.dim
        if e.is_star and lhs > rhs:
            dim_u += e.dim
    return dim_p, dim_u


def h_value(d: BlockDatum, phi: Sequence) -> int:
    """``dim u_0 + dim p_eta`` at a point of E'."""
    if not membership_eprime(d, phi):
        raise ValueError("h is defined on E' only")
    return spiral_dims(d, phi, 0)[1] + spiral_dims(d, phi, d.eta)[0]


def w_sum(d: BlockDatum, phi1: Point, phi2: Point) -> IntLaurent:
    """``sum_w v^tau(phi2, w phi1)``."""
    acc: dict[int, int] = {}
    for w in d.weyl_on_e:
        t = tau(d, phi2, act(w, phi1))
        acc[t] = acc.get(t, 0) + 1
    return IntLaurent(acc)


def _prefactor(rank_e: int) -> RatFunc:
    return RatFunc.of(1) / RatFunc.of(IntLaurent({0: 1, 2: -1})) ** rank_e


def gram_value(d: BlockDatum, phi1: Sequence, phi2: Sequence) -> RatFunc:
    """``[phi1|phi2] = (1 - v^2)^(-rank E) sum_w v^tau(phi2, w phi1)``."""
    return RatFunc.of(w_sum(d, as_point(phi1), as_point(phi2))) * _prefactor(d.rank_e)


def gram_entry(d: BlockDatum, c1: Chamber, c2: Chamber) -> RatFunc:
    return gram_value(d, c1.representative, c2.representative)


def a_phi(d: BlockDatum, face: Face | Sequence) -> IntLaurent:
    """``v^d(phi) * P_W(phi)(v^-1)`` for the centralizer roots vanishing at the face point."""
    phi = face.representative if isinstance(face, Face) else as_point(face)
    roots = [a for a in d.centralizer_roots if pair(phi, a) == 0]
    if not roots:
        return IntLaurent.const(1)
    group = root_reflection_group(roots)
    return poincare(group).bar() * IntLaurent.monomial(group.positive_root_count)


@dataclass(frozen=True)
class GramMatrix:
    chambers: tuple[Chamber, ...]
    entries: tuple[tuple[RatFunc, ...], ...]

    @property
    def size(self) -> int:
        return len(self.chambers)

    def rows(self) -> list[list[RatFunc]]:
        return [list(r) for r in self.entries]

    def to_json(self) -> dict:
        return {
            "chambers": [c.to_json() for c in self.chambers],
            "entries": [[x.to_json() for x in row] for row in self.entries],
        }


def _row(args) -> list[IntLaurent]:
    """W-sums of one row: ``sum_w v^tau(phi_j, w phi_i)`` for every ``j``."""
    d, reps, i = args
    orbit = [_profile(d, act(w, reps[i])) for w in d.weyl_on_e]
    out = []
    for r in reps:
        target = _profile(d, r)
        acc: dict[int, int] = {}
        for prof in orbit:
            t = _tau_profiles(d, target, prof)
            acc[t] = acc.get(t, 0) + 1
        out.append(IntLaurent(acc))
    return out


def _compute(d: BlockDatum, chambers: Sequence[Chamber], jobs: int) -> list[list[RatFunc]]:
    reps = [c.representative for c in chambers]
    tasks = [(d, reps, i) for i in range(len(chambers))]
    if jobs > 1 and len(chambers) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            sums = list(pool.map(_row, tasks))
    else:
        sums = [_row(t) for t in tasks]
    pre = _prefactor(d.rank_e)
    cache: dict[IntLaurent, RatFunc] = {}
    rows = []
    for row in sums:
        out = []
        for s in row:
            if s not in cache:
                cache[s] = RatFunc.of(s) * pre
            out.append(cache[s])
        rows.append(out)
    return rows


def build_gram(
    d: BlockDatum,
    seed: int = 1,
    jobs: int = 1,
    audit_seed: int | None = None,
) -> GramMatrix:
    """Gram matrix over the enumerated chambers.

    Symmetry is always checked. With ``audit_seed`` the matrix is recomputed
    on independently drawn representatives and must agree exactly.
    """
    chambers = enumerate_chambers(d, seed)
    rows = _compute(d, chambers, jobs)
    n = len(chambers)
    for i in range(n):
        for j in range(i + 1, n):
            if rows[i][j] != rows[j][i]:
                raise GramAuditError(f"Gram matrix not symmetric at ({i}, {j})")
    if audit_seed is not None:
        other = enumerate_chambers(d, audit_seed)
        rows2 = _compute(d, other, jobs)
        for i in range(n):
            for j in range(n):
                if rows[i][j] != rows2[i][j]:
                    raise GramAuditError(f"Gram entry ({i}, {j}) depends on the chamber representatives")
    return GramMatrix(tuple(chambers), tuple(tuple(r) for r in rows))
