"""The parameter space E, its generic loci, chambers of the degree-delta arrangement and faces.

Points of E are tuples of ``Fraction`` in coroot coordinates; the pairing with a
weight ``alpha`` is the dot product. Feasibility questions are decided by an
exact rational LP.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import sympy

from .datum import BlockDatum, CarEntry
from .lp import lp_min
from .rootsys import IntMat, IntVec, neg

Point = tuple[Fraction, ...]

_PRIMES_START = 10007
_MAX_TRIES = 64


class InfeasibleError(ValueError):
    """Raised when a sign vector has no strict realization."""


def pair(phi: Sequence[Fraction], alpha: Sequence[int]) -> Fraction:
    total = Fraction(0)
    for x, a in zip(phi, alpha):
        if a:
            total += x * a
    return total


def as_point(coords: Iterable) -> Point:
    return tuple(Fraction(x) for x in coords)


def act(w: IntMat, phi: Point) -> Point:
    """Apply a matrix (already in E-coordinates) to a point."""
    return tuple(sum((a * x for a, x in zip(row, phi)), Fraction(0)) for row in w)


# membership ------------------------------------------------------------------
def _incident(d: BlockDatum, phi: Point, e: CarEntry) -> bool:
    """Whether ``phi`` lies on some ``H_{alpha, n, N}`` with ``N = i mod m``."""
    big_n = d.eta * (pair(phi, e.alpha) + e.n) / 2
    return big_n.denominator == 1 and (big_n.numerator - e.i) % d.m == 0


def membership_eprime(d: BlockDatum, phi: Sequence) -> bool:
    """``phi`` avoids every hyperplane of the car* entries.

    >>> from spiralblock.datum import principal_datum
    >>> from spiralblock.rootsys import build_root_system
    >>> d1 = principal_datum(build_root_system("A1"), [0], 1, 2)
    >>> membership_eprime(d1, [Fraction(1, 5)]), membership_eprime(d1, [0]), membership_eprime(d1, [1])
    (True, False, False)
    """
    phi = as_point(phi)
    return not any(_incident(d, phi, e) for e in d.car if e.is_star)


def membership_edoubleprime(d: BlockDatum, phi: Sequence) -> bool:
    """Like :func:`membership_eprime`, ignoring hyperplanes through which ``<phi:alpha> = 0``."""
    phi = as_point(phi)
    return not any(_incident(d, phi, e) for e in d.car if e.is_star and pair(phi, e.alpha) != 0)


def membership_ecirc(d: BlockDatum, phi: Sequence) -> bool:
    phi = as_point(phi)
    return all(pair(phi, a) + b != 0 for a, b in chamber_hyperplanes(d))


# chambers ----------------------------------------------------------------------
def chamber_hyperplanes(d: BlockDatum) -> list[tuple[IntVec, int]]:
    """Affine forms ``phi -> <phi:alpha> + n - 2`` over car*_delta with ``n != 2``, in car order."""
    return [(e.alpha, e.n - 2) for e in d.car if e.i == d.delta and e.is_star and e.n != 2]


def _orientation(alpha: Sequence[int]) -> int:
    for x in alpha:
        if x:
            return 1 if x > 0 else -1
    return 1


def sign_order_key(d: BlockDatum, signs: Sequence[int]) -> tuple[int, ...]:
    """Sort key: signs relative to each hyperplane's positive normal, ``-`` before ``+``."""
    return tuple(s * _orientation(a) for s, (a, _) in zip(signs, chamber_hyperplanes(d)))


@dataclass(frozen=True)
class Chamber:
    signs: tuple[int, ...]
    representative: Point

    def to_json(self) -> dict:
        return {"signs": list(self.signs), "representative": [str(x) for x in self.representative]}


@dataclass(frozen=True)
class Face:
    chamber: Chamber
    zero_roots: tuple[IntVec, ...]
    representative: Point

    def to_json(self) -> dict:
        return {
            "zeroRoots": [list(a) for a in self.zero_roots],
            "representative": [str(x) for x in self.representative],
        }


def _max_slack(forms: Sequence[tuple[Sequence[Fraction], Fraction]], dim: int) -> tuple[Fraction, list[Fraction]]:
    """Maximize ``s <= 1`` subject to ``a.x + b >= s`` for each form; returns ``(s*, x*)``."""
    if not forms:
        return Fraction(1), [Fraction(0)] * dim
    rows = [[-x for x in a] + [1] for a, _ in forms]
    rhs = [b for _, b in forms]
    rows.append([0] * dim + [1])
    rhs.append(1)
    val, x = lp_min([0] * dim + [-1], rows, rhs)
    return -val, x[:dim]


def _coordinate_extremes(forms, dim: int, floor: Fraction, box: Fraction) -> list[Fraction]:
    """Midpoint of each coordinate's range over ``{a.x + b >= floor, |x_j| <= box}``, averaged."""
    rows = [[-x for x in a] for a, _ in forms]
    rhs = [b - floor for _, b in forms]
    for j in range(dim):
        e = [0] * dim
        e[j] = 1
        rows.append(e)
        rhs.append(box)
        rows.append([-t for t in e])
        rhs.append(box)
    total = [Fraction(0)] * dim
    for j in range(dim):
        for sgn in (1, -1):
            c = [0] * dim
            c[j] = sgn
            _, x = lp_min(c, rows, rhs)
            for k in range(dim):
                total[k] += x[k]
    return [t / (2 * dim) for t in total]


def _primes_from(start: int):
    p = sympy.nextprime(start - 1)
    while True:
        yield int(p)
        p = sympy.nextprime(p)


def _generic_point(
    forms: list[tuple[list[Fraction], Fraction]],
    dim: int,
    basis: Sequence[Sequence[Fraction]],
    ambient: int,
    accept,
    rng: random.Random,
) -> Point:
    """A point ``basis^T x`` with every form strictly positive and ``accept`` true.

    The LP finds an interior point with slack ``s*``; it is then moved by
    ``u/p`` with ``u`` small and ``p`` a prime large enough to keep every form
    above ``s*/2``. Large prime denominators escape the excluded hyperplanes.
    """
    slack, xstar = _max_slack(forms, dim)
    if slack <= 0:
        raise InfeasibleError("infeasible sign vector")
    if dim == 0:
        center: list[Fraction] = []
    else:
        box = 2 * max([Fraction(1)] + [abs(t) for t in xstar])
        center = _coordinate_extremes(forms, dim, slack / 2, box) if forms else [Fraction(0)] * dim

    def embed(x: Sequence[Fraction]) -> Point:
        return tuple(sum((x[j] * basis[j][k] for j in range(dim)), Fraction(0)) for k in range(ambient))

    primes = _primes_from(_PRIMES_START)
    for _ in range(_MAX_TRIES):
        p = next(primes)
        u = [rng.randint(-3, 3) for _ in range(dim)]
        drift = max((abs(sum(a[j] * u[j] for j in range(dim))) for a, _ in forms), default=Fraction(0))
        while drift / p >= slack / 2:
            p = next(primes)
        x = [c + Fraction(t, p) for c, t in zip(center, u)]
        point = embed(x)
        if all(sum(a[j] * x[j] for j in range(dim)) + b > 0 for a, b in forms) and accept(point):
            return point
    raise InfeasibleError("no generic point found after repeated perturbation")


def _signed_forms(d: BlockDatum, signs: Sequence[int], basis) -> list[tuple[list[Fraction], Fraction]]:
    forms = []
    for s, (alpha, b) in zip(signs, chamber_hyperplanes(d)):
        coeffs = [s * pair(vec, alpha) for vec in basis]
        forms.append((coeffs, Fraction(s * b)))
    return forms


def _standard_basis(n: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def representative(d: BlockDatum, signs: Sequence[int], seed: int = 1) -> Point:
    """A rational point of E' realizing ``signs`` strictly.

    Raises :class:`InfeasibleError` when the sign vector is not realizable.
    """
    signs = tuple(signs)
    if len(signs) != len(chamber_hyperplanes(d)):
        raise ValueError("sign vector length does not match the arrangement")
    basis = _standard_basis(d.rank_e)
    rng = random.Random(f"{seed}:{signs}")
    return _generic_point(_signed_forms(d, signs, basis), d.rank_e, basis, d.rank_e, lambda p: membership_eprime(d, p), rng)


def is_feasible(d: BlockDatum, signs: Sequence[int]) -> bool:
    basis = _standard_basis(d.rank_e)
    hyper = chamber_hyperplanes(d)[: len(signs)]
    forms = []
    for s, (alpha, b) in zip(signs, hyper):
        forms.append(([s * pair(vec, alpha) for vec in basis], Fraction(s * b)))
    return _max_slack(forms, d.rank_e)[0] > 0


def enumerate_sign_vectors(d: BlockDatum) -> list[tuple[int, ...]]:
    """Realizable sign vectors by depth-first sign assignment with LP pruning."""
    hyper = chamber_hyperplanes(d)
    found: list[tuple[int, ...]] = []

    def grow(prefix: tuple[int, ...]) -> None:
        if len(prefix) == len(hyper):
            found.append(prefix)
            return
        o = _orientation(hyper[len(prefix)][0])
        for s in (-o, o):
            nxt = prefix + (s,)
            if is_feasible(d, nxt):
                grow(nxt)

    grow(())
    return sorted(found, key=lambda s: sign_order_key(d, s))


def enumerate_chambers(d: BlockDatum, seed: int = 1) -> list[Chamber]:
    """Chambers in the order of :func:`sign_order_key`, each with a representative in E'.

    >>> from spiralblock.datum import principal_datum
    >>> from spiralblock.rootsys import build_root_system
    >>> [c.signs for c in enumerate_chambers(principal_datum(build_root_system("A1"), [0], 1, 2))]
    [(-1, 1), (-1, -1), (1, -1)]
    """
    return [Chamber(s, representative(d, s, seed)) for s in enumerate_sign_vectors(d)]


def sign_vector(d: BlockDatum, phi: Sequence) -> tuple[int, ...]:
    """Signs of ``phi`` on the arrangement; raises if ``phi`` lies on a hyperplane."""
    phi = as_point(phi)
    out = []
    for alpha, b in chamber_hyperplanes(d):
        val = pair(phi, alpha) + b
        if val == 0:
            raise ValueError("point lies on a chamber hyperplane")
        out.append(1 if val > 0 else -1)
    return tuple(out)


def chamber_index(d: BlockDatum, chambers: Sequence[Chamber], phi: Sequence) -> int:
    signs = sign_vector(d, phi)
    for k, c in enumerate(chambers):
        if c.signs == signs:
            return k
    raise ValueError("point is in no enumerated chamber")


# faces -------------------------------------------------------------------------
def relevant_roots(d: BlockDatum) -> tuple[IntVec, ...]:
    """Roots whose vanishing defines faces: the centralizer roots and the weights of car*."""
    out = set(d.centralizer_roots)
    out.update(e.alpha for e in d.car if e.is_star)
    return tuple(sorted(out))


def _rank(vectors: Sequence[Sequence[int]]) -> int:
    return sympy.Matrix([list(v) for v in vectors]).rank() if vectors else 0


def flats(d: BlockDatum) -> list[tuple[IntVec, ...]]:
    """Zero sets of the central arrangement of relevant roots, by increasing rank."""
    roots = relevant_roots(d)

    def close(sub: Sequence[IntVec]) -> tuple[IntVec, ...]:
        r = _rank(sub)
        return tuple(a for a in roots if _rank(list(sub) + [a]) == r)

    seen = {close([])}
    frontier = [close([])]
    while frontier:
        nxt = []
        for s in frontier:
            for a in roots:
                if a not in s:
                    t = close(list(s) + [a])
                    if t not in seen:
                        seen.add(t)
                        nxt.append(t)
        frontier = nxt
    return sorted(seen, key=lambda s: (_rank(s), s))


def _flat_basis(zero: Sequence[IntVec], dim: int) -> list[list[Fraction]]:
    if not zero:
        return _standard_basis(dim)
    ns = sympy.Matrix([list(a) for a in zero]).nullspace()
    return [[Fraction(str(x)) for x in v] for v in ns]


def zero_set(d: BlockDatum, phi: Sequence) -> tuple[IntVec, ...]:
    phi = as_point(phi)
    return tuple(a for a in relevant_roots(d) if pair(phi, a) == 0)


def enumerate_faces(d: BlockDatum, c: Chamber, seed: int = 1) -> list[Face]:
    """One face per zero set realized by a point of ``c`` in E''."""
    out = []
    for zero in flats(d):
        basis = _flat_basis(zero, d.rank_e)
        forms = _signed_forms(d, c.signs, basis)
        rng = random.Random(f"{seed}:{c.signs}:{zero}")

        def accept(p: Point, zero=zero) -> bool:
            return membership_edoubleprime(d, p) and zero_set(d, p) == zero

        try:
            rep = _generic_point(forms, len(basis), basis, d.rank_e, accept, rng)
        except InfeasibleError:
            continue
        out.append(Face(c, zero, rep))
    return out


def negate_closed(roots: Iterable[IntVec]) -> bool:
    rs = set(roots)
    return all(neg(a) in rs for a in rs)
