"""Root systems, finite Weyl groups as integer matrix groups, and reflection subgroups.

Roots are integer vectors in fundamental-weight coordinates (the character
lattice); coroots are integer vectors in simple-coroot coordinates, so the
pairing between the two is the ordinary dot product.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .exactalg import IntLaurent

IntVec = tuple[int, ...]
IntMat = tuple[tuple[int, ...], ...]

DEFAULT_CAP = 10**6


class GroupClosureError(ValueError):
    pass


def dot(x: Sequence, y: Sequence):
    return sum(a * b for a, b in zip(x, y))


def mat_mul(a: IntMat, b: IntMat) -> IntMat:
    cols = list(zip(*b))
    return tuple(tuple(dot(row, col) for col in cols) for row in a)


def mat_vec(a: IntMat, x: Sequence[int]) -> IntVec:
    return tuple(dot(row, x) for row in a)


def mat_identity(n: int) -> IntMat:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def mat_transpose(a: IntMat) -> IntMat:
    return tuple(zip(*a)) if a else ()


def neg(x: Sequence[int]) -> IntVec:
    return tuple(-a for a in x)


def is_positive(x: Sequence[int]) -> bool:
    """Lexicographic positivity: first nonzero coordinate is positive."""
    for a in x:
        if a:
            return a > 0
    return False


def closure(generators: Sequence[IntMat], dim: int, cap: int = DEFAULT_CAP) -> list[IntMat]:
    """All products of ``generators`` (a finite matrix group), in BFS order from the identity."""
    ident = mat_identity(dim)
    seen = {ident}
    order = [ident]
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for s in generators:
            h = mat_mul(s, g)
            if h not in seen:
                seen.add(h)
                order.append(h)
                if len(order) > cap:
                    raise GroupClosureError(f"group closure cap exceeded ({cap} elements)")
                queue.append(h)
    return order


@dataclass(frozen=True)
class RootSystem:
    cartan_type: str
    rank: int
    roots: tuple[IntVec, ...]
    coroots: tuple[IntVec, ...]
    simple_roots: tuple[IntVec, ...]
    pairing: IntMat  # pairing[i][j] = <alpha_i, alpha_j^vee>

    def coroot(self, alpha: IntVec) -> IntVec:
        return self.coroots[self.roots.index(tuple(alpha))]

    def positive_roots(self) -> tuple[IntVec, ...]:
        return self.roots[: len(self.roots) // 2]

    def reflection(self, alpha: IntVec) -> IntMat:
        """Matrix of ``lambda -> lambda - <lambda, alpha^vee> alpha`` on weight coordinates."""
        av = self.coroot(alpha)
        n = self.rank
        return tuple(tuple(int(r == c) - alpha[r] * av[c] for c in range(n)) for r in range(n))


def cartan_matrix(family: str, n: int) -> list[list[int]]:
    """``K[i][j] = <alpha_i, alpha_j^vee>`` in Bourbaki numbering."""
    k = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    if family == "A":
        for i in range(n - 1):
            k[i][i + 1] = k[i + 1][i] = -1
    elif family in ("B", "C"):
        for i in range(n - 1):
            k[i][i + 1] = k[i + 1][i] = -1
        # B: alpha_n short, so <alpha_{n-1}, alpha_n^vee> = -2
        if family == "B":
            k[n - 2][n - 1] = -2
        else:
            k[n - 1][n - 2] = -2
    elif family == "D":
        for i in range(n - 2):
            k[i][i + 1] = k[i + 1][i] = -1
        k[n - 3][n - 1] = k[n - 1][n - 3] = -1
    elif family == "G":
        k[0][1], k[1][0] = -1, -3  # alpha_1 short
    return k


_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 4}


def build_root_system(label: str) -> RootSystem:
    """Root system of Cartan type ``A_n``, ``B_n``, ``C_n``, ``D_n`` or ``G_2``.

    >>> len(build_root_system("B2").roots)
    8
    """
    m = re.fullmatch(r"\s*([ABCDG])_?(\d+)\s*", label)
    if not m:
        raise ValueError(f"unknown Cartan label {label!r}")
    family, n = m.group(1), int(m.group(2))
    if family == "G":
        if n != 2:
            raise ValueError(f"unknown Cartan label {label!r}")
    elif n < _MIN_RANK[family]:
        raise ValueError(f"unknown Cartan label {label!r}: rank too small for type {family}")
    k = cartan_matrix(family, n)
    simple = [tuple(k[i]) for i in range(n)]
    simple_co = [tuple(int(i == j) for j in range(n)) for i in range(n)]

    # orbit of (root, coroot) pairs under simple reflections
    pairs = {(a, c) for a, c in zip(simple, simple_co)}
    frontier = list(pairs)
    while frontier:
        nxt = []
        for a, c in frontier:
            for i in range(n):
                ai = a[i]
                ci = dot(c, simple[i])
                a2 = tuple(x - ai * y for x, y in zip(a, simple[i]))
                c2 = tuple(x - ci * y for x, y in zip(c, simple_co[i]))
                if (a2, c2) not in pairs:
                    pairs.add((a2, c2))
                    nxt.append((a2, c2))
        frontier = nxt

    coroot_of = dict(pairs)
    pos = [a for a in coroot_of if _simple_coords_positive(a, simple)]
    pos.sort(key=lambda a: (sum(_simple_coords(a, simple)), tuple(-x for x in _simple_coords(a, simple))))  # by height
    roots = tuple(pos) + tuple(neg(a) for a in pos)
    coroots = tuple(coroot_of[a] for a in roots)
    return RootSystem(f"{family}{n}", n, roots, coroots, tuple(simple), tuple(tuple(r) for r in k))


def _simple_coords(a: IntVec, simple: Sequence[IntVec]) -> tuple[int, ...]:
    import sympy

    sol = sympy.Matrix([list(s) for s in simple]).T.solve(sympy.Matrix(list(a)))
    return tuple(int(x) for x in sol)


def _simple_coords_positive(a: IntVec, simple) -> bool:
    c = _simple_coords(a, simple)
    return all(x >= 0 for x in c)


@dataclass(frozen=True)
class MatrixGroup:
    """A finite group of integer matrices, enumerated.

    When built from a root system, ``simple_roots`` holds a simple system and
    ``lengths[k]`` is the word length of ``elements[k]`` in the corresponding
    simple reflections.
    """

    generators: tuple[IntMat, ...]
    elements: tuple[IntMat, ...]
    simple_roots: tuple[IntVec, ...] = ()
    lengths: tuple[int, ...] | None = None

    @property
    def order(self) -> int:
        return len(self.elements)


def weyl_group(rs: RootSystem, cap: int = DEFAULT_CAP) -> MatrixGroup:
    gens = tuple(rs.reflection(a) for a in rs.simple_roots)
    return _bfs_group(gens, rs.rank, rs.simple_roots, cap)


def _bfs_group(gens, dim, simple, cap) -> MatrixGroup:
    ident = mat_identity(dim)
    length = {ident: 0}
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = mat_mul(s, g)
            if h not in length:
                length[h] = length[g] + 1
                if len(length) > cap:
                    raise GroupClosureError(f"group closure cap exceeded ({cap} elements)")
                queue.append(h)
    elements = tuple(length)
    return MatrixGroup(gens, elements, tuple(simple), tuple(length[g] for g in elements))


def simple_system(roots: Iterable[IntVec]) -> tuple[IntVec, ...]:
    """Simple roots of a root system for the lexicographic positive system.

    A positive root is simple iff it is not a sum of two positive roots.
    """
    rset = set(map(tuple, roots))
    pos = sorted(a for a in rset if is_positive(a))
    posset = set(pos)
    simple = []
    for a in pos:
        decomposable = any(tuple(x - y for x, y in zip(a, b)) in posset for b in pos if b != a)
        if not decomposable:
            simple.append(a)
    return tuple(simple)


def reflection_subgroup(rs: RootSystem, subset: Iterable[IntVec], cap: int = DEFAULT_CAP) -> MatrixGroup:
    """Group generated by the reflections in ``subset``, with a simple system of the subsystem.

    >>> rs = build_root_system("A2")
    >>> reflection_subgroup(rs, rs.simple_roots[:1]).order, reflection_subgroup(rs, rs.simple_roots).order
    (2, 6)
    """
    subset = [tuple(a) for a in subset]
    for a in subset:
        if a not in rs.roots:
            raise ValueError(f"{a} is not a root of {rs.cartan_type}")
    if not subset:
        return MatrixGroup((), (mat_identity(rs.rank),), (), (0,))
    refl = [rs.reflection(a) for a in subset]
    sub = set(subset) | {neg(a) for a in subset}
    frontier = list(sub)
    while frontier:
        nxt = []
        for b in frontier:
            for r in refl:
                c = mat_vec(r, b)
                if c not in sub:
                    sub.add(c)
                    nxt.append(c)
        frontier = nxt
    simple = simple_system(sub)
    gens = tuple(rs.reflection(a) for a in simple)
    return _bfs_group(gens, rs.rank, simple, cap)


@dataclass(frozen=True)
class RootReflectionGroup:
    """Weyl group of an abstract (reduced) root system given only by its roots.

    Reflections are recovered from root strings, so no coroot data is needed;
    elements are stored as permutations of ``roots``.
    """

    roots: tuple[IntVec, ...]
    simple_roots: tuple[IntVec, ...]
    elements: tuple[tuple[int, ...], ...]
    lengths: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def positive_root_count(self) -> int:
        return len(self.roots) // 2


def cartan_integer(rootset: set[IntVec], beta: IntVec, alpha: IntVec) -> int:
    """``<beta, alpha^vee>`` from the alpha-string through beta: ``r - q``."""
    if beta == alpha:
        return 2
    if beta == neg(alpha):
        return -2
    r = 0
    x = tuple(b - a for a, b in zip(alpha, beta))
    while x in rootset:
        r += 1
        x = tuple(b - a for a, b in zip(alpha, x))
    q = 0
    x = tuple(b + a for a, b in zip(alpha, beta))
    while x in rootset:
        q += 1
        x = tuple(b + a for a, b in zip(alpha, x))
    return r - q


def root_reflection_group(roots: Iterable[IntVec], cap: int = DEFAULT_CAP) -> RootReflectionGroup:
    """Weyl group of the root system ``roots``; raises if the set is not reflection-closed."""
    rlist = sorted(set(tuple(a) for a in roots))
    rset = set(rlist)
    for a in rlist:
        if neg(a) not in rset:
            raise ValueError(f"root set not closed under negation: {a}")
    index = {a: k for k, a in enumerate(rlist)}

    def reflect_perm(alpha: IntVec) -> tuple[int, ...]:
        out = []
        for b in rlist:
            c = cartan_integer(rset, b, alpha)
            img = tuple(x - c * y for x, y in zip(b, alpha))
            if img not in rset:
                raise ValueError(f"root set not closed under the reflection in {alpha}")
            out.append(index[img])
        return tuple(out)

    simple = simple_system(rlist)
    for a in rlist:
        reflect_perm(a)
    gens = [reflect_perm(a) for a in simple]
    ident = tuple(range(len(rlist)))
    length = {ident: 0}
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = tuple(s[i] for i in g)
            if h not in length:
                length[h] = length[g] + 1
                if len(length) > cap:
                    raise GroupClosureError(f"group closure cap exceeded ({cap} elements)")
                queue.append(h)
    elements = tuple(length)
    return RootReflectionGroup(tuple(rlist), simple, elements, tuple(length[g] for g in elements))


def poincare(group) -> IntLaurent:
    """Length generating function ``sum_w v^(2 l(w))``.

    >>> poincare(weyl_group(build_root_system("A2")))
    IntLaurent('v^6 + 2*v^4 + 2*v^2 + 1')
    """
    if group.lengths is None:
        raise ValueError("group carries no simple system")
    acc: dict[int, int] = {}
    for ell in group.lengths:
        acc[2 * ell] = acc.get(2 * ell, 0) + 1
    return IntLaurent(acc)
