"""The block datum: grading modulus, eta, weight data ``car``, the group W and the centralizer roots.

The datum flattens an admissible system to dimension data. JSON layout::

    {"m": int, "eta": int, "rankE": int,
     "car": [{"i": int, "alpha": [int, ...], "n": int, "dim": int}, ...],
     "weylGenerators": [[[int, ...], ...], ...],
     "centralizerRoots": [[int, ...], ...]}
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from functools import cached_property
from pathlib import Path
from typing import Sequence

from .rootsys import (
    DEFAULT_CAP,
    GroupClosureError,
    IntMat,
    IntVec,
    RootSystem,
    closure,
    mat_identity,
    mat_mul,
    mat_transpose,
    mat_vec,
    neg,
    weyl_group,
)


class DatumError(ValueError):
    """Raised when a datum file cannot be parsed or fails validation."""

    def __init__(self, message: str, violations: Sequence[str] = ()):
        super().__init__(message)
        self.violations = list(violations)


@dataclass(frozen=True, order=True)
class CarEntry:
    """``dim g^{alpha,n}_i``: residue ``i`` (in ``[0, m)``), weight ``alpha``, sl2-weight ``n``."""

    i: int
    alpha: IntVec
    n: int
    dim: int

    @property
    def is_star(self) -> bool:
        return any(self.alpha)

    def key(self) -> tuple[int, IntVec, int]:
        return (self.i, self.alpha, self.n)


@dataclass(frozen=True)
class BlockDatum:
    m: int
    eta: int
    rank_e: int
    car: tuple[CarEntry, ...]
    weyl_generators: tuple[IntMat, ...]
    centralizer_roots: tuple[IntVec, ...]
    group_cap: int = field(default=DEFAULT_CAP, compare=False)

    @property
    def delta(self) -> int:
        return self.eta % self.m

    @property
    def epsilon(self) -> int:
        return 1 if self.eta > 0 else -1

    def residue(self, n: int) -> int:
        return n % self.m

    def car_in(self, residue: int, star: bool = False) -> tuple[CarEntry, ...]:
        r = residue % self.m
        return tuple(e for e in self.car if e.i == r and (e.is_star or not star))

    @cached_property
    def weyl_elements(self) -> tuple[IntMat, ...]:
        """Elements of W acting on character coordinates (closure of the generators)."""
        return tuple(closure(self.weyl_generators, self.rank_e, self.group_cap))

    @cached_property
    def weyl_on_e(self) -> tuple[IntMat, ...]:
        """Contragredient action on E: the matrix ``(A^-1)^T`` for each element ``A``.

        Listed in the same order as :attr:`weyl_elements`.
        """
        elems = self.weyl_elements
        ident = mat_identity(self.rank_e)
        return tuple(mat_transpose(next(h for h in elems if mat_mul(g, h) == ident)) for g in elems)

    def with_eta(self, eta: int) -> BlockDatum:
        return replace(self, eta=eta)

    # serialization -----------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "m": self.m,
            "eta": self.eta,
            "rankE": self.rank_e,
            "car": [{"i": e.i, "alpha": list(e.alpha), "n": e.n, "dim": e.dim} for e in self.car],
            "weylGenerators": [[list(r) for r in g] for g in self.weyl_generators],
            "centralizerRoots": [list(a) for a in self.centralizer_roots],
        }

    @classmethod
    def from_json(cls, data: dict, group_cap: int = DEFAULT_CAP) -> BlockDatum:
        try:
            m = int(data["m"])
            eta = int(data["eta"])
            rank_e = int(data["rankE"])
            car = tuple(
                CarEntry(int(e["i"]), tuple(int(x) for x in e["alpha"]), int(e["n"]), int(e["dim"]))
                for e in data["car"]
            )
            gens = tuple(tuple(tuple(int(x) for x in row) for row in g) for g in data.get("weylGenerators", []))
            roots = tuple(tuple(int(x) for x in a) for a in data.get("centralizerRoots", []))
        except (KeyError, TypeError, ValueError) as exc:
            raise DatumError(f"parse error: {exc!r}") from exc
        if m <= 0:
            raise DatumError("parse error: m must be a positive integer")
        if eta == 0:
            raise DatumError("parse error: eta must be nonzero")
        return cls(m, eta, rank_e, car, gens, roots, group_cap)


def _check_shapes(d: BlockDatum) -> list[str]:
    out = []
    for e in d.car:
        if not 0 <= e.i < d.m:
            out.append(f"car entry {_fmt(e)}: residue outside [0, {d.m})")
        if len(e.alpha) != d.rank_e:
            out.append(f"car entry {_fmt(e)}: alpha has length {len(e.alpha)}, expected {d.rank_e}")
        if e.dim <= 0:
            out.append(f"car entry {_fmt(e)}: dim must be positive")
    seen = set()
    for e in d.car:
        if e.key() in seen:
            out.append(f"car entry {_fmt(e)}: duplicate (i, alpha, n)")
        seen.add(e.key())
    for g in d.weyl_generators:
        if len(g) != d.rank_e or any(len(r) != d.rank_e for r in g):
            out.append(f"weyl generator {[list(r) for r in g]} is not {d.rank_e}x{d.rank_e}")
    for a in d.centralizer_roots:
        if len(a) != d.rank_e:
            out.append(f"centralizer root {list(a)} has wrong length")
        elif not any(a):
            out.append("centralizer roots must be nonzero")
    return out


def _fmt(e: CarEntry) -> str:
    return f"(i={e.i}, alpha={list(e.alpha)}, n={e.n})"


def _det(g: IntMat) -> int:
    import sympy

    return int(sympy.Matrix([list(r) for r in g]).det())


def _generator_has_finite_order(g: IntMat, bound: int = 1000) -> bool:
    ident = mat_identity(len(g))
    h = g
    for _ in range(bound):
        if h == ident:
            return True
        h = mat_mul(g, h)
    return False


def validate(d: BlockDatum) -> list[str]:
    """List every violated invariant; empty iff the datum is valid."""
    out = _check_shapes(d)
    if out:
        return out
    index = {e.key(): e for e in d.car}

    # dim g^{alpha,n}_i = dim g^{-alpha,-n}_{-i}
    for e in d.car:
        partner = index.get(((-e.i) % d.m, neg(e.alpha), -e.n))
        if partner is None:
            out.append(f"symmetry violated: no entry {((-e.i) % d.m, list(neg(e.alpha)), -e.n)} matching {_fmt(e)}")
        elif partner.dim != e.dim:
            out.append(f"symmetry violated: dims differ between {_fmt(e)} and {_fmt(partner)}")

    # W finite
    finite = True
    for g in d.weyl_generators:
        if abs(_det(g)) != 1 or not _generator_has_finite_order(g):
            out.append(f"group closure cap exceeded: generator {[list(r) for r in g]} has infinite order")
            finite = False
    if finite:
        try:
            d.weyl_elements
        except GroupClosureError as exc:
            out.append(str(exc))
            finite = False

    # W permutes car_i preserving (n, dim); W stabilizes the centralizer roots
    roots = set(d.centralizer_roots)
    for g in d.weyl_generators:
        for e in d.car:
            img = index.get((e.i, mat_vec(g, e.alpha), e.n))
            if img is None or img.dim != e.dim:
                out.append(f"W does not permute car: generator {[list(r) for r in g]} moves {_fmt(e)} outside car")
        for a in d.centralizer_roots:
            if mat_vec(g, a) not in roots:
                out.append(f"W does not stabilize centralizer roots: {list(a)}")
    for a in d.centralizer_roots:
        if neg(a) not in roots:
            out.append(f"centralizer roots not closed under negation: {list(a)}")

    # dim g^{alpha,2}_delta = dim g^{-alpha,2}_delta
    for e in d.car_in(d.delta, star=True):
        if e.n == 2:
            partner = index.get((d.delta, neg(e.alpha), 2))
            if partner is None or partner.dim != e.dim:
                out.append(f"sl2 symmetry violated for {_fmt(e)}")
    return out


def load_datum(path: str | Path, group_cap: int = DEFAULT_CAP) -> BlockDatum:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise DatumError(f"parse error: {exc}") from exc
    d = BlockDatum.from_json(data, group_cap)
    problems = validate(d)
    if problems:
        raise DatumError("invalid datum:\n  " + "\n  ".join(problems), problems)
    return d


def save_datum(d: BlockDatum, path: str | Path) -> None:
    Path(path).write_text(json.dumps(d.to_json(), indent=2) + "\n", encoding="utf-8")


def _generating_subset(elements: Sequence[IntMat], dim: int) -> tuple[IntMat, ...]:
    """Greedy generating set of the group ``elements`` (deterministic)."""
    gens: list[IntMat] = []
    span = {mat_identity(dim)}
    for g in elements:
        if g not in span:
            gens.append(g)
            span = set(closure(gens, dim))
    return tuple(gens)


def principal_datum(
    rs: RootSystem,
    degrees: Sequence[int],
    m: int,
    eta: int,
    weyl: str = "centralizer",
) -> BlockDatum:
    """Datum of the principal block of the inner grading given by simple-root degrees.

    ``weyl="centralizer"`` takes W to be the Weyl group of the degree-0 roots
    (the normalizer of the torus in the connected degree-0 group).
    ``weyl="stabilizer"`` takes every Weyl element preserving all root degrees
    mod ``m``. The two agree when ``m == 1``.
    """
    if len(degrees) != rs.rank:
        raise ValueError(f"need {rs.rank} degrees, got {len(degrees)}")
    if m <= 0 or eta == 0:
        raise ValueError("m must be positive and eta nonzero")
    import sympy

    simple_matrix = sympy.Matrix([list(s) for s in rs.simple_roots]).T

    def degree(alpha: IntVec) -> int:
        coords = simple_matrix.solve(sympy.Matrix(list(alpha)))
        return int(sum(int(c) * dg for c, dg in zip(coords, degrees)))

    deg = {a: degree(a) for a in rs.roots}
    car = [CarEntry(deg[a] % m, a, 0, 1) for a in rs.roots]
    car.append(CarEntry(0, (0,) * rs.rank, 0, rs.rank))
    centralizer = tuple(a for a in rs.roots if deg[a] % m == 0)

    if weyl == "stabilizer":
        full = weyl_group(rs).elements
        keep = [g for g in full if all(deg[mat_vec(g, a)] % m == deg[a] % m for a in rs.roots)]
        gens = _generating_subset(keep, rs.rank)
    elif weyl == "centralizer":
        from .rootsys import reflection_subgroup

        gens = reflection_subgroup(rs, centralizer).generators if centralizer else ()
    else:
        raise ValueError(f"unknown weyl option {weyl!r}")
    return BlockDatum(m, eta, rs.rank, tuple(car), tuple(gens), centralizer)
