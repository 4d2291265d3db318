"""The space V' with its form, the quotient V, the lattice V_A and its canonical bases.

Vectors of V_A are stored as A-coefficients on the lattice generators
``a_phi^-1 T~_c``. The form is linear in the first argument and antilinear
(``f -> bar f``) in the second. Two lattice vectors are equal in V iff their
difference pairs to zero with every generator.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .arrangement import Chamber, Face, enumerate_faces
from .datum import BlockDatum
from .exactalg import (
    IntLaurent,
    RatFunc,
    ZERO,
    expand_at_0,
    in_n_laurent,
    in_one_plus_vz,
)
from .pairing import GramMatrix, a_phi, build_gram, h_value
from .ratmatrix import bareiss_echelon, nullspace, solve

_ONE_L = IntLaurent.const(1)
_ZERO_L = IntLaurent()


class SearchExhausted(RuntimeError):
    """The bounded search did not certify a full signed basis."""


class PositivityError(RuntimeError):
    """No sign choice makes every generator expansion positive."""


@dataclass(frozen=True)
class Generator:
    tag: str
    chamber: int
    face: Face
    a: IntLaurent
    d: int  # positive-root count of the vanishing subsystem
    h: int  # h at the chamber


def _sym(e: int) -> IntLaurent:
    """``v^e + v^-e`` for ``e > 0``, ``1`` for ``e == 0``."""
    return _ONE_L if e == 0 else IntLaurent({e: 1, -e: 1})


def _lead(f: RatFunc) -> tuple[int, Fraction]:
    """Valuation and lowest coefficient of the expansion at 0."""
    val = f.num.valuation()
    return val, Fraction(f.num.coeff(val), f.den.coeff(0))


def _coeff_at(f: RatFunc, exponent: int) -> Fraction:
    if f.is_zero():
        return Fraction(0)
    if f.is_laurent():
        return Fraction(f.num.coeff(exponent))
    return expand_at_0(f, exponent).coeff(exponent)


class BlockSpace:
    """Chambers, Gram matrix, radical, quotient coordinates and lattice generators of one datum."""

    def __init__(self, d: BlockDatum, gram: GramMatrix | None = None, seed: int = 1, jobs: int = 1):
        self.datum = d
        self.seed = seed
        self.gram = gram if gram is not None else build_gram(d, seed=seed, jobs=jobs)
        self.chambers: tuple[Chamber, ...] = self.gram.chambers
        g = self.gram.rows()
        self._g = g
        _, pivots = bareiss_echelon(g)
        self.pivot_chambers: tuple[int, ...] = tuple(pivots)
        self.radical_basis: list[list[RatFunc]] = nullspace(g)

    # quotient ------------------------------------------------------------------
    @property
    def quotient_dim(self) -> int:
        return len(self.pivot_chambers)

    @property
    def free_chambers(self) -> tuple[int, ...]:
        return tuple(j for j in range(len(self.chambers)) if j not in self.pivot_chambers)

    def radical_audit(self) -> bool:
        """Left radical equals right radical: the kernel is stable under bar."""
        for vec in self.radical_basis:
            barred = [x.bar() for x in vec]
            for row in self._g:
                acc = ZERO
                for a, b in zip(row, barred):
                    if not a.is_zero() and not b.is_zero():
                        acc = acc + a * b
                if not acc.is_zero():
                    return False
        return len(self.radical_basis) + self.quotient_dim == len(self.chambers)

    def v_coordinates(self, chamber_coords: Sequence[RatFunc]) -> list[RatFunc]:
        """Coordinates on V: subtract radical vectors to clear free chambers, keep pivot entries."""
        x = list(chamber_coords)
        for j, vec in zip(self.free_chambers, self.radical_basis):
            c = x[j]
            if not c.is_zero():
                x = [a - c * b for a, b in zip(x, vec)]
        return [x[p] for p in self.pivot_chambers]

    # lattice -------------------------------------------------------------------
    @cached_property
    def generators(self) -> tuple[Generator, ...]:
        out = []
        for i, c in enumerate(self.chambers):
            h = h_value(self.datum, c.representative)
            for j, f in enumerate(enumerate_faces(self.datum, c, self.seed)):
                a = a_phi(self.datum, f)
                d = (a.degree() if not a.is_zero() else 0)
                out.append(Generator(f"c{i}.f{j}", i, f, a, d, h))
        return tuple(out)

    @cached_property
    def _gen_gram(self) -> list[list[RatFunc]]:
        gens = self.generators
        inv = [RatFunc.of(1) / RatFunc.of(g.a) for g in gens]
        return [
            [self._g[gk.chamber][gl.chamber] * inv[k] * inv[l] for l, gl in enumerate(gens)]
            for k, gk in enumerate(gens)
        ]

    def generator_vector(self, k: int, coefficient: IntLaurent = _ONE_L) -> LatticeVector:
        coeffs = [_ZERO_L] * len(self.generators)
        coeffs[k] = coefficient
        return LatticeVector(self, tuple(coeffs))

    def chamber_vector(self, chamber: int) -> LatticeVector:
        """``T~_c`` as ``a_phi`` times the generator of any face of ``c``."""
        k = next(k for k, g in enumerate(self.generators) if g.chamber == chamber)
        return self.generator_vector(k, self.generators[k].a)

    def pair(self, x: LatticeVector, y: LatticeVector) -> RatFunc:
        gg = self._gen_gram
        acc = ZERO
        ybar = [(l, RatFunc.of(c.bar())) for l, c in enumerate(y.coefficients) if not c.is_zero()]
        for k, f in enumerate(x.coefficients):
            if f.is_zero():
                continue
            fk = RatFunc.of(f)
            for l, gl in ybar:
                e = gg[k][l]
                if not e.is_zero():
                    acc = acc + fk * gl * e
        return acc

    def is_zero_in_v(self, x: LatticeVector) -> bool:
        return all(self.pair(x, self.generator_vector(k)).is_zero() for k in range(len(self.generators)))

    def equal_in_v(self, x: LatticeVector, y: LatticeVector) -> bool:
        return self.is_zero_in_v(x - y)

    def reduced_generators(self) -> list[int]:
        """Generator indices with A-multiples inside a chamber and duplicates in V removed."""
        gens = self.generators
        keep = []
        for k, g in enumerate(gens):
            redundant = False
            for l, o in enumerate(gens):
                if l == k or o.chamber != g.chamber:
                    continue
                q = RatFunc.of(o.a) / RatFunc.of(g.a)
                if q.is_laurent() and (q.as_laurent() != _ONE_L or l < k):
                    redundant = True
                    break
            if not redundant:
                keep.append(k)
        gg = self._gen_gram
        out: list[int] = []
        for k in keep:
            if all(gg[k][l].is_zero() for l in range(len(gens))):
                continue
            if any(gg[k] == gg[j] for j in out):
                continue
            out.append(k)
        return out


@dataclass(frozen=True)
class LatticeVector:
    space: BlockSpace = field(repr=False, compare=False)
    coefficients: tuple[IntLaurent, ...]

    def __add__(self, other: LatticeVector) -> LatticeVector:
        return LatticeVector(self.space, tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __sub__(self, other: LatticeVector) -> LatticeVector:
        return LatticeVector(self.space, tuple(a - b for a, b in zip(self.coefficients, other.coefficients)))

    def __neg__(self) -> LatticeVector:
        return LatticeVector(self.space, tuple(-a for a in self.coefficients))

    def scale(self, f: IntLaurent | int) -> LatticeVector:
        if isinstance(f, int):
            f = IntLaurent.const(f)
        return LatticeVector(self.space, tuple(a * f for a in self.coefficients))

    def chamber_coordinates(self) -> list[RatFunc]:
        out = [ZERO] * len(self.space.chambers)
        for g, f in zip(self.space.generators, self.coefficients):
            if not f.is_zero():
                out[g.chamber] = out[g.chamber] + RatFunc.of(f) / RatFunc.of(g.a)
        return out

    def v_coordinates(self) -> list[RatFunc]:
        return self.space.v_coordinates(self.chamber_coordinates())

    def as_dict(self) -> dict[str, IntLaurent]:
        return {g.tag: f for g, f in zip(self.space.generators, self.coefficients) if not f.is_zero()}

    def to_json(self) -> dict:
        return {tag: RatFunc.of(f).to_json() for tag, f in self.as_dict().items()}


def bar_vector(x: LatticeVector) -> LatticeVector:
    """Bar fixes every generator (``a_phi`` is bar-invariant) and conjugates coefficients."""
    return LatticeVector(x.space, tuple(f.bar() for f in x.coefficients))


def heart_vector(x: LatticeVector) -> LatticeVector:
    """Heart fixes ``T_c = v^-h(c) T~_c``; on a generator it is the sign ``(-1)^(d + h)``."""
    return LatticeVector(
        x.space,
        tuple(f.heart() if (g.d + g.h) % 2 == 0 else -f.heart() for g, f in zip(x.space.generators, x.coefficients)),
    )


def build_block_space(d: BlockDatum, seed: int = 1, jobs: int = 1) -> BlockSpace:
    return BlockSpace(d, seed=seed, jobs=jobs)


def block_rank(d: BlockDatum, seed: int = 1, jobs: int = 1) -> int:
    return build_block_space(d, seed, jobs).quotient_dim


def lattice_generators(space: BlockSpace) -> list[tuple[Generator, LatticeVector]]:
    return [(g, space.generator_vector(k)) for k, g in enumerate(space.generators)]


# canonical basis ------------------------------------------------------------------
def _norm_data(space: BlockSpace, x: LatticeVector) -> tuple[int, Fraction] | None:
    """``(D, s)`` with ``(x:x) = s v^-2D + ...``; ``None`` when ``x = 0`` in V."""
    p = space.pair(x, x)
    if p.is_zero():
        return None
    val, s = _lead(p)
    return -val // 2, s


def _reduce(space: BlockSpace, x: LatticeVector, found: Sequence[LatticeVector]) -> LatticeVector:
    """Strip the components of ``x`` along known basis vectors, top degree first."""
    while True:
        nd = _norm_data(space, x)
        if nd is None:
            return x
        big_d, _ = nd
        changed = False
        for b in found:
            c = _coeff_at(space.pair(x, b), -big_d)
            if c:
                if c.denominator != 1:
                    raise ArithmeticError("non-integral leading coefficient against a basis vector")
                x = x - b.scale(_sym(big_d) * int(c))
                changed = True
        if not changed:
            return x


def _sign_key(space: BlockSpace, x: LatticeVector) -> int:
    """Sign of the lowest-order coefficient of the first nonzero V-coordinate."""
    for c in x.v_coordinates():
        if not c.is_zero():
            return 1 if _lead(c)[1] > 0 else -1
    return 1


def _normalize_sign(space: BlockSpace, x: LatticeVector) -> LatticeVector:
    return x if _sign_key(space, x) > 0 else -x


def _is_signed_element(space: BlockSpace, x: LatticeVector) -> bool:
    p = space.pair(x, x)
    return bar_vector(x) == x and in_one_plus_vz(p)


def _contains(space: BlockSpace, pool: Iterable[LatticeVector], x: LatticeVector) -> bool:
    return any(space.equal_in_v(x, b) or space.is_zero_in_v(x + b) for b in pool)


@dataclass
class SignedBasis:
    space: BlockSpace = field(repr=False)
    elements: list[LatticeVector]
    method: str
    sign_convention: str = "lowest-order coefficient of the first nonzero V-coordinate is positive"

    def signed_elements(self) -> list[LatticeVector]:
        return [s for b in self.elements for s in (b, -b)]

    def gram(self) -> list[list[RatFunc]]:
        return [[self.space.pair(b, c) for c in self.elements] for b in self.elements]

    def to_json(self, series_order: int = 40) -> dict:
        out = []
        for b in self.elements:
            series = expand_at_0(self.space.pair(b, b), series_order)
            out.append(
                {
                    "coefficients": b.to_json(),
                    "selfPairingSeries": [[e, str(c)] for e, c in sorted(series.as_dict().items())],
                }
            )
        return {
            "rank": self.space.quotient_dim,
            "radicalDim": len(self.space.radical_basis),
            "basis": out,
        }


def _stage_one(space: BlockSpace, pool: list[LatticeVector], max_rounds: int = 64) -> tuple[list[LatticeVector], list[LatticeVector]]:
    found: list[LatticeVector] = []
    for _ in range(max_rounds):
        progress = False
        rest = []
        for x in pool:
            x = _reduce(space, x, found)
            nd = _norm_data(space, x)
            if nd is None:
                progress = True
                continue
            if nd == (0, 1):
                found.append(_normalize_sign(space, x))
                progress = True
            else:
                rest.append(x)
        pool = rest
        if len(found) == space.quotient_dim or not pool:
            break
        if not progress:
            pool, progress = _pairwise(space, pool)
            if not progress:
                break
    return found, pool


def _pairwise(space: BlockSpace, pool: list[LatticeVector]) -> tuple[list[LatticeVector], bool]:
    """Try ``x - c (v^e + v^-e) y`` between pool vectors, accepting strict decreases of ``(D, s)``."""
    data = [_norm_data(space, x) for x in pool]
    order = sorted(range(len(pool)), key=lambda i: data[i])
    for i in reversed(order):
        x, (dx, sx) = pool[i], data[i]
        for j in order:
            if j == i:
                continue
            y, (dy, _) = pool[j], data[j]
            e = dx - dy
            if e < 0:
                continue
            c = _coeff_at(space.pair(x, y), -dx - dy) if True else 0
            sy = data[j][1]
            if not c or sy == 0:
                continue
            q = c / sy
            if q.denominator != 1:
                continue
            cand = x - y.scale(_sym(e) * int(q))
            nd = _norm_data(space, cand)
            if nd is None or nd < (dx, sx):
                new = list(pool)
                if nd is None:
                    new.pop(i)
                else:
                    new[i] = cand
                return new, True
    return pool, False


def _search(
    space: BlockSpace,
    gens: Sequence[int],
    found: list[LatticeVector],
    max_degree: int,
    max_coeff: int,
) -> list[LatticeVector]:
    """Exhaustive search over bar-invariant combinations within the bounds."""
    n = len(space.generators)
    slots = [(k, e) for k in gens for e in range(max_degree + 1)]
    values = range(-max_coeff, max_coeff + 1)
    for combo in itertools.product(values, repeat=len(slots)):
        if not any(combo):
            continue
        coeffs = [_ZERO_L] * n
        for (k, e), c in zip(slots, combo):
            if c:
                coeffs[k] = coeffs[k] + _sym(e) * c
        x = LatticeVector(space, tuple(coeffs))
        if not _is_signed_element(space, x) or _contains(space, found, x):
            continue
        found.append(_normalize_sign(space, x))
        if len(found) == space.quotient_dim:
            break
    return found


def canonical_signed_basis(
    space: BlockSpace,
    method: str = "reduce",
    max_degree: int = 2,
    max_coeff: int = 2,
) -> SignedBasis:
    """One representative per pair ``+-b`` of the signed basis.

    ``method="reduce"`` runs valuation reduction over the generators and
    falls back to the bounded search if it stalls; ``method="search"`` uses
    the bounded search alone. Every reported element is re-verified.
    """
    if space.quotient_dim == 0:
        return SignedBasis(space, [], method)
    gens = space.reduced_generators()
    found: list[LatticeVector] = []
    used = method
    if method == "reduce":
        found, _ = _stage_one(space, [space.generator_vector(k) for k in gens])
        if len(found) < space.quotient_dim:
            used = "reduce+search"
    elif method != "search":
        raise ValueError(f"unknown method {method!r}")
    if len(found) < space.quotient_dim:
        for dmax in range(max_degree + 1):
            for cmax in range(1, max_coeff + 1):
                found = _search(space, gens, found, dmax, cmax)
                if len(found) == space.quotient_dim:
                    break
            if len(found) == space.quotient_dim:
                break
    if len(found) < space.quotient_dim:
        raise SearchExhausted("search bound exhausted")
    for b in found:
        if not _is_signed_element(space, b):
            raise ArithmeticError("reported basis element fails the defining conditions")
    if _v_rank(space, found) != space.quotient_dim:
        raise ArithmeticError("reported basis elements are linearly dependent")
    return SignedBasis(space, found, used)


def _v_rank(space: BlockSpace, vecs: Sequence[LatticeVector]) -> int:
    rows = [v.v_coordinates() for v in vecs]
    return len(bareiss_echelon(rows)[1]) if rows else 0


def expand_in_basis(space: BlockSpace, basis: Sequence[LatticeVector], x: LatticeVector) -> list[RatFunc]:
    """Coefficients ``f`` with ``x = sum f_j b_j`` in V."""
    h = [[space.pair(b, c) for c in basis] for b in basis]
    ht = [list(col) for col in zip(*h)]
    rhs = [space.pair(x, c) for c in basis]
    return solve(ht, rhs)


@dataclass
class PositiveBasis:
    elements: list[LatticeVector]
    expansions: dict[str, list[RatFunc]]


def positive_basis(sb: SignedBasis, generators: Sequence[tuple[Generator, LatticeVector]] | None = None) -> PositiveBasis:
    """Signs making every generator an N[v, v^-1]-combination of the basis."""
    space = sb.space
    if generators is None:
        generators = lattice_generators(space)
    raw = {g.tag: expand_in_basis(space, sb.elements, x) for g, x in generators}
    signs = []
    for j in range(len(sb.elements)):
        pos = neg = False
        for coeffs in raw.values():
            f = coeffs[j]
            if f.is_zero():
                continue
            if in_n_laurent(f):
                pos = True
            elif in_n_laurent(-f):
                neg = True
            else:
                raise PositivityError("no positive sign assignment")
        if pos and neg:
            raise PositivityError("no positive sign assignment")
        signs.append(-1 if neg else 1)
    elements = [b if s > 0 else -b for b, s in zip(sb.elements, signs)]
    expansions = {tag: [f if s > 0 else -f for f, s in zip(coeffs, signs)] for tag, coeffs in raw.items()}
    return PositiveBasis(elements, expansions)


# involution audits --------------------------------------------------------------
def heart_check(space: BlockSpace, basis: Sequence[LatticeVector], kappas: Sequence[int]) -> list[bool]:
    """Per element: ``heart(b) = (-1)^kappa(b) b`` in V."""
    out = []
    for b, k in zip(basis, kappas):
        target = b if k % 2 == 0 else -b
        out.append(space.equal_in_v(heart_vector(b), target))
    return out


def heart_pairing_check(space: BlockSpace, basis: Sequence[LatticeVector]) -> bool:
    """``(b^heart : b'^heart) = heart((b:b'))`` on all pairs."""
    hb = [heart_vector(b) for b in basis]
    for i, b in enumerate(basis):
        for j, c in enumerate(basis):
            if space.pair(hb[i], hb[j]) != space.pair(b, c).heart():
                return False
    return True


@dataclass(frozen=True)
class EtaReport:
    chambers: bool
    gram: bool
    rank: bool
    basis: bool

    @property
    def ok(self) -> bool:
        return self.chambers and self.gram and self.rank and self.basis

    def to_json(self) -> dict:
        return {"chambers": self.chambers, "gram": self.gram, "rank": self.rank, "basis": self.basis, "ok": self.ok}


def eta_invariance_check(d: BlockDatum, eta2: int, seed: int = 1, with_basis: bool = True) -> EtaReport:
    """Compare chambers, Gram, rank and signed basis between ``eta`` and ``eta2``."""
    s1 = build_block_space(d, seed)
    s2 = build_block_space(d.with_eta(eta2), seed)
    chambers = [c.signs for c in s1.chambers] == [c.signs for c in s2.chambers]
    gram = chambers and s1.gram.entries == s2.gram.entries
    rank = s1.quotient_dim == s2.quotient_dim
    basis = True
    if with_basis and gram:
        b1 = canonical_signed_basis(s1)
        b2 = canonical_signed_basis(s2)
        basis = [b.v_coordinates() for b in b1.elements] == [b.v_coordinates() for b in b2.elements]
    elif with_basis:
        basis = False
    return EtaReport(chambers, gram, rank, basis)
