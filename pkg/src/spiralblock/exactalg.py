"""Exact arithmetic over Z[v, v^-1] and Q(v).

Two value types live here: :class:`IntLaurent` (integer Laurent polynomials)
and :class:`RatFunc` (rational functions kept in a canonical reduced form).
Both are immutable and hashable; equality of two ``RatFunc`` values is
equality of canonical forms.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

from sympy.polys.domains import ZZ
from sympy.polys.euclidtools import dup_inner_gcd

Scalar = Union[int, "IntLaurent", "RatFunc"]


class IntLaurent:
    """Integer Laurent polynomial in ``v`` with finite support.

    >>> v = IntLaurent.gen()
    >>> (v + v**-1) * (v - v**-1)
    IntLaurent('v^2 - v^-2')
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, coefficients: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = coefficients.items() if isinstance(coefficients, Mapping) else coefficients
        acc: dict[int, int] = {}
        for e, c in items:
            c = int(c)
            if c:
                acc[int(e)] = acc.get(int(e), 0) + c
        self._terms = tuple(sorted((e, c) for e, c in acc.items() if c))
        self._hash = None

    # construction ----------------------------------------------------------
    @classmethod
    def gen(cls) -> IntLaurent:
        return cls({1: 1})

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> IntLaurent:
        return cls({exponent: coefficient})

    @classmethod
    def const(cls, c: int) -> IntLaurent:
        return cls({0: c})

    @classmethod
    def from_ascending(cls, shift: int, coeffs: Iterable[int]) -> IntLaurent:
        return cls((shift + k, c) for k, c in enumerate(coeffs))

    # inspection ------------------------------------------------------------
    @property
    def terms(self) -> tuple[tuple[int, int], ...]:
        """Sorted ``(exponent, coefficient)`` pairs, zero coefficients omitted."""
        return self._terms

    def as_dict(self) -> dict[int, int]:
        return dict(self._terms)

    def coeff(self, exponent: int) -> int:
        for e, c in self._terms:
            if e == exponent:
                return c
        return 0

    def is_zero(self) -> bool:
        return not self._terms

    def valuation(self) -> int:
        if not self._terms:
            raise ValueError("valuation of the zero polynomial")
        return self._terms[0][0]

    def degree(self) -> int:
        if not self._terms:
            raise ValueError("degree of the zero polynomial")
        return self._terms[-1][0]

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def ascending(self) -> tuple[int, list[int]]:
        """Return ``(shift, coeffs)`` with ``self = v^shift * sum coeffs[k] v^k``."""
        if not self._terms:
            return 0, []
        lo, hi = self._terms[0][0], self._terms[-1][0]
        out = [0] * (hi - lo + 1)
        for e, c in self._terms:
            out[e - lo] = c
        return lo, out

    def evaluate(self, x):
        return sum(c * x**e for e, c in self._terms)

    # involutions -----------------------------------------------------------
    def bar(self) -> IntLaurent:
        return IntLaurent((-e, c) for e, c in self._terms)

    def heart(self) -> IntLaurent:
        return IntLaurent((e, -c if e % 2 else c) for e, c in self._terms)

    # arithmetic ------------------------------------------------------------
    @staticmethod
    def _coerce(other) -> IntLaurent | None:
        if isinstance(other, IntLaurent):
            return other
        if isinstance(other, int):
            return IntLaurent({0: other})
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return IntLaurent(list(self._terms) + list(o._terms))

    __radd__ = __add__

    def __neg__(self):
        return IntLaurent((e, -c) for e, c in self._terms)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        acc: dict[int, int] = {}
        for e1, c1 in self._terms:
            for e2, c2 in o._terms:
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return IntLaurent(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial() or abs(self._terms[0][1]) != 1:
                raise ValueError("only unit monomials are invertible in Z[v, v^-1]")
            e, c = self._terms[0]
            return IntLaurent({e * k: c ** (-k)})
        out = IntLaurent({0: 1})
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("IntLaurent", self._terms))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f"IntLaurent('{self}')"

    def __str__(self):
        return _format_terms(self._terms)


def _format_terms(terms) -> str:
    if not terms:
        return "0"
    parts = []
    for e, c in sorted(terms, key=lambda t: -t[0]):
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            mono = "v" if e == 1 else f"v^{e}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def _to_dup(coeffs_asc: list[int]) -> list:
    return [ZZ(c) for c in reversed(coeffs_asc)]


def _from_dup(dup) -> list[int]:
    return [int(c) for c in reversed(dup)]


class RatFunc:
    """Element of Q(v) in canonical form ``num/den``.

    Canonical form: ``den`` is an integer polynomial with nonzero constant
    term and positive leading coefficient; every power of ``v`` sits in the
    Laurent numerator; numerator and denominator share no factor in Z[v]
    (integer content included). The zero function is ``0/1``.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: IntLaurent, den: IntLaurent, _canonical: bool = False):
        if not _canonical:
            num, den = _canonicalize(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def of(cls, x: Scalar) -> RatFunc:
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, IntLaurent):
            return cls(x, _ONE_L, _canonical=True)
        if isinstance(x, int):
            return cls(IntLaurent({0: x}), _ONE_L, _canonical=True)
        raise TypeError(f"cannot convert {type(x).__name__} to RatFunc")

    @classmethod
    def gen(cls) -> RatFunc:
        return cls.of(IntLaurent.gen())

    @classmethod
    def zero(cls) -> RatFunc:
        return cls.of(0)

    @classmethod
    def one(cls) -> RatFunc:
        return cls.of(1)

    # inspection ------------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_laurent(self) -> bool:
        return self.den == _ONE_L

    def as_laurent(self) -> IntLaurent:
        if not self.is_laurent():
            raise ValueError(f"{self} is not a Laurent polynomial")
        return self.num

    def valuation(self) -> int:
        """Order of vanishing at ``v = 0``."""
        return self.num.valuation()

    def total_degree(self) -> int:
        """Crude size measure used for pivot selection."""
        if self.is_zero():
            return 0
        return (self.num.degree() - self.num.valuation()) + self.den.degree()

    # arithmetic ------------------------------------------------------------
    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero():
            return o
        if o.is_zero():
            return self
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _canonical=True)

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return _ZERO
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> RatFunc:
        if self.is_zero():
            raise ZeroDivisionError("division by zero")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num**k, self.den**k, _canonical=True)

    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("RatFunc", self.num, self.den))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"RatFunc('{self}')"

    def __str__(self):
        if self.is_laurent():
            return str(self.num)
        return f"({self.num})/({self.den})"

    # involutions -----------------------------------------------------------
    def bar(self) -> RatFunc:
        return bar(self)

    def heart(self) -> RatFunc:
        return heart(self)

    # serialization -----------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "num": [[e, str(c)] for e, c in self.num.terms],
            "den": [[e, str(c)] for e, c in self.den.terms],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> RatFunc:
        num = IntLaurent((int(e), int(c)) for e, c in data["num"])
        den = IntLaurent((int(e), int(c)) for e, c in data["den"])
        return normalize(num, den)


_ONE_L = IntLaurent({0: 1})


def _canonicalize(num: IntLaurent, den: IntLaurent) -> tuple[IntLaurent, IntLaurent]:
    if den.is_zero():
        raise ZeroDivisionError("division by zero")
    if num.is_zero():
        return IntLaurent(), _ONE_L
    a, p = num.ascending()
    b, q = den.ascending()
    if len(q) == 1:
        g = _content_gcd(p, q[0])
        p = [c // g for c in p]
        qc = q[0] // g
        if qc < 0:
            p, qc = [-c for c in p], -qc
        return IntLaurent.from_ascending(a - b, p), IntLaurent({0: qc})
    _, pp, qq = dup_inner_gcd(_to_dup(p), _to_dup(q), ZZ)
    p, q = _from_dup(pp), _from_dup(qq)
    if q[-1] < 0:
        p, q = [-c for c in p], [-c for c in q]
    return IntLaurent.from_ascending(a - b, p), IntLaurent.from_ascending(0, q)


def _content_gcd(p: list[int], c: int) -> int:
    from math import gcd

    g = abs(c)
    for x in p:
        g = gcd(g, x)
        if g == 1:
            break
    return g or 1


def _coerce(x) -> RatFunc | None:
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, (int, IntLaurent)):
        return RatFunc.of(x)
    return None


_ZERO = RatFunc(IntLaurent(), _ONE_L, _canonical=True)


def normalize(num: IntLaurent | int, den: IntLaurent | int) -> RatFunc:
    """Canonical ``RatFunc`` for ``num/den``; raises ``ZeroDivisionError`` on ``den == 0``."""
    if isinstance(num, int):
        num = IntLaurent.const(num)
    if isinstance(den, int):
        den = IntLaurent.const(den)
    return RatFunc(num, den)


def bar(f: RatFunc) -> RatFunc:
    """The involution ``f(v) -> f(v^-1)``."""
    return RatFunc(f.num.bar(), f.den.bar())


def heart(f: RatFunc) -> RatFunc:
    """The involution ``f(v) -> f(-v)``."""
    return RatFunc(f.num.heart(), f.den.heart())


@dataclass(frozen=True)
class SeriesView:
    """Laurent expansion at ``v = 0``: ``coefficients[k]`` multiplies ``v^(valuation + k)``."""

    valuation: int
    coefficients: tuple[Fraction, ...]

    def coeff(self, exponent: int) -> Fraction:
        k = exponent - self.valuation
        if k < 0:
            return Fraction(0)
        if k >= len(self.coefficients):
            raise IndexError(f"exponent {exponent} beyond the computed order")
        return self.coefficients[k]

    def as_dict(self) -> dict[int, Fraction]:
        return {self.valuation + k: c for k, c in enumerate(self.coefficients) if c}


def expand_at_0(f: RatFunc, order: int) -> SeriesView:
    """Laurent expansion of ``f`` at 0 through the ``v^order`` term.

    >>> v = RatFunc.gen()
    >>> expand_at_0(1 / (1 - v**2), 4).as_dict()
    {0: Fraction(1, 1), 2: Fraction(1, 1), 4: Fraction(1, 1)}
    """
    if f.is_zero():
        return SeriesView(order + 1, ())
    a, p = f.num.ascending()
    _, q = f.den.ascending()
    n = order - a + 1
    if n <= 0:
        return SeriesView(a, ())
    q0 = Fraction(q[0])
    out: list[Fraction] = []
    for k in range(n):
        acc = Fraction(p[k]) if k < len(p) else Fraction(0)
        for j in range(1, min(k, len(q) - 1) + 1):
            acc -= q[j] * out[k - j]
        out.append(acc / q0)
    return SeriesView(a, tuple(out))


def in_z_power_series(f: RatFunc) -> bool:
    """True iff the expansion of ``f`` at 0 lies in Z[[v]]."""
    if f.is_zero():
        return True
    if f.num.valuation() < 0:
        return False
    return abs(f.den.coeff(0)) == 1


def in_one_plus_vz(f: RatFunc) -> bool:
    """True iff the expansion of ``f`` at 0 lies in ``1 + vZ[[v]]``.

    Decided exactly: with ``f`` reduced and its denominator's content kept,
    the expansion is integral iff the denominator has constant term +-1.
    """
    if f.is_zero() or f.num.valuation() != 0:
        return False
    d0 = f.den.coeff(0)
    return abs(d0) == 1 and f.num.coeff(0) == d0


def in_q_of_v_squared(f: RatFunc) -> bool:
    return heart(f) == f


def is_bar_invariant(f: RatFunc) -> bool:
    return bar(f) == f


def in_n_laurent(f: RatFunc) -> bool:
    """Membership in N[v, v^-1]."""
    return f.is_laurent() and all(c > 0 for _, c in f.num.terms)


def in_n_v_inverse_squared(f: RatFunc) -> bool:
    """Membership in N[v^-2]: nonnegative coefficients on even nonpositive exponents."""
    return f.is_laurent() and all(c > 0 and e <= 0 and e % 2 == 0 for e, c in f.num.terms)


V = RatFunc.gen()
ONE = RatFunc.one()
ZERO = _ZERO
