"""Exact rationals and sign predicates for numbers of the form p + q*sqrt(d).

Every geometric decision in the package is reduced to one of these
predicates; floats never participate.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from numbers import Rational as _RationalABC
from typing import Union

from .errors import DegenerateQuadraticError

Rational = Fraction
RationalLike = Union[int, Fraction]


def as_rational(value: RationalLike | str) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected outright so they cannot leak into a predicate.
    """
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, _RationalABC):
        return Fraction(value.numerator, value.denominator)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def sign(value: RationalLike) -> int:
    return (value > 0) - (value < 0)


def _perfect_square_root(d: int) -> int | None:
    r = isqrt(d)
    return r if r * r == d else None


def rational_sqrt(value: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    if value < 0:
        return None
    rn = _perfect_square_root(value.numerator)
    rd = _perfect_square_root(value.denominator)
    if rn is None or rd is None:
        return None
    return Fraction(rn, rd)


@dataclass(frozen=True)
class QuadExpr:
    """The real number ``p + q*sqrt(d)``.

    Construction normalizes: a zero or perfect-square radicand is folded
    into ``p`` so that equal numbers with rational value compare equal
    structurally.
    """

    p: Fraction
    q: Fraction = Fraction(0)
    d: int = 0

    def __post_init__(self) -> None:
        p = as_rational(self.p)
        q = as_rational(self.q)
        d = self.d
        if not isinstance(d, int) or isinstance(d, bool) or d < 0:
            raise ValueError(f"radicand must be a nonnegative integer, got {d!r}")
        root = _perfect_square_root(d)
        if q == 0 or d == 0:
            q, d = Fraction(0), 0
        elif root is not None:
            p, q, d = p + q * root, Fraction(0), 0
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "d", d)

    @property
    def is_rational(self) -> bool:
        return self.d == 0

    def sign(self) -> int:
        return qsign(self)

    def __neg__(self) -> QuadExpr:
        return QuadExpr(-self.p, -self.q, self.d)

    def __add__(self, other: QuadExpr | RationalLike) -> QuadExpr:
        if not isinstance(other, QuadExpr):
            return QuadExpr(self.p + as_rational(other), self.q, self.d)
        if self.d == 0:
            return QuadExpr(self.p + other.p, other.q, other.d)
        if other.d == 0 or other.d == self.d:
            return QuadExpr(self.p + other.p, self.q + other.q, self.d)
        raise ValueError("cannot add expressions with different radicands")

    __radd__ = __add__

    def __sub__(self, other: QuadExpr | RationalLike) -> QuadExpr:
        return self + (-other if isinstance(other, QuadExpr) else -as_rational(other))

    def scale(self, factor: RationalLike) -> QuadExpr:
        f = as_rational(factor)
        return QuadExpr(self.p * f, self.q * f, self.d)

    def __str__(self) -> str:
        if self.d == 0:
            return str(self.p)
        return f"{self.p} + {self.q}*sqrt({self.d})"


def qsign(e: QuadExpr) -> int:
    """Sign of ``p + q*sqrt(d)`` by case analysis and one exact squaring."""
    sp = sign(e.p)
    sq = sign(e.q) if e.d > 0 else 0
    if sq == 0:
        return sp
    if sp == 0 or sp == sq:
        return sq
    # opposite signs: the larger magnitude wins
    lhs = e.p * e.p
    rhs = e.q * e.q * e.d
    if lhs == rhs:
        return 0
    return sp if lhs > rhs else sq


@dataclass(frozen=True)
class RootSummary:
    """Root pair of the monic quadratic ``t^2 - sum*t + product``."""

    sum: Fraction
    product: Fraction
    discriminant: Fraction

    @property
    def has_real_roots(self) -> bool:
        return self.discriminant >= 0

    def roots(self) -> tuple[QuadExpr, QuadExpr] | None:
        """Both roots as QuadExprs, smaller first; None if complex."""
        if self.discriminant < 0:
            return None
        half = self.sum / 2
        disc = self.discriminant / 4
        # sqrt(n/m) = sqrt(n*m)/m with integer radicand n*m
        num, den = disc.numerator, disc.denominator
        radicand = num * den
        lo = QuadExpr(half, Fraction(-1, den), radicand)
        hi = QuadExpr(half, Fraction(1, den), radicand)
        return lo, hi


def quad_root_summary(a2: RationalLike, a1: RationalLike, a0: RationalLike) -> RootSummary:
    """Sum, product and discriminant of the roots of ``a2 t^2 + a1 t + a0``."""
    a2, a1, a0 = as_rational(a2), as_rational(a1), as_rational(a0)
    if a2 == 0:
        raise DegenerateQuadraticError("leading coefficient is zero")
    s = -a1 / a2
    p = a0 / a2
    return RootSummary(s, p, s * s - 4 * p)


def cmp_sqrt_scaled(n1: RationalLike, d1: RationalLike, n2: RationalLike, d2: RationalLike) -> int:
    """Sign of ``n1*sqrt(d1) - n2*sqrt(d2)``.

    Radicands may be any nonnegative rationals; the comparison squares both
    sides only once their signs agree.
    """
    n1, d1, n2, d2 = (as_rational(v) for v in (n1, d1, n2, d2))
    if d1 < 0 or d2 < 0:
        raise ValueError("radicands must be nonnegative")
    s1 = sign(n1) if d1 else 0
    s2 = sign(n2) if d2 else 0
    if s1 != s2:
        return 1 if s1 > s2 else -1
    if s1 == 0:
        return 0
    lhs = n1 * n1 * d1
    rhs = n2 * n2 * d2
    return s1 * sign(lhs - rhs)


def sqrt_of_rational(value: RationalLike) -> QuadExpr:
    """``sqrt(value)`` as a QuadExpr with integer radicand."""
    v = as_rational(value)
    if v < 0:
        raise ValueError("square root of a negative rational")
    return QuadExpr(Fraction(0), Fraction(1, v.denominator), v.numerator * v.denominator)


def format_rational(value: RationalLike) -> str:
    """Serialize as ``"num/den"``; the denominator is always written."""
    v = as_rational(value)
    return f"{v.numerator}/{v.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text)
