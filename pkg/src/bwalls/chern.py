"""Chern characters, the D-scaled central charge, indeterminate points, Bogomolov checks.

Coordinates: the stability half-plane is stored as ``(x, yt)`` with
``yt = ||D|| * y`` so that every stored quantity is rational. In these
coordinates the boundary parabola is ``yt^2 = 2 D^2 x``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ChernError
from .exactnum import RationalLike, as_rational
from .lattice import DivisorClass, SurfaceData


@dataclass(frozen=True)
class ChernCharacter:
    rank: int
    c1: DivisorClass
    ch2: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "ch2", as_rational(self.ch2))

    def __add__(self, other: ChernCharacter) -> ChernCharacter:
        return ChernCharacter(self.rank + other.rank, self.c1 + other.c1, self.ch2 + other.ch2)

    def __neg__(self) -> ChernCharacter:
        return ChernCharacter(-self.rank, -self.c1, -self.ch2)

    def __sub__(self, other: ChernCharacter) -> ChernCharacter:
        return self + (-other)

    def scale(self, k: int) -> ChernCharacter:
        return ChernCharacter(k * self.rank, k * self.c1, k * self.ch2)

    def __str__(self) -> str:
        return f"({self.rank}, {self.c1}, {self.ch2})"


@dataclass(frozen=True)
class DPoint:
    """A point ``(x, y)`` of the stability plane stored as ``(x, ||D|| y)``."""

    x: Fraction
    yt: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", as_rational(self.x))
        object.__setattr__(self, "yt", as_rational(self.yt))

    @classmethod
    def of(cls, x: RationalLike | str, yt: RationalLike | str) -> DPoint:
        return cls(as_rational(x), as_rational(yt))


@dataclass(frozen=True)
class ScaledCharge:
    """``Z`` with its imaginary part multiplied by ``||D||``."""

    re: Fraction
    im_scaled: Fraction

    def is_zero(self) -> bool:
        return self.re == 0 and self.im_scaled == 0

    def __add__(self, other: ScaledCharge) -> ScaledCharge:
        return ScaledCharge(self.re + other.re, self.im_scaled + other.im_scaled)


@dataclass(frozen=True)
class BogomolovStatus:
    lattice_ok: bool
    h_ok: bool
    h_equality: bool


# -- standard classes --------------------------------------------------------

def structure_sheaf(surface: SurfaceData) -> ChernCharacter:
    return ChernCharacter(1, DivisorClass.zero(surface.lattice.rank), Fraction(0))


def line_bundle(L: DivisorClass, surface: SurfaceData) -> ChernCharacter:
    return ChernCharacter(1, L, Fraction(surface.self_int(L), 2))


def ideal(n: int, surface: SurfaceData) -> ChernCharacter:
    """Ideal sheaf of a length-n subscheme."""
    return ChernCharacter(1, DivisorClass.zero(surface.lattice.rank), Fraction(-n))


def ideal_twist(n: int, C: DivisorClass, surface: SurfaceData) -> ChernCharacter:
    """``I_Z(-C)`` with ``Z`` of length ``n``."""
    return ChernCharacter(1, -C, Fraction(surface.self_int(C), 2) - n)


def serre(surface: SurfaceData) -> ChernCharacter:
    """Class of the cone objects: ``[O] - [O(-D)]``."""
    return ChernCharacter(0, surface.polarization, Fraction(-surface.delta, 2))


def serre_line(surface: SurfaceData) -> ChernCharacter:
    return ChernCharacter(-1, 2 * surface.polarization, Fraction(-surface.delta))


def drinfeld_line(surface: SurfaceData) -> ChernCharacter:
    return ChernCharacter(-1, 2 * surface.polarization, Fraction(-surface.delta + 1))


_KINDS = {
    "structure_sheaf": lambda s: structure_sheaf(s),
    "line_bundle": lambda s, L: line_bundle(L, s),
    "ideal": lambda s, n: ideal(n, s),
    "ideal_twist": lambda s, n, C: ideal_twist(n, C, s),
    "serre": lambda s: serre(s),
    "serre_line": lambda s: serre_line(s),
    "drinfeld_line": lambda s: drinfeld_line(s),
}


def standard_class(kind: str, surface: SurfaceData, *params) -> ChernCharacter:
    try:
        build = _KINDS[kind]
    except KeyError:
        raise ChernError(f"unknown class kind {kind!r}; expected one of {sorted(_KINDS)}") from None
    return build(surface, *params)


# -- transforms --------------------------------------------------------------

def shift(ch: ChernCharacter) -> ChernCharacter:
    return -ch


def dual(ch: ChernCharacter) -> ChernCharacter:
    return ChernCharacter(ch.rank, -ch.c1, ch.ch2)


def twist(ch: ChernCharacter, L: DivisorClass, surface: SurfaceData) -> ChernCharacter:
    """Tensor with ``O(L)``."""
    return ChernCharacter(
        ch.rank,
        ch.c1 + ch.rank * L,
        ch.ch2 + surface.pair(ch.c1, L) + Fraction(ch.rank * surface.self_int(L), 2),
    )


def transform(ch: ChernCharacter, op: str, surface: SurfaceData | None = None,
              L: DivisorClass | None = None) -> ChernCharacter:
    if op == "shift":
        return shift(ch)
    if op == "dual":
        return dual(ch)
    if op == "twist":
        if surface is None or L is None:
            raise ChernError("twist needs a surface and a line bundle class")
        return twist(ch, L, surface)
    raise ChernError(f"unknown transform {op!r}")


# -- central charge ----------------------------------------------------------

def z_scaled(ch: ChernCharacter, at: DPoint, surface: SurfaceData) -> ScaledCharge:
    return ScaledCharge(
        -ch.ch2 + at.x * ch.rank,
        surface.degree(ch.c1) + at.yt * ch.rank,
    )


def indeterminate_point(ch: ChernCharacter, surface: SurfaceData) -> DPoint:
    """The unique point where the central charge of ``ch`` vanishes."""
    if ch.rank == 0:
        raise ChernError("rank-zero classes have no indeterminate point")
    return DPoint(ch.ch2 / ch.rank, Fraction(-surface.degree(ch.c1), ch.rank))


def bogomolov_status(ch: ChernCharacter, surface: SurfaceData) -> BogomolovStatus:
    rhs = 2 * ch.rank * ch.ch2
    deg = surface.degree(ch.c1)
    h_lhs = deg * deg
    h_rhs = rhs * surface.delta
    return BogomolovStatus(
        lattice_ok=surface.self_int(ch.c1) >= rhs,
        h_ok=h_lhs >= h_rhs,
        h_equality=h_lhs == h_rhs,
    )
