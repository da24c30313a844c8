"""Walls in the D-scaled half-plane: construction, parabola intersections, tangents, regions.

A wall is the line ``yt = s (x - a)`` where ``a`` is its x-intercept and
``s`` its slope in D-scaled units; the slope in y-units is ``s / ||D||``.
Serre-family walls all have ``s = 2``.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .chern import ChernCharacter, DPoint, indeterminate_point
from .errors import NoChamberCrossing, WallError
from .exactnum import RationalLike, RootSummary, as_rational, cmp_sqrt_scaled
from .lattice import SurfaceData

SERRE_SLOPE = Fraction(2)


@dataclass(frozen=True)
class Wall:
    anchor: Fraction
    slope: Fraction
    total_class: ChernCharacter | None = None
    witness: ChernCharacter | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "anchor", as_rational(self.anchor))
        object.__setattr__(self, "slope", as_rational(self.slope))
        if self.slope <= 0:
            raise WallError(f"wall slope must be positive, got {self.slope}")

    def contains(self, p: DPoint) -> bool:
        return p.yt == self.slope * (p.x - self.anchor)

    def yt_at(self, x: RationalLike) -> Fraction:
        return self.slope * (as_rational(x) - self.anchor)

    def point_at(self, x: RationalLike) -> DPoint:
        x = as_rational(x)
        return DPoint(x, self.yt_at(x))

    def slope_sq_y(self, surface: SurfaceData) -> Fraction:
        """Square of the slope in y-units, ``s^2 / D^2``."""
        return self.slope * self.slope / surface.delta

    def check_witness(self, surface: SurfaceData) -> None:
        if self.witness is not None and self.witness.rank != 0:
            if not self.contains(indeterminate_point(self.witness, surface)):
                raise WallError("witness indeterminate point is not on the wall")


def wall_through(p1: DPoint, p2: DPoint, total: ChernCharacter | None = None,
                 witness: ChernCharacter | None = None,
                 surface: SurfaceData | None = None) -> Wall:
    """The line through two points, as a wall."""
    if p1 == p2:
        raise WallError("a wall needs two distinct points")
    if p1.x == p2.x:
        raise WallError("points span a vertical line")
    s = (p2.yt - p1.yt) / (p2.x - p1.x)
    if s <= 0:
        raise WallError(f"line has nonpositive slope {s}; not a wall in the stability half-plane")
    w = Wall(p1.x - p1.yt / s, s, total, witness)
    if surface is not None:
        w.check_witness(surface)
    return w


def serre_wall_from_witness(witness: ChernCharacter, surface: SurfaceData,
                            total: ChernCharacter | None = None) -> Wall:
    """The slope-2 wall through the indeterminate point of ``witness``."""
    if witness.rank == 0:
        raise WallError("rank-zero witness has no indeterminate point")
    p = indeterminate_point(witness, surface)
    return Wall(p.x - p.yt / SERRE_SLOPE, SERRE_SLOPE, total, witness)


def parabola_discriminant(anchor: RationalLike, slope_sq: RationalLike, surface: SurfaceData) -> Fraction:
    """Discriminant (yt-units) of a wall meeting the parabola, from its squared slope.

    Works for irrational slopes such as tangents: ``4 D^4 / s^2 + 8 D^2 a``.
    """
    a, s2 = as_rational(anchor), as_rational(slope_sq)
    if s2 <= 0:
        raise WallError("squared slope must be positive")
    delta = surface.delta
    return 4 * delta * delta / s2 + 8 * delta * a


def parabola_roots(w: Wall, surface: SurfaceData, *, require_crossing: bool = False) -> RootSummary:
    """Roots (in yt) of ``yt^2 - (2 D^2 / s) yt - 2 D^2 a = 0``, the wall meeting the parabola.

    With ``require_crossing`` a wall that is tangent to or misses the open
    region raises NoChamberCrossing.
    """
    delta = surface.delta
    total = 2 * delta / w.slope
    product = -2 * delta * w.anchor
    summary = RootSummary(total, product, total * total - 4 * product)
    if require_crossing and summary.discriminant <= 0:
        kind = "tangent" if summary.discriminant == 0 else "misses the parabola"
        raise NoChamberCrossing(f"wall {kind}: no chamber crossing")
    return summary


class Crossing(str, Enum):
    CROSSING = "crossing"
    TANGENT = "tangent"
    MISS = "miss"


def crossing_kind(summary: RootSummary) -> Crossing:
    if summary.discriminant > 0:
        return Crossing.CROSSING
    if summary.discriminant == 0:
        return Crossing.TANGENT
    return Crossing.MISS


@dataclass(frozen=True)
class YRootSummary:
    """Root data in y-units; the sum is generally irrational so its square is kept."""

    sum_sq: Fraction
    product: Fraction
    discriminant: Fraction


def to_y_units(summary: RootSummary, surface: SurfaceData) -> YRootSummary:
    delta = surface.delta
    return YRootSummary(summary.sum * summary.sum / delta, summary.product / delta,
                        summary.discriminant / delta)


def height_sq(w: Wall, surface: SurfaceData) -> Fraction:
    """Squared y-extent of the chord cut out by the parabola."""
    return parabola_roots(w, surface).discriminant / surface.delta


def height_leq(w: Wall, bound_num: RationalLike, bound_radicand: RationalLike,
               surface: SurfaceData) -> bool:
    """Whether the chord height (y-units) is at most ``bound_num * sqrt(bound_radicand)``."""
    h2 = height_sq(w, surface)
    if h2 < 0:
        raise WallError("wall does not meet the parabola")
    return cmp_sqrt_scaled(1, h2, bound_num, bound_radicand) <= 0


@dataclass(frozen=True)
class TangentData:
    base: DPoint
    tangency_x: Fraction
    slope_sq_D: Fraction

    @property
    def tangency_yt_sq(self) -> Fraction:
        return self.slope_sq_D * (self.tangency_x - self.base.x) ** 2


def tangent_from(n: RationalLike, surface: SurfaceData) -> TangentData:
    """Tangent to the parabola from ``(-n, 0)``: touches at ``x = n``, slope^2 = D^2 / 2n."""
    n = as_rational(n)
    if n <= 0:
        raise WallError("tangent base must lie left of the origin (n > 0)")
    return TangentData(DPoint(-n, Fraction(0)), n, Fraction(surface.delta) / (2 * n))


def between_base_and_parabola(p: DPoint, n: RationalLike, surface: SurfaceData,
                              strict: bool = True) -> bool:
    """Whether ``p`` lies in the region cut out by the x-axis, the tangent from ``(-n, 0)`` and the parabola.

    The region is bounded on the right by the tangency abscissa ``x = n``;
    past it the tangent line sits outside the parabola again.
    """
    n = as_rational(n)
    delta = surface.delta
    x, yt = p.x, p.yt
    on_floor = yt * yt - 2 * delta * x
    tangent = delta * (x + n) ** 2 - 2 * n * yt * yt
    if strict:
        return yt > 0 and on_floor > 0 and tangent > 0 and -n < x < n
    return yt >= 0 and on_floor >= 0 and tangent >= 0 and -n <= x <= n


def destabilizes_point_ideal(c2: int, cd: int, surface: SurfaceData) -> bool:
    """Whether ``O(-C)`` with the given ``C^2`` and ``C.D`` destabilizes a point ideal."""
    if cd <= 0:
        raise WallError("C.D must be positive")
    delta = surface.delta
    if c2 == -1:
        return delta > 8 * cd * cd
    if c2 == 0:
        return delta > 2 * cd * cd
    if c2 == 1:
        # points on the parabola still count here
        return cd * cd >= delta and 9 * delta > 8 * cd * cd
    return between_base_and_parabola(DPoint(Fraction(c2, 2), Fraction(cd)), 1, surface, strict=True)
