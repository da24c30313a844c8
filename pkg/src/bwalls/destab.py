"""Destabilizer searches and slope bounds for ideal sheaves and the Serre walls W(a)."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import isqrt

from .chern import DPoint, ideal, line_bundle
from .errors import WallError
from .exactnum import RationalLike, as_rational
from .lattice import DivisorClass, SurfaceData, enumerate_classes
from .wallgeom import TangentData, Wall, between_base_and_parabola, tangent_from


def ceil_sqrt(v: int) -> int:
    r = isqrt(v)
    return r if r * r == v else r + 1


def rank_slope_floor_sq(r: int, n: int) -> Fraction:
    """Squared lower bound (y-units) on the slope of a wall for ``I_Z`` witnessed in rank ``r``.

    ``m^2 >= 2 r (r - 1) / (n (2r - 1)^2)``; the root pair ``y1 y2 = 2n``,
    ``y1 + y2 = 2/m`` with ratio at most ``r/(r-1)``.
    """
    if r < 2:
        raise ValueError("rank must be at least 2")
    if n < 1:
        raise ValueError("n must be positive")
    return Fraction(2 * r * (r - 1), n * (2 * r - 1) ** 2)


def rank_one_wall(C: DivisorClass, n: int, surface: SurfaceData, strict: bool = True) -> Wall | None:
    """Wall for ``I_Z`` (length n) witnessed by ``O(-C)``, or None if ``I(O(-C))`` is outside the region."""
    c2 = surface.self_int(C)
    cd = surface.degree(C)
    p = DPoint(Fraction(c2, 2), Fraction(cd))
    if not between_base_and_parabola(p, n, surface, strict=strict):
        return None
    if c2 + 2 * n == 0:
        raise WallError("vertical wall")
    s = Fraction(2 * cd, c2 + 2 * n)
    return Wall(Fraction(-n), s, ideal(n, surface), line_bundle(-C, surface))


class FirstWallVerdict(str, Enum):
    RANK_ONE_FIRST = "rank_one_first"
    HIGHER_RANK_POSSIBLE = "higher_rank_possible"
    NO_WALL_FOUND = "no_wall_found_in_region"


@dataclass(frozen=True)
class FirstWallReport:
    """Slopes here are squared and in y-units."""

    n: int
    rank_one_walls: tuple[tuple[Wall, DivisorClass], ...]
    higher_rank_floor_sq: Fraction
    upper_bound_sq: Fraction
    verdict: FirstWallVerdict
    tangent: TangentData
    cd_cap: int
    candidates: tuple[DivisorClass, ...] = field(default=())


def first_wall_search(n: int, surface: SurfaceData, *, backend: str = "auto") -> FirstWallReport:
    if n < 1:
        raise ValueError("n must be positive")
    delta = surface.delta
    cap = ceil_sqrt(2 * n * delta)
    candidates = enumerate_classes(surface, 1, cap, -2 * n + 1, 2 * n - 1, backend=backend)
    hits = []
    for C in candidates:
        w = rank_one_wall(C, n, surface)
        if w is not None:
            hits.append((w, C))
    hits.sort(key=lambda wc: (-wc[0].slope, wc[1].coords))
    floor = rank_slope_floor_sq(2, n)
    upper = Fraction(1, 2 * n)
    if not candidates:
        verdict = FirstWallVerdict.NO_WALL_FOUND
    elif hits and hits[0][0].slope_sq_y(surface) > floor:
        verdict = FirstWallVerdict.RANK_ONE_FIRST
    else:
        verdict = FirstWallVerdict.HIGHER_RANK_POSSIBLE
    return FirstWallReport(
        n=n,
        rank_one_walls=tuple(hits),
        higher_rank_floor_sq=floor,
        upper_bound_sq=upper,
        verdict=verdict,
        tangent=tangent_from(n, surface),
        cd_cap=cap,
        candidates=tuple(candidates),
    )


@dataclass(frozen=True)
class HigherRankReport:
    anchor: Fraction
    per_rank: tuple[tuple[int, Fraction, bool], ...]  # (r, threshold on D^2, excluded)
    segment_threshold: Fraction
    segment_ok: bool

    _extra_report_fields = ("all_excluded",)

    @property
    def all_excluded(self) -> bool:
        return all(ok for _, _, ok in self.per_rank)


def higher_rank_threshold(a: RationalLike, r: int) -> Fraction:
    """``(-8a) r^2 / (r^2 - 1)``: rank-r witnesses on W(a) need D^2 at most this."""
    a = as_rational(a)
    return -8 * a * Fraction(r * r, r * r - 1)


def segment_threshold(a: RationalLike) -> Fraction:
    """W(a) passes below the segment from (1/2, 1) to (2, 2) iff D^2 > (1 - 2a)^2."""
    a = as_rational(a)
    return (1 - 2 * a) ** 2


def higher_rank_excluded_on_Wa(a: RationalLike, surface: SurfaceData, r_max: int = 2) -> HigherRankReport:
    a = as_rational(a)
    if a >= 0:
        raise WallError("W(a) needs a < 0")
    delta = surface.delta
    per_rank = tuple(
        (r, higher_rank_threshold(a, r), delta > higher_rank_threshold(a, r))
        for r in range(2, r_max + 1)
    )
    seg = segment_threshold(a)
    return HigherRankReport(a, per_rank, seg, delta > seg)


@dataclass(frozen=True)
class RankOneReport:
    anchor: Fraction
    candidates: tuple[DivisorClass, ...]
    violators: tuple[DivisorClass, ...]

    _extra_report_fields = ("ok",)

    @property
    def ok(self) -> bool:
        return not self.violators


def rank_one_excluded_on_Wa(a: RationalLike, surface: SurfaceData, *, backend: str = "auto") -> RankOneReport:
    """Classes with C^2 in {-1, 0} that destabilize a point ideal but fail ``C.D >= -a (C^2 + 2)``."""
    a = as_rational(a)
    if a >= 0:
        raise WallError("W(a) needs a < 0")
    cap = ceil_sqrt(2 * surface.delta)
    found = []
    violators = []
    for C in enumerate_classes(surface, 1, cap, -1, 0, backend=backend):
        c2, cd = surface.self_int(C), surface.degree(C)
        if not between_base_and_parabola(DPoint(Fraction(c2, 2), Fraction(cd)), 1, surface):
            continue
        found.append(C)
        if cd < -a * (c2 + 2):
            violators.append(C)
    return RankOneReport(a, tuple(found), tuple(violators))
