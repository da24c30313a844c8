"""Determinant (Bayer-Macri) class functionals and the divisor classes they single out.

For a family ``F_C`` over a curve ``C`` and a fiber class ``F_p`` the
functional is ``gamma(C) = -Im(Z(R pi_* F_C) / Z(F_p))``. Since
``Im Z`` carries a factor ``1 / ||D||`` in D-scaled coordinates, values are
stored multiplied by ``||D||`` which keeps them rational:

    value_scaled = -(Im_s(Z1) Re(Z2) - Re(Z1) Im_s(Z2)) / (Re(Z2)^2 + Im_s(Z2)^2 / D^2)

All values at one point share this normalization, so signs and ratios
are exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .chern import ChernCharacter, DPoint, drinfeld_line, ideal, serre, serre_line, z_scaled
from .errors import ChernError, WallError
from .exactnum import QuadExpr, RationalLike, as_rational
from .lattice import DivisorClass, SurfaceData, genus_term
from .wallgeom import SERRE_SLOPE, Wall


class Family(str, Enum):
    SERRE_LINE = "serre_line"
    DRINFELD_EXC_LINE = "drinfeld_exc_line"
    HILB_CURVE = "hilb_curve"
    HILB_CURVE_THROUGH_POINT = "hilb_curve_through_point"


@dataclass(frozen=True)
class GammaValue:
    value_scaled: Fraction
    at: DPoint
    family_id: Family | None = None


def gamma_raw(family_ch: ChernCharacter, fiber_ch: ChernCharacter, at: DPoint,
              surface: SurfaceData, family_id: Family | None = None) -> GammaValue:
    z1 = z_scaled(family_ch, at, surface)
    z2 = z_scaled(fiber_ch, at, surface)
    if z2.is_zero():
        raise ChernError("fiber charge vanishes at this point")
    norm = z2.re * z2.re + z2.im_scaled * z2.im_scaled / surface.delta
    value = -(z1.im_scaled * z2.re - z1.re * z2.im_scaled) / norm
    return GammaValue(value, at, family_id)


def pushforward_ch_hilb(C: DivisorClass, n: int, through_point: bool, surface: SurfaceData) -> ChernCharacter:
    """Chern character of the pushforward of the family of ideals ``I_{Z0 + p}``, ``p`` moving on C.

    Plain: ``(1-g) ch(I_Z0) - ch(O_C)``. The through-point variant adds
    1/2 to ``ch2`` so its gamma drops by exactly one prefactor unit.
    """
    if n < 1:
        raise ValueError("n must be positive")
    one_g = genus_term(C, surface.lattice)
    if one_g.denominator != 1:
        # C.(C + K) is even whenever K is characteristic, as on any surface
        raise ChernError(f"adjunction gives a non-integral genus for {C}")
    base = ideal(n, surface).scale(one_g.numerator)
    extra = Fraction(1, 2) if through_point else Fraction(0)
    curve = ChernCharacter(0, -C, Fraction(surface.self_int(C), 2) + one_g + extra)
    return base + curve


def hilb_prefactor(n: int, s: Fraction, x: Fraction, surface: SurfaceData) -> Fraction:
    delta = surface.delta
    return s * delta / (2 * (n + x) * (delta + s * s))


def gamma_hilb_closed(C: DivisorClass, n: int, s: RationalLike, x: RationalLike,
                      surface: SurfaceData, through_point: bool = False) -> GammaValue:
    """Closed form on the wall of slope s through ``(-n, 0)``, evaluated at abscissa x."""
    s, x = as_rational(s), as_rational(x)
    if s <= 0:
        raise WallError("slope must be positive")
    if x <= -n:
        raise WallError("evaluation point must lie right of the wall's anchor")
    bracket = surface.pair(C, surface.canonical) + Fraction(2 * surface.degree(C)) / s
    if through_point:
        bracket -= 1
    at = DPoint(x, s * (x + n))
    fam = Family.HILB_CURVE_THROUGH_POINT if through_point else Family.HILB_CURVE
    return GammaValue(hilb_prefactor(n, s, x, surface) * bracket, at, fam)


def gamma_hilb_raw(C: DivisorClass, n: int, s: RationalLike, x: RationalLike,
                   surface: SurfaceData, through_point: bool = False) -> GammaValue:
    """The same quantity straight from the definition."""
    s, x = as_rational(s), as_rational(x)
    at = DPoint(x, s * (x + n))
    fam = Family.HILB_CURVE_THROUGH_POINT if through_point else Family.HILB_CURVE
    return gamma_raw(pushforward_ch_hilb(C, n, through_point, surface), ideal(n, surface), at, surface, fam)


# -- blow-up of |K_S + D|^dual along S -------------------------------------------

@dataclass(frozen=True)
class BlowupClass:
    h_coeff: Fraction
    e_coeff: Fraction

    def __str__(self) -> str:
        return f"{self.h_coeff}H + {self.e_coeff}E"


def serre_wall(a: RationalLike) -> Wall:
    return Wall(as_rational(a), SERRE_SLOPE)


def chord_midpoint(a: RationalLike, surface: SurfaceData) -> DPoint:
    """Midpoint of the chord of W(a) inside the parabola (the chord may be empty)."""
    a = as_rational(a)
    yt = Fraction(surface.delta, 2)
    return DPoint(a + yt / 2, yt)


def blowup_gammas(a: RationalLike, surface: SurfaceData, at: DPoint | None = None) -> tuple[GammaValue, GammaValue]:
    """Gamma on a line off S and on a line in an exceptional fiber, at a point of W(a)."""
    a = as_rational(a)
    if at is None:
        at = chord_midpoint(a, surface)
    elif not serre_wall(a).contains(at):
        raise WallError("evaluation point is not on W(a)")
    fiber = serre(surface)
    g_line = gamma_raw(serre_line(surface), fiber, at, surface, Family.SERRE_LINE)
    g_exc = gamma_raw(drinfeld_line(surface), fiber, at, surface, Family.DRINFELD_EXC_LINE)
    return g_line, g_exc


def blowup_class_on_wall(a: RationalLike, surface: SurfaceData) -> BlowupClass:
    """Class ``hH + eE`` whose degrees match gamma along W(a).

    The degree on a line off S is h; on a line in an exceptional fiber it is
    ``-e`` since ``E`` has degree ``-1`` there.
    """
    a = as_rational(a)
    if a >= 0:
        raise WallError("W(a) needs a < 0")
    g_line, g_exc = blowup_gammas(a, surface)
    h, e = g_line.value_scaled, -g_exc.value_scaled
    if e < 0:
        return BlowupClass(h / -e, Fraction(-1))
    if e == 0:
        return BlowupClass(Fraction(1), Fraction(0))
    return BlowupClass(Fraction(1), e / h)


# -- Hilbert scheme of points --------------------------------------------------------------

@dataclass(frozen=True)
class HilbClass:
    """``(K_S + c D)^[n] + e E`` with ``c = 2/s``; ``symm_coords`` is None when c is irrational."""

    k_coeff: Fraction
    d_coeff: QuadExpr
    e_coeff: Fraction
    symm_coords: tuple[Fraction, ...] | None

    def symm_part(self) -> DivisorClass:
        if self.symm_coords is None or any(c.denominator != 1 for c in self.symm_coords):
            raise ValueError("symmetrized part is not an integral class")
        return DivisorClass(tuple(int(c) for c in self.symm_coords))


def _symm_coords(c: Fraction, surface: SurfaceData) -> tuple[Fraction, ...]:
    return tuple(Fraction(k) + c * d for k, d in zip(surface.canonical.coords, surface.polarization.coords))


def _through_point_drop(s: Fraction, surface: SurfaceData) -> Fraction:
    C, n, x = surface.polarization, 1, Fraction(0)
    plain = gamma_hilb_raw(C, n, s, x, surface).value_scaled
    through = gamma_hilb_raw(C, n, s, x, surface, through_point=True).value_scaled
    return (through - plain) / hilb_prefactor(n, s, x, surface)


def hilb_class_on_wall(s: RationalLike, surface: SurfaceData) -> HilbClass:
    s = as_rational(s)
    if s <= 0:
        raise WallError("slope must be positive")
    c = 2 / s
    return HilbClass(Fraction(1), QuadExpr(c), _through_point_drop(s, surface), _symm_coords(c, surface))


def hilb_class_from_slope_sq(s_sq: RationalLike, surface: SurfaceData) -> HilbClass:
    """Variant for walls known through their squared slope, e.g. tangents.

    ``2/s = 2 sqrt(q p) / p`` for ``s^2 = p/q``.
    """
    s_sq = as_rational(s_sq)
    if s_sq <= 0:
        raise WallError("squared slope must be positive")
    p, q = s_sq.numerator, s_sq.denominator
    coeff = QuadExpr(0, Fraction(2, p), p * q)
    if coeff.is_rational:
        return hilb_class_on_wall(2 / coeff.p, surface)
    # the through-point drop is one unit at every slope; evaluate it at a rational one
    return HilbClass(Fraction(1), coeff, _through_point_drop(Fraction(1), surface), None)
