"""SVG wall diagrams in the D-scaled half-plane.

Geometry is exact up to the final conversion to canvas coordinates, which
uses decimal arithmetic and prints ``DISPLAY_DIGITS`` significant digits.
Nothing computed here feeds back into any verdict.
"""
from __future__ import annotations

from dataclasses import dataclass
from decimal import Context, Decimal
from fractions import Fraction
from math import isqrt
from xml.sax.saxutils import escape

from .chern import ChernCharacter, DPoint, indeterminate_point
from .errors import ChernError, InputError
from .exactnum import parse_rational
from .lattice import DivisorClass, SurfaceData

DISPLAY_DIGITS = 12
WIDTH, HEIGHT, MARGIN = 640, 440, 40
SAMPLES = 64
COLORS = ("#c0392b", "#2471a3", "#1e8449", "#7d3c98", "#b9770e", "#17202a")


@dataclass(frozen=True)
class WallItem:
    anchor: Fraction
    slope: Fraction


@dataclass(frozen=True)
class PointItem:
    at: DPoint
    label: str


@dataclass(frozen=True)
class TangentItem:
    n: int


@dataclass(frozen=True)
class RegionItem:
    n: int


PlotItem = WallItem | PointItem | TangentItem | RegionItem


def _coords(text: str) -> DivisorClass:
    try:
        return DivisorClass(tuple(int(v) for v in text.split(",")))
    except ValueError:
        raise InputError(f"bad class coordinates {text!r}") from None


def parse_item(text: str, surface: SurfaceData) -> PlotItem:
    """Parse ``wall:A:S``, ``point:X:Y[:label]``, ``ch:R:C1:CH2[:label]``, ``tangent:N`` or ``region:N``.

    Point ordinates are D-scaled; ``C1`` is a comma-separated class.
    """
    kind, *parts = text.split(":")
    try:
        if kind == "wall" and len(parts) == 2:
            return WallItem(parse_rational(parts[0]), parse_rational(parts[1]))
        if kind == "point" and len(parts) in (2, 3):
            label = parts[2] if len(parts) == 3 else ""
            return PointItem(DPoint(parse_rational(parts[0]), parse_rational(parts[1])), label)
        if kind == "ch" and len(parts) in (3, 4):
            c1 = _coords(parts[1])
            if len(c1) != surface.lattice.rank:
                raise InputError("class has the wrong length")
            ch = ChernCharacter(int(parts[0]), c1, parse_rational(parts[2]))
            label = parts[3] if len(parts) == 4 else f"I{ch}"
            return PointItem(indeterminate_point(ch, surface), label)
        if kind in ("tangent", "region") and len(parts) == 1:
            n = int(parts[0])
            if n < 1:
                raise InputError(f"{kind} needs a positive integer")
            return TangentItem(n) if kind == "tangent" else RegionItem(n)
    except (ValueError, ZeroDivisionError, ChernError) as exc:
        raise InputError(f"bad plot item {text!r}: {exc}") from exc
    raise InputError(f"bad plot item {text!r}")


def figure_items(figure: int, surface: SurfaceData) -> list[PlotItem]:
    """Items reproducing the two standard pictures.

    1: a wall through I(F) for F = (2, -2D, D^2) and I(O(-2D)), with a
       stability condition on it.
    2: the base point (-1, 0), its tangent and the shaded region for rank-one
       destabilizers of a point ideal.
    """
    delta = surface.delta
    if figure == 1:
        return [
            WallItem(Fraction(-delta), Fraction(2, 3)),
            PointItem(DPoint(Fraction(delta, 2), Fraction(delta)), "I(F)"),
            PointItem(DPoint(Fraction(2 * delta), Fraction(2 * delta)), "I(E)"),
            PointItem(DPoint(Fraction(delta), Fraction(4 * delta, 3)), "(x,y)"),
        ]
    if figure == 2:
        return [RegionItem(1), TangentItem(1), PointItem(DPoint(-1, 0), "(-1,0)")]
    raise InputError("figure must be 1 or 2")


class _Canvas:
    def __init__(self, xmin: Fraction, xmax: Fraction, ymin: Fraction, ymax: Fraction):
        self.xmin, self.xmax, self.ymin, self.ymax = xmin, xmax, ymin, ymax
        self.ctx = Context(prec=40)

    def dec(self, v) -> Decimal:
        if isinstance(v, Decimal):
            return v
        v = Fraction(v)
        return self.ctx.divide(Decimal(v.numerator), Decimal(v.denominator))

    def map(self, x, y) -> tuple[str, str]:
        c = self.ctx
        x, y = self.dec(x), self.dec(y)
        w = self.dec(self.xmax - self.xmin)
        h = self.dec(self.ymax - self.ymin)
        px = MARGIN + c.divide(c.multiply(x - self.dec(self.xmin), WIDTH - 2 * MARGIN), w)
        py = HEIGHT - MARGIN - c.divide(c.multiply(y - self.dec(self.ymin), HEIGHT - 2 * MARGIN), h)
        return render_number(px), render_number(py)

    def pts(self, points) -> str:
        return " ".join(",".join(self.map(x, y)) for x, y in points)


def render_number(d: Decimal) -> str:
    d = Context(prec=DISPLAY_DIGITS).create_decimal(d).normalize()
    if d.is_zero():
        return "0"
    return format(d, "f")


def _sqrt(ctx: Context, v) -> Decimal:
    v = Fraction(v)
    return ctx.sqrt(ctx.divide(Decimal(v.numerator), Decimal(v.denominator)))


def _bounds(surface: SurfaceData, items: list[PlotItem]) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    delta = surface.delta
    xs = [Fraction(-1), Fraction(0)]
    ys = [Fraction(delta)]
    for it in items:
        if isinstance(it, PointItem):
            xs.append(it.at.x)
            ys.append(it.at.yt)
        elif isinstance(it, WallItem):
            xs.append(it.anchor)
        elif isinstance(it, (TangentItem, RegionItem)):
            xs += [Fraction(-it.n), Fraction(it.n)]
            ys.append(Fraction(isqrt(2 * delta * it.n) + 1))
    ymax = max(ys)
    xmin = min(xs)
    xmax = max(max(xs), ymax * ymax / (2 * delta))
    pad = (xmax - xmin) / 12
    return xmin - pad, xmax + pad, -ymax / 20, ymax * Fraction(23, 20)


def _line_segment(cv: _Canvas, anchor, slope) -> list[tuple]:
    """Visible part of ``yt = slope (x - anchor)`` for ``yt >= 0``; slope may be a Decimal."""
    c = cv.ctx
    a, s = cv.dec(anchor), cv.dec(slope)
    x0 = max(a, cv.dec(cv.xmin))
    x1 = min(a + c.divide(cv.dec(cv.ymax), s), cv.dec(cv.xmax))
    if x1 <= x0:
        return []
    return [(x0, c.multiply(s, x0 - a)), (x1, c.multiply(s, x1 - a))]


def _parabola(surface: SurfaceData, cv: _Canvas, ytop: Fraction) -> list[tuple[Fraction, Fraction]]:
    delta = surface.delta
    out = []
    for j in range(SAMPLES + 1):
        yt = ytop * j / SAMPLES
        x = yt * yt / (2 * delta)
        if x > cv.xmax:
            break
        out.append((x, yt))
    return out


def render_svg(surface: SurfaceData, items: list[PlotItem], title: str = "") -> str:
    delta = surface.delta
    xmin, xmax, ymin, ymax = _bounds(surface, items)
    cv = _Canvas(xmin, xmax, ymin, ymax)
    body: list[str] = []
    legend: list[tuple[str, str]] = []

    for it in items:
        if isinstance(it, RegionItem):
            n = it.n
            yt_tan = _sqrt(cv.ctx, 2 * delta * n)
            # floor, then the parabola up to the tangency point, then down the tangent
            pts = [(Fraction(-n), Fraction(0)), (Fraction(0), Fraction(0))]
            step = Fraction(isqrt(2 * delta * n), SAMPLES)
            pts += [(step * j * step * j / (2 * delta), step * j) for j in range(1, SAMPLES + 1)]
            pts.append((Fraction(n), yt_tan))
            body.append(f'<polygon points="{cv.pts(pts)}" fill="#aab7b8" fill-opacity="0.45" stroke="none"/>')
            legend.append(("#aab7b8", f"region n={n}"))

    parabola = _parabola(surface, cv, ymax)
    body.append(f'<polyline points="{cv.pts(parabola)}" fill="none" stroke="#17202a" stroke-width="2"/>')
    legend.append(("#17202a", f"yt^2 = 2*{delta}*x"))

    color_idx = 0
    for it in items:
        if isinstance(it, (WallItem, TangentItem)):
            color = COLORS[color_idx % len(COLORS)]
            color_idx += 1
            if isinstance(it, WallItem):
                seg = _line_segment(cv, it.anchor, it.slope)
                name = f"wall a={it.anchor} s={it.slope}"
            else:
                slope = _sqrt(cv.ctx, Fraction(delta, 2 * it.n))
                seg = _line_segment(cv, -it.n, slope)
                name = f"tangent from ({-it.n},0)"
            if seg:
                body.append(f'<polyline points="{cv.pts(seg)}" fill="none" stroke="{color}" stroke-width="1.5"/>')
            legend.append((color, name))

    for it in items:
        if isinstance(it, PointItem):
            px, py = cv.map(it.at.x, it.at.yt)
            body.append(f'<circle cx="{px}" cy="{py}" r="3" fill="#17202a"/>')
            if it.label:
                body.append(f'<text x="{px}" y="{py}" dx="5" dy="-5" font-size="12">{escape(it.label)}</text>')

    ax0, ay0 = cv.map(xmin, 0)
    ax1, ay1 = cv.map(xmax, 0)
    axes = [f'<line x1="{ax0}" y1="{ay0}" x2="{ax1}" y2="{ay1}" stroke="#566573" stroke-width="1"/>']
    vx0, vy0 = cv.map(0, ymin)
    vx1, vy1 = cv.map(0, ymax)
    axes.append(f'<line x1="{vx0}" y1="{vy0}" x2="{vx1}" y2="{vy1}" stroke="#566573" stroke-width="1"/>')

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    if title:
        lines.append(f'<title>{escape(title)}</title>')
    lines += axes + body
    for i, (color, name) in enumerate(legend):
        y = MARGIN + 16 * i
        lines.append(f'<rect x="{MARGIN + 4}" y="{y - 9}" width="10" height="10" fill="{color}"/>')
        lines.append(f'<text x="{MARGIN + 20}" y="{y}" font-size="11">{escape(name)}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
