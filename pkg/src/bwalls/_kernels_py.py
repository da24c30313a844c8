"""Pure-Python enumeration kernel; the reference the compiled kernel must match.

The search visits integer vectors ``x`` inside a positive-definite
ellipsoid ``x^T M x <= B`` coordinate by coordinate. Level ``k`` uses the
integer-scaled Schur complement ``T_k`` of ``M`` onto the first ``k+1``
coordinates, so each coordinate range is an exact integer interval:
``(a*x + b)^2 <= b^2 - a*(c - B_k)``.
"""
from __future__ import annotations

from math import isqrt


def _ceil_div(num: int, den: int) -> int:
    return -((-num) // den)


def enumerate_ellipsoid(
    tmats: list[list[list[int]]],
    bounds: list[int],
    gram: list[list[int]],
    gd: list[int],
    dmin: int,
    dmax: int,
    smin: int,
    smax: int,
    max_count: int,
) -> list[tuple[int, ...]]:
    rho = len(gd)
    x = [0] * rho
    out: list[tuple[int, ...]] = []

    def emit() -> bool:
        deg = 0
        for i in range(rho):
            deg += gd[i] * x[i]
        if deg < dmin or deg > dmax:
            return True
        self_int = 0
        for i in range(rho):
            row = gram[i]
            acc = 0
            for j in range(rho):
                acc += row[j] * x[j]
            self_int += acc * x[i]
        if self_int < smin or self_int > smax:
            return True
        out.append(tuple(x))
        return len(out) <= max_count

    def level(k: int) -> bool:
        t = tmats[k]
        a = t[k][k]
        b = 0
        for j in range(k):
            b += t[k][j] * x[j]
        c = 0
        for i in range(k):
            row = t[i]
            acc = 0
            for j in range(k):
                acc += row[j] * x[j]
            c += acc * x[i]
        disc = b * b - a * (c - bounds[k])
        if disc < 0:
            return True
        r = isqrt(disc)
        lo = _ceil_div(-b - r, a)
        hi = (-b + r) // a
        for v in range(lo, hi + 1):
            x[k] = v
            if k + 1 == rho:
                if not emit():
                    return False
            elif not level(k + 1):
                return False
        x[k] = 0
        return True

    level(0)
    return out
