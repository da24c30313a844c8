from __future__ import annotations

import itertools
import random
from fractions import Fraction
from math import isqrt

import pytest
import sympy
from hypothesis import settings

from bwalls.lattice import DivisorClass, PicardLattice, SurfaceData
from bwalls.presets import preset

settings.register_profile("bwalls", deadline=None, max_examples=60)
settings.load_profile("bwalls")


def surface(gram, canonical, polarization, hints=()) -> SurfaceData:
    lat = PicardLattice(tuple(tuple(r) for r in gram), DivisorClass(tuple(canonical)))
    return SurfaceData(lat, DivisorClass(tuple(polarization)),
                       tuple((DivisorClass(tuple(c)), e) for c, e in hints))


def p2(d: int = 1) -> SurfaceData:
    return preset("P2", [d])


def blowup(coords, k: int | None = None) -> SurfaceData:
    k = len(coords) - 1 if k is None else k
    return preset(f"BlowupP2_{k}", list(coords))


def box_radius(surf: SurfaceData, deg_max: int, selfint_min: int) -> int:
    """Coordinate bound for the region, computed with sympy as an independent route.

    Classes with |C.D| <= T and C^2 >= s satisfy c^T M c <= 2T^2 - D^2 s for the
    positive definite ``M = 2 (G d)(G d)^T - D^2 G``, hence |c_i|^2 <= bound * (M^-1)_ii.
    """
    G = sympy.Matrix(surf.lattice.gram)
    d = sympy.Matrix(surf.polarization.coords)
    gd = G * d
    M = 2 * gd * gd.T - surf.delta * G
    bound = 2 * deg_max * deg_max - surf.delta * selfint_min
    if bound < 0:
        return 0
    inv = M.inv()
    return max(isqrt(int(sympy.floor(bound * inv[i, i]))) + 1 for i in range(M.rows))


def brute_classes(surf: SurfaceData, deg_min, deg_max, smin, smax) -> list[DivisorClass]:
    """Plain box scan; the oracle for enumeration."""
    if deg_min > deg_max or smin > smax:
        return []
    t = max(abs(deg_min), abs(deg_max))
    r = box_radius(surf, t, smin)
    out = []
    for coords in itertools.product(range(-r, r + 1), repeat=surf.lattice.rank):
        c = DivisorClass(coords)
        if deg_min <= surf.degree(c) <= deg_max and smin <= surf.self_int(c) <= smax:
            out.append(c)
    return sorted(out)


def random_hyperbolic_rank2(rng: random.Random) -> SurfaceData:
    """A random integral form of signature (1,1) with a polarization of positive square."""
    while True:
        a, b, c = rng.randint(-4, 4), rng.randint(-4, 4), rng.randint(-4, 4)
        if a * c - b * b >= 0:
            continue
        gram = [[a, b], [b, c]]
        # K characteristic: K.x = x.x mod 2 on the basis
        k = [a % 2 + 2 * rng.randint(-2, 1), c % 2 + 2 * rng.randint(-2, 1)]
        for _ in range(50):
            d = [rng.randint(-5, 5), rng.randint(-5, 5)]
            if a * d[0] ** 2 + 2 * b * d[0] * d[1] + c * d[1] ** 2 > 0:
                return surface(gram, _characteristic(gram, k), d)


def _characteristic(gram, k):
    # adjust parity so that K.e_i = e_i.e_i mod 2; with a symmetric gram this
    # just solves a 2x2 system mod 2, so brute force the four parities
    for p in itertools.product((0, 1), repeat=2):
        cand = [k[0] + p[0], k[1] + p[1]]
        ok = all(
            (sum(gram[i][j] * cand[j] for j in range(2)) - gram[i][i]) % 2 == 0 for i in range(2)
        )
        if ok:
            return cand
    return k


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20261015)


def F(x) -> Fraction:
    return Fraction(x)
