"""Picard-lattice arithmetic and finite enumeration of numerical curve classes."""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt, lcm
from typing import Iterable, Sequence

from . import _kernels_py
from .errors import EnumerationLimitError, LatticeError, SignatureError

try:
    from . import _kernels as _ckernels
except ImportError:  # extension not built
    _ckernels = None

DEFAULT_MAX_ENUM = 10**6
_INT64_SAFE = 1 << 62


def compiled_kernel_available() -> bool:
    return _ckernels is not None


@dataclass(frozen=True, order=True)
class DivisorClass:
    """Integer coordinate vector in a fixed Picard lattice."""

    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        coords = tuple(self.coords)
        for c in coords:
            if not isinstance(c, int) or isinstance(c, bool):
                raise LatticeError(f"divisor coordinates must be integers, got {c!r}")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def of(cls, *coords: int) -> DivisorClass:
        return cls(tuple(coords))

    @classmethod
    def zero(cls, rank: int) -> DivisorClass:
        return cls((0,) * rank)

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def _check(self, other: DivisorClass) -> None:
        if len(other.coords) != len(self.coords):
            raise LatticeError(
                f"dimension mismatch: {len(self.coords)} vs {len(other.coords)}"
            )

    def __add__(self, other: DivisorClass) -> DivisorClass:
        self._check(other)
        return DivisorClass(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: DivisorClass) -> DivisorClass:
        self._check(other)
        return DivisorClass(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> DivisorClass:
        return DivisorClass(tuple(-a for a in self.coords))

    def __mul__(self, k: int) -> DivisorClass:
        return DivisorClass(tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"


def inertia(gram: Sequence[Sequence[int]]) -> tuple[int, int, int]:
    """(positive, negative, zero) counts by exact congruence diagonalization."""
    n = len(gram)
    a = [[Fraction(v) for v in row] for row in gram]
    pos = neg = zero = 0
    remaining = list(range(n))
    while remaining:
        pivot = next((i for i in remaining if a[i][i] != 0), None)
        if pivot is None:
            pair_ij = next(
                ((i, j) for i in remaining for j in remaining if i != j and a[i][j] != 0),
                None,
            )
            if pair_ij is None:
                zero += len(remaining)
                break
            i, j = pair_ij
            # row_i += row_j, col_i += col_j; new a[i][i] = 2 a[i][j] != 0
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            pivot = i
        p = a[pivot][pivot]
        if p > 0:
            pos += 1
        else:
            neg += 1
        remaining.remove(pivot)
        for r in remaining:
            f = a[r][pivot] / p
            if f:
                for k in range(n):
                    a[r][k] -= f * a[pivot][k]
        for r in remaining:
            a[pivot][r] = Fraction(0)
            a[r][pivot] = Fraction(0)
    return pos, neg, zero


def validate_lattice(gram: Sequence[Sequence[int]]) -> tuple[int, int, int]:
    """Accept a Gram matrix iff it is symmetric, integral, of signature (1, rho-1).

    Returns the inertia on success.
    """
    n = len(gram)
    if n == 0:
        raise LatticeError("empty lattice")
    for row in gram:
        if len(row) != n:
            raise LatticeError("Gram matrix must be square")
        for v in row:
            if not isinstance(v, int) or isinstance(v, bool):
                raise LatticeError(f"Gram entries must be integers, got {v!r}")
    for i in range(n):
        for j in range(i + 1, n):
            if gram[i][j] != gram[j][i]:
                raise LatticeError(f"Gram matrix is not symmetric at ({i}, {j})")
    inert = inertia(gram)
    if inert != (1, n - 1, 0):
        raise SignatureError(inert)
    return inert


@dataclass(frozen=True)
class PicardLattice:
    gram: tuple[tuple[int, ...], ...]
    canonical: DivisorClass

    def __post_init__(self) -> None:
        gram = tuple(tuple(row) for row in self.gram)
        object.__setattr__(self, "gram", gram)
        validate_lattice(gram)
        if len(self.canonical) != len(gram):
            raise LatticeError("canonical class has the wrong length")

    @property
    def rank(self) -> int:
        return len(self.gram)

    def pair(self, a: DivisorClass, b: DivisorClass) -> int:
        return pair(a, b, self)

    def self_int(self, a: DivisorClass) -> int:
        return pair(a, a, self)


def pair(a: DivisorClass, b: DivisorClass, lat: PicardLattice) -> int:
    """Intersection number ``a^T * gram * b``."""
    n = lat.rank
    if len(a) != n or len(b) != n:
        raise LatticeError(f"dimension mismatch: lattice rank {n}, classes {len(a)} and {len(b)}")
    total = 0
    for i, ai in enumerate(a.coords):
        if ai:
            row = lat.gram[i]
            total += ai * sum(row[j] * bj for j, bj in enumerate(b.coords))
    return total


def genus_term(c: DivisorClass, lat: PicardLattice) -> Fraction:
    """``1 - g = -C.(C + K)/2`` by adjunction."""
    return Fraction(-pair(c, c + lat.canonical, lat), 2)


@dataclass(frozen=True)
class SurfaceData:
    """A lattice, a polarization D with D^2 > 0, and optional effectivity hints.

    Ampleness of D is the caller's assertion; only D^2 > 0 is verified.
    """

    lattice: PicardLattice
    polarization: DivisorClass
    effective_hints: tuple[tuple[DivisorClass, bool], ...] = ()
    name: str = "surface"

    def __post_init__(self) -> None:
        if len(self.polarization) != self.lattice.rank:
            raise LatticeError("polarization has the wrong length")
        if self.delta <= 0:
            raise LatticeError(f"polarization must have positive self-intersection, got {self.delta}")
        object.__setattr__(self, "effective_hints", tuple(self.effective_hints))

    @property
    def delta(self) -> int:
        return pair(self.polarization, self.polarization, self.lattice)

    @property
    def canonical(self) -> DivisorClass:
        return self.lattice.canonical

    def pair(self, a: DivisorClass, b: DivisorClass) -> int:
        return pair(a, b, self.lattice)

    def degree(self, c: DivisorClass) -> int:
        return pair(c, self.polarization, self.lattice)

    def self_int(self, c: DivisorClass) -> int:
        return pair(c, c, self.lattice)

    def hint_for(self, c: DivisorClass) -> bool | None:
        for cls, effective in self.effective_hints:
            if cls == c:
                return effective
        return None


# -- enumeration -----------------------------------------------------------

def _mat_inverse(m: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [v / p for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [rv - f * cv for rv, cv in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


@dataclass(frozen=True)
class _EllipsoidData:
    form: tuple[tuple[int, ...], ...]
    tmats: tuple[tuple[tuple[int, ...], ...], ...]
    scales: tuple[int, ...]
    inv_diag: tuple[Fraction, ...]
    gd: tuple[int, ...]


@lru_cache(maxsize=256)
def _ellipsoid(gram: tuple[tuple[int, ...], ...], d: tuple[int, ...]) -> _EllipsoidData:
    # Q(x) = 2 (x.D)^2 - D^2 x^2 is positive definite when the form is
    # hyperbolic and D^2 > 0: on D-perp it is -D^2 x^2 > 0.
    rho = len(gram)
    gd = tuple(sum(gram[i][j] * d[j] for j in range(rho)) for i in range(rho))
    delta = sum(gd[i] * d[i] for i in range(rho))
    form = tuple(
        tuple(2 * gd[i] * gd[j] - delta * gram[i][j] for j in range(rho)) for i in range(rho)
    )
    mq = [[Fraction(v) for v in row] for row in form]
    tmats = []
    scales = []
    for k in range(1, rho + 1):
        if k == rho:
            s = [row[:] for row in mq]
        else:
            head = [row[:k] for row in mq[:k]]
            cross = [row[k:] for row in mq[:k]]
            tail_inv = _mat_inverse([row[k:] for row in mq[k:]])
            tmp = [[sum(cross[i][t] * tail_inv[t][j] for t in range(rho - k)) for j in range(rho - k)]
                   for i in range(k)]
            s = [[head[i][j] - sum(tmp[i][t] * cross[j][t] for t in range(rho - k))
                  for j in range(k)] for i in range(k)]
        scale = lcm(*(v.denominator for row in s for v in row))
        tmats.append(tuple(tuple(int(v * scale) for v in row) for row in s))
        scales.append(scale)
    inv = _mat_inverse(mq)
    return _EllipsoidData(
        form=form,
        tmats=tuple(tmats),
        scales=tuple(scales),
        inv_diag=tuple(inv[i][i] for i in range(rho)),
        gd=gd,
    )


def _fits_int64(ell: _EllipsoidData, bound: int, gram, lims: Iterable[int]) -> bool:
    rho = len(ell.gd)
    xs = [isqrt(int(bound * q)) + 1 for q in ell.inv_diag]
    worst = [abs(v) for v in lims]
    for k, (t, scale) in enumerate(zip(ell.tmats, ell.scales)):
        bk = scale * bound
        a = t[k][k]
        b = sum(abs(t[k][j]) * xs[j] for j in range(k))
        c = sum(abs(t[i][j]) * xs[i] * xs[j] for i in range(k) for j in range(k))
        partial = max(abs(t[i][j]) * xs[j] for i in range(k + 1) for j in range(k + 1))
        worst += [bk, a * xs[k] + b, b * b + a * (c + bk), c, partial * xs[k]]
    worst.append(sum(abs(ell.gd[i]) * xs[i] for i in range(rho)))
    worst.append(sum(abs(gram[i][j]) * xs[i] * xs[j] for i in range(rho) for j in range(rho)))
    return max(worst) < _INT64_SAFE


def max_enum_from_env() -> int:
    raw = os.environ.get("BWALLS_MAX_ENUM")
    if not raw:
        return DEFAULT_MAX_ENUM
    try:
        value = int(raw)
    except ValueError:
        raise LatticeError(f"BWALLS_MAX_ENUM must be an integer, got {raw!r}") from None
    if value < 0:
        raise LatticeError("BWALLS_MAX_ENUM must be nonnegative")
    return value


def enumerate_classes(
    surface: SurfaceData,
    deg_min: int,
    deg_max: int,
    selfint_min: int,
    selfint_max: int,
    *,
    backend: str = "auto",
    max_count: int | None = None,
) -> list[DivisorClass]:
    """All classes C with deg_min <= C.D <= deg_max and selfint_min <= C^2 <= selfint_max.

    The region is finite because the form is hyperbolic and D^2 > 0. Output
    is sorted lexicographically on coordinates. ``backend`` is ``"auto"``,
    ``"compiled"`` or ``"python"``; both give identical results.
    """
    if backend not in ("auto", "compiled", "python"):
        raise ValueError(f"unknown backend {backend!r}")
    if deg_min > deg_max or selfint_min > selfint_max:
        return []
    lat = surface.lattice
    delta = surface.delta
    assert delta > 0, "enumeration region is infinite unless D^2 > 0"
    cap = max_enum_from_env() if max_count is None else max_count
    t_max = max(abs(deg_min), abs(deg_max))
    # 2 (C.D)^2 - D^2 C^2 <= 2 T^2 - D^2 * selfint_min
    bound = 2 * t_max * t_max - delta * selfint_min
    if bound < 0:
        return []
    ell = _ellipsoid(lat.gram, surface.polarization.coords)
    bounds = [scale * bound for scale in ell.scales]
    args = (
        [[list(r) for r in t] for t in ell.tmats],
        bounds,
        [list(r) for r in lat.gram],
        list(ell.gd),
        deg_min,
        deg_max,
        selfint_min,
        selfint_max,
        cap,
    )
    use_c = False
    if backend != "python" and _ckernels is not None:
        use_c = _fits_int64(ell, bound, lat.gram, (deg_min, deg_max, selfint_min, selfint_max, cap))
    if backend == "compiled" and not use_c:
        raise LatticeError(
            "compiled kernel unavailable or input exceeds its 62-bit range"
        )
    raw = (_ckernels.enumerate_ellipsoid if use_c else _kernels_py.enumerate_ellipsoid)(*args)
    if len(raw) > cap:
        raise EnumerationLimitError(
            f"enumeration exceeded {cap} classes; raise BWALLS_MAX_ENUM or tighten bounds"
        )
    classes = sorted(DivisorClass(v) for v in raw)
    for c in classes:
        deg = surface.degree(c)
        assert deg * deg >= surface.self_int(c) * delta, f"Hodge index violated by {c}"
    return classes
