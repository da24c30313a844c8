"""Time class enumeration with the compiled kernel against the pure-Python search.

    python benchmarks/bench_enumerate.py [--repeat N]
"""
from __future__ import annotations

import argparse
import time

from bwalls.lattice import compiled_kernel_available, enumerate_classes
from bwalls.presets import preset

# (label, surface, deg_min, deg_max, selfint_min, selfint_max)
CASES = [
    ("P1xP1 D=(7,9)", preset("P1xP1", [7, 9]), 1, 400, -60, 60),
    ("Bl_3 P2 D=(12,-3,-4,-5)", preset("BlowupP2_3", [12, -3, -4, -5]), 1, 40, -3, 3),
    ("Bl_6 P2 D=-K", preset("BlowupP2_6"), 1, 6, -2, 2),
    ("Bl_8 P2 D=(17,-5,...,-5)", preset("BlowupP2_8", [17] + [-5] * 8), 1, 12, -2, 1),
]


def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not compiled_kernel_available():
        print("compiled kernel not built; only the Python backend will run")
    print(f"{'case':28s} {'classes':>8s} {'python s':>10s} {'compiled s':>11s} {'speedup':>8s}")
    for label, surf, lo, hi, smin, smax in CASES:
        py = enumerate_classes(surf, lo, hi, smin, smax, backend="python")
        t_py = best_of(lambda: enumerate_classes(surf, lo, hi, smin, smax, backend="python"), args.repeat)
        if compiled_kernel_available():
            assert enumerate_classes(surf, lo, hi, smin, smax, backend="compiled") == py
            t_c = best_of(lambda: enumerate_classes(surf, lo, hi, smin, smax, backend="compiled"), args.repeat)
            print(f"{label:28s} {len(py):8d} {t_py:10.4f} {t_c:11.4f} {t_py / t_c:7.1f}x")
        else:
            print(f"{label:28s} {len(py):8d} {t_py:10.4f} {'-':>11s} {'-':>8s}")


if __name__ == "__main__":
    main()
