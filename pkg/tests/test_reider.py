from __future__ import annotations

from fractions import Fraction

import pytest

from bwalls.lattice import DivisorClass
from bwalls.presets import preset
from bwalls.reider import (
    NOT_VERIFIED,
    VERIFIED,
    CurveCondition,
    Status,
    cor53_check,
    cor54_check,
    curve_hypothesis,
    prop61_check,
    reduction_grid_max,
    reider_check,
    run_check,
    thm71_check,
    thm72_check,
)

from conftest import blowup, brute_classes, p2, random_hyperbolic_rank2, surface

L = DivisorClass.of


def brute_violators(s, cond: CurveCondition, radius_deg: int = 40):
    """Scan a wide box directly against the inequality, ignoring the derived region."""
    lo = cond.selfint_lo if cond.selfint_lo is not None else -radius_deg
    out = []
    for C in brute_classes(s, 1, radius_deg, lo, cond.selfint_hi):
        if cond.violated_by(s.self_int(C), s.degree(C)) and s.hint_for(C) is not False:
            out.append(C)
    return out


def test_reider_examples():
    v = reider_check(p2(4), 2)
    assert v.verified and v.conclusion == VERIFIED
    assert v.hypothesis("curves").status is Status.VACUOUS
    v = reider_check(p2(3), 2)
    assert v.hypothesis("delta").status is Status.BOUNDARY and not v.verified
    ruled = preset("P1xP1", [3, 1])
    v = reider_check(ruled, 1)
    assert L(1, 0) in v.hypothesis("curves").violators
    assert v.conclusion == NOT_VERIFIED
    with pytest.raises(ValueError):
        reider_check(p2(4), 0)


def test_cor53_examples():
    assert cor53_check(p2(4), 1).verified
    assert cor53_check(p2(3), 1).hypothesis("delta").status is Status.BOUNDARY
    v = cor53_check(p2(7), 5)
    curves = v.hypothesis("curves")
    assert curves.status is Status.FAILS
    assert curves.violators == (L(1), L(2))
    assert v.checks["reduction_ok"]


def test_reduction_grid():
    best, arg = reduction_grid_max()
    assert (best, arg) == (9, 1)
    assert (Fraction(2) + 2) ** 2 / 2 == 8


def test_cor54_examples():
    assert cor54_check(p2(6), "b").verified
    assert cor54_check(p2(5), "b").hypothesis("delta").status is Status.BOUNDARY
    s = blowup((5, -1, -2, -2))
    v = cor54_check(s, "a")
    assert L(0, 1, 0, 0) in v.hypothesis("curves").violators


def test_prop61_examples():
    assert prop61_check(p2(5), "a").verified
    assert not prop61_check(p2(5), "b").verified
    assert prop61_check(p2(6), "b").verified
    assert prop61_check(p2(5), "a").checks["segment_ok"]


def test_thm71_veronese_and_sextic():
    v = thm71_check(p2(5))
    holds = {c.label: c.holds for c in v.clauses}
    assert holds == {"a1": True, "a2": True, "b1": True, "b2": False,
                     "i": True, "ii": True, "iii": True, "iv": False}
    assert not v.verified
    assert any("Veronese" in n for n in v.notes)
    v6 = thm71_check(p2(6))
    assert v6.verified and all(c.holds for c in v6.clauses)


def test_thm71_clause_by_clause_on_a_blowup():
    s = blowup((7, -3))
    E = L(0, 1)
    assert s.degree(E) == 3 and s.self_int(E) == -1
    v = thm71_check(s)
    assert v.hypothesis("a2.curves").status is Status.HOLDS
    assert E in v.hypothesis("b2.curves").violators
    assert v.clause("a2").holds and not v.clause("b2").holds


def test_thm72_covers_sit_on_the_boundary():
    for d in (2, 3, 5):
        s = preset(f"CoverP2_{d}")
        assert s.delta == 9 * d
        v = thm72_check(s, d)
        assert v.hypothesis("delta").status is Status.BOUNDARY
        assert not v.verified
        assert any("boundary" in n for n in v.notes)
    v = thm72_check(p2(4), 1)
    assert v.verified and v.checks["symmetrized_class"] == L(1)


def test_effective_hints():
    s = surface([[0, 1], [1, 0]], [-2, -2], [3, 1], hints=[([1, 0], False)])
    v = reider_check(s, 1)
    h = v.hypothesis("curves")
    assert L(1, 0) in h.ignored and L(1, 0) not in h.violators
    s2 = surface([[0, 1], [1, 0]], [-2, -2], [3, 1], hints=[([1, 0], True)])
    h2 = reider_check(s2, 1).hypothesis("curves")
    assert h2.effective_violators == (L(1, 0),)


def test_boundary_status_on_curves():
    # fiber f of P1xP1 with D.f = 2 against D.C > C^2 + 2: equality only
    s = preset("P1xP1", [2, 3])
    h = curve_hypothesis("c", s, CurveCondition(Fraction(1), Fraction(2), True, 0, None))
    assert h.status is Status.BOUNDARY


def test_run_check_dispatch():
    assert run_check(p2(5), "thm71").theorem_id == "thm71"
    assert run_check(p2(5), "cor54:a").theorem_id == "cor54:a"
    for bad in ("thm99", "reider:x", "cor54:c", "thm71:2"):
        with pytest.raises(ValueError):
            run_check(p2(5), bad)


CONDITIONS = [
    CurveCondition(Fraction(1), Fraction(k), True, 0, None) for k in (1, 2, 3)
] + [
    CurveCondition(Fraction(1), Fraction(2 * n), True, n - 1, None) for n in (1, 2)
] + [
    CurveCondition(Fraction(3, 2), Fraction(3), False, 0, -1),
    CurveCondition(Fraction(2), Fraction(4), False, 0, -1),
    CurveCondition(Fraction(1), Fraction(3), True, 0, -1),
    CurveCondition(Fraction(1), Fraction(4), False, 0, -1),
]


def test_violators_match_brute_force(rng):
    for _ in range(10):
        s = random_hyperbolic_rank2(rng)
        for cond in CONDITIONS:
            h = curve_hypothesis("c", s, cond)
            assert list(h.violators) == brute_violators(s, cond)
            for C in h.violators:
                assert cond.violated_by(s.self_int(C), s.degree(C))
