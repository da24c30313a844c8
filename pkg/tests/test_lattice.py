from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bwalls.errors import EnumerationLimitError, LatticeError, SignatureError
from bwalls.lattice import (
    DivisorClass,
    PicardLattice,
    compiled_kernel_available,
    enumerate_classes,
    genus_term,
    inertia,
    validate_lattice,
)
from bwalls.presets import preset

from conftest import blowup, brute_classes, p2, random_hyperbolic_rank2, surface

L = DivisorClass.of


def test_validate_examples():
    assert validate_lattice([[1]]) == (1, 0, 0)
    assert validate_lattice([[0, 1], [1, 0]]) == (1, 1, 0)
    with pytest.raises(SignatureError) as err:
        validate_lattice([[1, 0], [0, 1]])
    assert err.value.inertia == (2, 0, 0)


@pytest.mark.parametrize("gram", [[[1, 2]], [[1, 2], [3, 1]], [[0]], [[1, 0], [0, 0]]])
def test_validate_rejects(gram):
    with pytest.raises(LatticeError):
        validate_lattice(gram)


@given(st.lists(st.integers(-6, 6), min_size=3, max_size=3))
def test_inertia_matches_sympy(entries):
    import sympy

    a, b, c = entries
    gram = [[a, b], [b, c]]
    eig = sympy.Matrix(gram).eigenvals()
    pos = sum(m for v, m in eig.items() if v > 0)
    neg = sum(m for v, m in eig.items() if v < 0)
    assert inertia(gram) == (pos, neg, 2 - pos - neg)


def test_pairing_examples():
    s = p2(5)
    assert s.pair(L(5), L(1)) == 5
    q = preset("P1xP1")
    assert q.self_int(L(1, 1)) == 2
    assert q.pair(L(3, -2), L(0, 0)) == 0


def test_genus_term_examples():
    lat = p2().lattice
    assert genus_term(L(1), lat) == 1
    assert genus_term(L(3), lat) == 0
    fiber = preset("P1xP1").lattice
    assert genus_term(L(1, 0), fiber) == 1


def test_polarization_must_be_positive():
    with pytest.raises(LatticeError):
        surface([[0, 1], [1, 0]], [-2, -2], [1, 0])


def test_enumeration_examples():
    assert enumerate_classes(p2(), 1, 2, 0, 4) == [L(1), L(2)]
    q = preset("P1xP1")
    assert enumerate_classes(q, 1, 1, -2, 2) == [L(0, 1), L(1, 0)]
    assert enumerate_classes(q, 1, 2, -2, 2) == [L(0, 1), L(0, 2), L(1, 0), L(1, 1), L(2, 0)]
    assert enumerate_classes(p2(), 1, 3, -100, 100) == [L(1), L(2), L(3)]
    assert enumerate_classes(p2(), 1, 0, 0, 4) == []
    assert enumerate_classes(p2(), 1, 3, 5, 4) == []


@pytest.mark.parametrize("backend", ["python", "compiled"])
def test_backends_match_brute_force_on_random_rank2(backend, rng):
    if backend == "compiled" and not compiled_kernel_available():
        pytest.skip("compiled kernel not built")
    for _ in range(25):
        s = random_hyperbolic_rank2(rng)
        lo, hi = rng.randint(-3, 3), rng.randint(-3, 6)
        smin, smax = rng.randint(-6, 2), rng.randint(-2, 6)
        assert enumerate_classes(s, lo, hi, smin, smax, backend=backend) == brute_classes(s, lo, hi, smin, smax)


def test_backends_match_on_blowups(rng):
    for k in range(1, 5):
        d = [6] + [-rng.randint(1, 2) for _ in range(k)]
        s = blowup(d)
        py = enumerate_classes(s, 1, 6, -2, 1, backend="python")
        assert enumerate_classes(s, 1, 6, -2, 1) == py
        assert py == brute_classes(s, 1, 6, -2, 1)


def test_enumeration_cap(monkeypatch):
    monkeypatch.setenv("BWALLS_MAX_ENUM", "3")
    with pytest.raises(EnumerationLimitError):
        enumerate_classes(p2(), 1, 10, 0, 100)
    monkeypatch.setenv("BWALLS_MAX_ENUM", "10")
    assert len(enumerate_classes(p2(), 1, 10, 0, 100)) == 10


def test_huge_entries_fall_back_to_python():
    s = surface([[1, 0], [0, -1]], [-3, 1], [10**6, 10**6 - 1])
    got = enumerate_classes(s, 1, 3, -1, 0)
    assert got == enumerate_classes(s, 1, 3, -1, 0, backend="python")
    assert all(1 <= s.degree(c) <= 3 for c in got)
    if compiled_kernel_available():
        with pytest.raises(LatticeError):
            enumerate_classes(s, 1, 3, -1, 0, backend="compiled")


@given(st.integers(0, 10**6))
def test_hodge_index_holds_for_output(seed):
    s = random_hyperbolic_rank2(random.Random(seed))
    for c in enumerate_classes(s, -4, 4, -4, 4):
        assert s.degree(c) ** 2 >= s.self_int(c) * s.delta


def test_canonical_length_checked():
    with pytest.raises(LatticeError):
        PicardLattice(((1,),), L(1, 2))
