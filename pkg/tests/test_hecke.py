"""Coset enumeration, double-coset arithmetic and the product identity."""

import random
from math import gcd

import pytest

from sklift.characters import Mat2
from sklift.hecke import (
    CosetRep,
    DoubleCoset,
    HeckeElement,
    canonicalize_coset,
    coset_equal,
    coset_representatives,
    diagonal_shift,
    double_coset_of,
    double_coset_right_cosets,
    multiply,
    t_ad,
    tl_element,
    verify_theorem_identity,
)


def test_representatives_examples():
    reps = {(r.a, r.b, r.d) for r in coset_representatives(1, 2)}
    assert reps == {(2, 0, 1), (1, 0, 2), (1, 1, 2)}
    reps2 = {(r.a, r.b, r.d) for r in coset_representatives(2, 2)}
    assert reps2 == {(1, 0, 2), (1, 1, 2)}
    assert [(r.a, r.b, r.d) for r in coset_representatives(5, 1)] == [(1, 0, 1)]


def test_representative_counts():
    for level in range(1, 7):
        for l in range(1, 13):
            expected = sum(l // a for a in range(1, l + 1)
                           if l % a == 0 and gcd(a, level) == 1)
            assert len(coset_representatives(level, l)) == expected


def test_coset_equal_examples():
    assert coset_equal(Mat2(1, 1, 0, 2), Mat2(1, 3, 0, 2), 1)
    assert not coset_equal(Mat2(2, 0, 0, 1), Mat2(1, 0, 0, 2), 1)
    with pytest.raises(ValueError, match="determinant mismatch"):
        coset_equal(Mat2(1, 0, 0, 2), Mat2(1, 0, 0, 3), 1)
    with pytest.raises(ValueError, match="not in Delta_N"):
        coset_equal(Mat2(1, 0, 1, 2), Mat2(1, 0, 0, 2), 2)


def test_coset_equal_under_left_translation():
    rng = random.Random(3)
    for level in (1, 2, 3, 4):
        for _ in range(40):
            r = rng.choice(coset_representatives(level, rng.randint(1, 10)))
            g = r.matrix()
            gamma = Mat2(1, rng.randint(-3, 3), 0, 1) * Mat2(1, 0, level * rng.randint(-2, 2), 1)
            if rng.random() < 0.5:
                gamma = gamma * Mat2(-1, 0, 0, -1)
            assert coset_equal(gamma * g, g, level)


def test_canonicalize_examples():
    assert canonicalize_coset(Mat2.identity(), 5) == CosetRep(1, 0, 1, 5)
    g = Mat2(1, 0, 3, 1) * Mat2(1, 1, 0, 2)
    assert canonicalize_coset(g, 3) == CosetRep(1, 1, 2, 3)
    assert canonicalize_coset(Mat2(2, 1, 0, 1), 1) == CosetRep(2, 0, 1, 1)


def test_canonicalize_agrees_with_scanning():
    rng = random.Random(11)
    for level in (1, 2, 3, 4, 6):
        for _ in range(60):
            l = rng.randint(1, 12)
            r = rng.choice(coset_representatives(level, l))
            gamma = Mat2(1, rng.randint(-4, 4), 0, 1) * Mat2(1, 0, level * rng.randint(-3, 3), 1)
            if rng.random() < 0.5:
                gamma = gamma * Mat2(-1, 0, 0, -1)
            g = gamma * r.matrix()
            rep = canonicalize_coset(g, level)
            by_scan = [
                cand for cand in coset_representatives(level, l)
                if coset_equal(cand.matrix(), g, level)
            ]
            assert by_scan == [rep] == [r]


def test_double_coset_of_matches_expansion_scan():
    # the content rule against the definitional test: membership of the
    # canonical representative in a candidate's right-coset expansion
    for level in (1, 2, 3):
        for l in (1, 2, 4, 6, 8, 9, 12):
            for rep in coset_representatives(level, l):
                dc = double_coset_of(rep)
                candidates = [
                    DoubleCoset(a, l // a, level)
                    for a in range(1, l + 1)
                    if l % a == 0 and (l // a) % a == 0 and gcd(a, level) == 1
                ]
                hits = [
                    cand for cand in candidates
                    if rep in double_coset_right_cosets(cand)
                ]
                assert hits == [dc]


def test_tl_element_examples():
    assert tl_element(1, 4) == t_ad(1, 1, 4) + t_ad(1, 2, 2)
    assert tl_element(2, 4) == t_ad(2, 1, 4)
    assert tl_element(6, 1) == t_ad(6, 1, 1)


def test_multiply_identity_and_examples():
    one = tl_element(1, 1)
    x = tl_element(1, 6) + 3 * t_ad(1, 2, 2)
    assert multiply(one, x) == x
    assert multiply(x, one) == x
    assert multiply(tl_element(1, 2), tl_element(1, 3)) == tl_element(1, 6)
    # T(p) o T(p) = T(p^2) + p T(p,p) away from the level
    for level, p in ((1, 2), (1, 3), (3, 2), (2, 3)):
        got = multiply(tl_element(level, p), tl_element(level, p))
        want = tl_element(level, p * p) + p * diagonal_shift(p, tl_element(level, 1))
        assert got == want


def test_multiply_level_mismatch():
    with pytest.raises(ValueError, match="level"):
        multiply(tl_element(1, 2), tl_element(2, 2))


def test_multiply_commutative():
    # determinant sums T(m), T(n)
    for level in range(1, 7):
        for m in range(1, 11):
            for n in range(m, 11):
                x, y = tl_element(level, m), tl_element(level, n)
                assert multiply(x, y) == multiply(y, x)
    # and raw basis pairs
    for level in range(1, 7):
        basis = [
            (a, d)
            for d in range(1, 11)
            for a in range(1, d + 1)
            if d % a == 0 and a * d <= 10 and gcd(a, level) == 1
        ]
        for a1, d1 in basis:
            for a2, d2 in basis:
                x, y = t_ad(level, a1, d1), t_ad(level, a2, d2)
                assert multiply(x, y) == multiply(y, x)


def test_local_multiplicativity():
    # T(a1 a2, d1 d2) = T(a1,d1) o T(a2,d2) whenever gcd(d1, d2) = 1
    for level in (1, 2, 3):
        pairs = [
            (a, d)
            for d in range(1, 61)
            for a in range(1, d + 1)
            if d % a == 0 and gcd(a, level) == 1
        ]
        for a1, d1 in pairs:
            for a2, d2 in pairs:
                if gcd(d1, d2) != 1 or a1 * d1 * a2 * d2 > 60:
                    continue
                lhs = t_ad(level, a1 * a2, d1 * d2)
                rhs = multiply(t_ad(level, a1, d1), t_ad(level, a2, d2))
                assert lhs == rhs, (level, (a1, d1), (a2, d2))


def test_theorem_identity_examples():
    assert verify_theorem_identity(1, 2, 2)
    assert verify_theorem_identity(2, 2, 2)
    # with gcd(m, n) = 1 the right side is the single term T(mn)
    assert multiply(tl_element(1, 2), tl_element(1, 3)) == tl_element(1, 6)
    assert multiply(tl_element(4, 3), tl_element(4, 5)) == tl_element(4, 15)
    # degenerate at p | N: T(2) o T(2) = T(4) at level 2
    assert multiply(tl_element(2, 2), tl_element(2, 2)) == tl_element(2, 4)


def test_element_formatting():
    x = tl_element(1, 4) + 2 * t_ad(1, 2, 2)
    assert str(x) == "1*T(1,4) + 3*T(2,2)"
    assert str(HeckeElement(1)) == "0"


def test_double_coset_validation():
    with pytest.raises(ValueError, match="a | d"):
        DoubleCoset(2, 3, 1)
    with pytest.raises(ValueError, match="gcd"):
        DoubleCoset(2, 4, 2)
