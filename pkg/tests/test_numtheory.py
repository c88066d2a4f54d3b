"""Scalar ring, Kronecker symbols, Bernoulli numbers and Cohen's H.

The independent oracles live here: Akiyama-Tanigawa Bernoulli numbers, the
Bernoulli-polynomial formula B_{n,chi} = f^(n-1) sum_a chi(a) B_n(a/f),
Euler's criterion for quadratic residues, and the weighted count of reduced
binary quadratic forms for Hurwitz class numbers.
"""

import os
import threading
from fractions import Fraction
from math import comb, isqrt

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sklift.characters import DirichletCharacter
from sklift.numtheory import (
    Scalar,
    cohen_h,
    cohen_cache,
    cyclotomic_polynomial,
    divisors,
    divisors_coprime_to,
    gcd,
    generalized_bernoulli,
    is_fundamental_discriminant,
    kronecker_symbol,
    moebius,
)
from sklift.serialize import scalar_from_text, scalar_to_text


# ---------------------------------------------------------------------------
# independent oracles
# ---------------------------------------------------------------------------

def bernoulli_numbers(n):
    """B_0..B_n by Akiyama-Tanigawa; convention B_1 = +1/2."""
    row = [Fraction(0)] * (n + 1)
    out = []
    for m in range(n + 1):
        row[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            row[j - 1] = j * (row[j - 1] - row[j])
        out.append(row[0])
    return out


def bernoulli_polynomial_value(n, x):
    """B_n(x) with the classical B_1 = -1/2 inside."""
    bs = bernoulli_numbers(n)
    bs_minus = list(bs)
    if n >= 1:
        bs_minus[1] = Fraction(-1, 2)
    return sum(comb(n, i) * bs_minus[i] * x ** (n - i) for i in range(n + 1))


def bernoulli_chi_oracle(n, chi):
    """B_{n,chi} = f^{n-1} sum_{a=1..f} chi(a) B_n(a/f)."""
    f = chi.modulus
    total = Scalar.zero()
    for a in range(1, f + 1):
        v = chi.value(a)
        if not v.is_zero():
            total = total + v * bernoulli_polynomial_value(n, Fraction(a, f))
    return total * Fraction(f) ** (n - 1)


def hurwitz_oracle(nval):
    """Weighted count of reduced positive forms of discriminant -nval."""
    if nval % 4 in (1, 2):
        return Fraction(0)
    total = Fraction(0)
    for a in range(1, isqrt(nval) + 1):
        for b in range(-a + 1, a + 1):
            if (b * b + nval) % (4 * a):
                continue
            c = (b * b + nval) // (4 * a)
            if c < a or (a == c and b < 0):
                continue
            if b == 0 and a == c:
                total += Fraction(1, 2)
            elif a == b == c:
                total += Fraction(1, 3)
            else:
                total += 1
    return total


# ---------------------------------------------------------------------------
# divisor combinatorics
# ---------------------------------------------------------------------------

def test_gcd_examples():
    assert gcd(12, 18) == 6
    assert gcd(0, 0) == 0
    assert gcd(7, 0) == 7


def test_divisors_coprime_to():
    assert divisors_coprime_to(12, 1) == [1, 2, 3, 4, 6, 12]
    assert divisors_coprime_to(12, 2) == [1, 3]
    assert divisors_coprime_to(1, 5) == [1]


def test_divisors_sorted_and_complete():
    for n in range(1, 200):
        ds = divisors(n)
        assert list(ds) == sorted(ds)
        assert list(ds) == [d for d in range(1, n + 1) if n % d == 0]


def test_moebius_small():
    assert [moebius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]


# ---------------------------------------------------------------------------
# Kronecker symbol
# ---------------------------------------------------------------------------

def test_kronecker_examples():
    assert kronecker_symbol(-4, 3) == -1
    assert kronecker_symbol(-4, 2) == 0
    assert all(kronecker_symbol(1, n) == 1 for n in range(-5, 50))


def test_kronecker_matches_euler_criterion():
    odd_primes = [p for p in range(3, 60) if all(p % q for q in range(2, p))]
    for disc in (-3, -4, 5, 8, -7, 12, 13, -8):
        for p in odd_primes:
            if disc % p == 0:
                assert kronecker_symbol(disc, p) == 0
            else:
                euler = pow(disc % p, (p - 1) // 2, p)
                assert kronecker_symbol(disc, p) == (1 if euler == 1 else -1)


def test_kronecker_multiplicative_and_periodic():
    for disc in (-3, -4, 5, 8, -7):
        assert is_fundamental_discriminant(disc)
        values = [kronecker_symbol(disc, n) for n in range(1001)]
        for a in range(1, 50):
            for b in range(1, 50):
                if a * b <= 1000:
                    assert values[a * b] == values[a] * values[b]
        period = abs(disc)
        for n in range(1000 - period):
            assert values[n] == values[n + period]


# ---------------------------------------------------------------------------
# the cyclotomic scalar ring
# ---------------------------------------------------------------------------

def test_root_of_unity_relations():
    for order in range(1, 13):
        z = Scalar.zeta(order)
        assert z ** order == 1
        phi = cyclotomic_polynomial(order)
        value = Scalar.zero()
        for j, cj in enumerate(phi):
            if cj:
                value = value + cj * z ** j
        assert value.is_zero()


def test_scalar_rational_collapse():
    assert Scalar.zeta(2) == -1
    assert Scalar.zeta(4, 2) == -1
    assert Scalar.zeta(6, 3) == -1
    assert Scalar.zeta(12, 6).as_rational() == Fraction(-1)
    assert Scalar.zeta(4).as_rational() is None


def test_scalar_conjugation():
    for order in (3, 4, 5, 8, 12):
        z = Scalar.zeta(order)
        assert z.conj() * z == 1
        x = z + 2
        y = z * z - Fraction(1, 3)
        assert (x * y).conj() == x.conj() * y.conj()


@st.composite
def scalars(draw):
    order = draw(st.integers(min_value=1, max_value=12))
    coords = draw(
        st.lists(
            st.fractions(
                min_value=-4, max_value=4, max_denominator=6
            ),
            min_size=order,
            max_size=order,
        )
    )
    return Scalar(order, coords)


@settings(max_examples=120, deadline=None)
@given(scalars(), scalars(), scalars())
def test_scalar_ring_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x + Scalar.zero() == x
    assert x * Scalar.one() == x


@settings(max_examples=80, deadline=None)
@given(scalars())
def test_scalar_text_roundtrip(x):
    assert scalar_from_text(scalar_to_text(x), 1) == x


# ---------------------------------------------------------------------------
# generalized Bernoulli numbers
# ---------------------------------------------------------------------------

def test_bernoulli_pinned_values():
    triv = DirichletCharacter.trivial(1)
    assert generalized_bernoulli(1, triv) == Fraction(1, 2)
    assert generalized_bernoulli(1, DirichletCharacter.kronecker(-4)) == Fraction(-1, 2)
    assert generalized_bernoulli(0, DirichletCharacter.kronecker(-3)) == 0


def test_bernoulli_trivial_matches_akiyama_tanigawa():
    triv = DirichletCharacter.trivial(1)
    bs = bernoulli_numbers(12)
    for n in range(13):
        assert generalized_bernoulli(n, triv) == bs[n]


@pytest.mark.parametrize(
    "chi",
    [
        DirichletCharacter.trivial(1),
        DirichletCharacter.trivial(6),
        DirichletCharacter.kronecker(-3),
        DirichletCharacter.kronecker(-4),
        DirichletCharacter.kronecker(5),
        DirichletCharacter.kronecker(8),
        DirichletCharacter.from_table(5, [(0, 1), (1, 4), (3, 4), (2, 4), None]),
    ],
    ids=lambda chi: f"{chi.to_spec()}@{chi.modulus}",
)
def test_bernoulli_matches_polynomial_formula(chi):
    for n in range(9):
        assert generalized_bernoulli(n, chi) == bernoulli_chi_oracle(n, chi)


# ---------------------------------------------------------------------------
# Cohen's H-function
# ---------------------------------------------------------------------------

def test_cohen_examples():
    assert cohen_h(1, 0) == Fraction(-1, 12)
    assert cohen_h(1, 3) == Fraction(1, 3)
    assert cohen_h(1, 4) == Fraction(1, 2)
    assert cohen_h(1, 1) == 0
    assert cohen_h(1, 2) == 0


def test_cohen_zeta_values_match_bernoulli_oracle():
    bs = bernoulli_numbers(10)
    for r in range(1, 6):
        assert cohen_h(r, 0) == -bs[2 * r] / (2 * r)


def test_cohen_hurwitz_spot_values():
    for nval in range(1, 60):
        assert cohen_h(1, nval) == hurwitz_oracle(nval), nval


def test_cohen_higher_weight_spot_values():
    # used by the normalized Jacobi Eisenstein series E_{4,1}, E_{6,1}
    assert cohen_h(3, 3) / cohen_h(3, 0) == 56
    assert cohen_h(3, 4) / cohen_h(3, 0) == 126
    assert cohen_h(5, 3) / cohen_h(5, 0) == -88
    assert cohen_h(5, 4) / cohen_h(5, 0) == -330


# ---------------------------------------------------------------------------
# the disk cache
# ---------------------------------------------------------------------------

def test_cache_file_records(tmp_path, monkeypatch):
    monkeypatch.setenv("SK_CACHE_DIR", str(tmp_path))
    value = cohen_h(1, 23)
    path = tmp_path / "cohen_h.txt"
    assert path.exists()
    lines = path.read_text().splitlines()
    assert f"H 1 23 {value.numerator}/{value.denominator}" in lines
    # duplicates that agree are fine
    with open(path, "a") as fh:
        fh.write(f"H 1 23 {value.numerator}/{value.denominator}\n")
    monkeypatch.setenv("SK_CACHE_DIR", str(tmp_path))  # force re-resolve
    cohen_cache._path = None
    assert cohen_h(1, 23) == value


def test_cache_conflicting_records_rejected(tmp_path, monkeypatch):
    monkeypatch.setenv("SK_CACHE_DIR", str(tmp_path))
    path = tmp_path / "cohen_h.txt"
    path.write_text("H 1 3 1/3\nH 1 3 2/3\n")
    cohen_cache._path = None
    with pytest.raises(ValueError, match="conflicting"):
        cohen_h(1, 3)
    cohen_cache._path = None


def test_cache_concurrent_reads(tmp_path, monkeypatch):
    monkeypatch.setenv("SK_CACHE_DIR", str(tmp_path))
    cohen_cache._path = None
    results = {}

    def worker(tag):
        results[tag] = [cohen_h(1, n) for n in range(40)]

    threads = [threading.Thread(target=worker, args=(i,)) for i in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    baseline = results[0]
    assert all(results[i] == baseline for i in range(4))
    cohen_cache._path = None
