"""Deterministic synthetic test data: orbit-consistent Jacobi expansions,
random boxed Siegel expansions, and level-2 data satisfying the degenerate
local relation A(2n, r, m) = A(n, r, 2m)."""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from sklift.characters import DirichletCharacter
from sklift.jacobi import JacobiExpansion, region_r_values
from sklift.siegel import SiegelExpansion


def odd_table_character_mod4() -> DirichletCharacter:
    # chi(1) = 1, chi(3) = -1 as an explicit table
    return DirichletCharacter.from_table(4, [(0, 1), None, (1, 2), None])


def order4_table_character_mod5() -> DirichletCharacter:
    # chi(2) = zeta_4, an odd character of order 4
    return DirichletCharacter.from_table(5, [(0, 1), (1, 4), (3, 4), (2, 4), None])


def _orbit_key(index: int, n: int, r: int) -> tuple[int, int]:
    # invariants of the translations (n, r) -> (n + lam r + lam^2 m, r + 2 lam m)
    # together with r -> -r
    disc = 4 * n * index - r * r
    rho = min(r % (2 * index), (-r) % (2 * index))
    return (disc, rho)


def random_jacobi(weight, level, chi, n_max, rng, index=1, cuspidal=True) -> JacobiExpansion:
    """Random expansion constant on translation orbits (form-shaped data)."""
    assigned: dict[tuple[int, int], Fraction] = {}
    coeffs: dict[tuple[int, int], Fraction] = {}
    for n in range(n_max + 1):
        for r in region_r_values(index, n):
            key = _orbit_key(index, n, r)
            if key not in assigned:
                if cuspidal and key[0] == 0:
                    assigned[key] = Fraction(0)
                else:
                    assigned[key] = Fraction(rng.randint(-60, 60))
            coeffs[(n, r)] = assigned[key]
    return JacobiExpansion(weight, index, level, chi, n_max, coeffs, cusp=cuspidal)


def random_siegel(weight, level, chi, n_max, m_max, rng) -> SiegelExpansion:
    """Uniformly random supported expansion on the whole box."""
    coeffs = {}
    for n in range(n_max + 1):
        for m in range(m_max + 1):
            bound = isqrt(4 * n * m)
            for r in range(-bound, bound + 1):
                if (n, r, m) != (0, 0, 0):
                    coeffs[(n, r, m)] = Fraction(rng.randint(-60, 60))
    return SiegelExpansion(weight, level, chi, n_max, m_max, coeffs)


def _dyadic_class(n: int, r: int, m: int) -> tuple[int, int, int]:
    # canonical representative under (2n, r, m) ~ (n, r, 2m)
    if n == 0:
        while m > 0 and m % 2 == 0:
            m //= 2
        return (0, r, m)
    while n % 2 == 0:
        n //= 2
        m *= 2
    return (n, r, m)


def degenerate_level2_siegel(weight, n_max, m_max, rng) -> SiegelExpansion:
    """Level-2 data satisfying A(2n, r, m) = A(n, r, 2m) everywhere."""
    chi = DirichletCharacter.trivial(2)
    assigned: dict[tuple[int, int, int], Fraction] = {}
    coeffs = {}
    for n in range(n_max + 1):
        for m in range(m_max + 1):
            bound = isqrt(4 * n * m)
            for r in range(-bound, bound + 1):
                if (n, r, m) == (0, 0, 0):
                    continue
                key = _dyadic_class(n, r, m)
                if key not in assigned:
                    assigned[key] = Fraction(rng.randint(-60, 60))
                coeffs[(n, r, m)] = assigned[key]
    return SiegelExpansion(weight, 2, chi, n_max, m_max, coeffs)
