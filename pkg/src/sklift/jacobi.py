"""Truncated Fourier expansions of Jacobi forms and their index-shift
operators.

A :class:`JacobiExpansion` of weight k, index m, level N with character chi
stores the coefficients c(n, r) of sum c(n, r) q^n zeta^r for 0 <= n <=
n_max, supported on 4nm - r^2 >= 0 (and only r = 0 when m = 0).  Zeros
inside the support region are implied; the file format stores them
explicitly.

Two independent realizations of the index-shift operator V_{l,chi} are
provided.  The closed coefficient formula::

    c'(n, r) = sum_{a | (n, r, l), (a, N) = 1} chi(a) a^(k-1) c(n l / a^2, r / a)

and a slash-action evaluation that averages the substitutions

    chi(a) d^{-k} Phi((a tau + b)/d, a z),      ad = l, (a, N) = 1, b mod d

with exact root-of-unity phase bookkeeping, times the normalization
l^(k-1).  V^0 denotes the same operator without the l^(k-1) prefactor; the
diagonal operator V^0(a, a) sends Phi(tau, z) to chi(a) a^{-k} Phi(tau, az)
and multiplies the index by a^2.

Built-in generators (level 1): the elliptic series E4, E6, Delta as
index-0 expansions, the Jacobi Eisenstein series E_{4,1}, E_{6,1} with
coefficients H(k-1, 4n-r^2)/H(k-1, 0), and the Jacobi cusp forms

    phi_{10,1} = (E6 E_{4,1} - E4 E_{6,1}) / 144
    phi_{12,1} = (E4^2 E_{4,1} - E6 E_{6,1}) / 144.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt, lcm

from .characters import DirichletCharacter, parity_compatible, parse_character
from .numtheory import (
    Scalar,
    cohen_h,
    divisors,
    pow_fraction,
    sigma,
    unity_root_table,
)
from .serialize import ParseError, parse_header, parse_int, scalar_from_text, scalar_to_text

__all__ = [
    "JacobiExpansion",
    "region_r_values",
    "index_shift",
    "index_shift_oracle",
    "v0_shift",
    "v_diag",
    "mul_elliptic",
    "builtin_form",
    "BUILTIN_FORMS",
    "write_skjf",
    "parse_skjf",
]


def region_r_values(index: int, n: int) -> range:
    """The r with 4 n index - r^2 >= 0 (just r = 0 when the index is 0)."""
    if index == 0:
        return range(0, 1)
    bound = isqrt(4 * n * index)
    return range(-bound, bound + 1)


class JacobiExpansion:
    """A truncated Jacobi-form Fourier expansion.

    Immutable after construction.  Construction validates the support law,
    the index-0 restriction to r = 0, the character parity chi(-1) = (-1)^k,
    and (when the cusp flag is set) vanishing on the singular boundary
    4nm - r^2 = 0.
    """

    __slots__ = ("weight", "index", "level", "character", "n_max", "cusp", "_coeffs")

    def __init__(self, weight, index, level, character, n_max, coeffs, cusp=False):
        if index < 0:
            raise ValueError("index must be >= 0")
        if n_max < 0:
            raise ValueError("n_max must be >= 0")
        if level != character.modulus:
            raise ValueError(f"level {level} != character modulus {character.modulus}")
        if not parity_compatible(character, weight):
            raise ValueError(
                f"character parity violates chi(-1) = (-1)^k for weight {weight}"
            )
        clean: dict[tuple[int, int], Scalar] = {}
        for (n, r), value in coeffs.items():
            value = Scalar.coerce(value)
            if value.is_zero():
                continue
            if n < 0 or n > n_max:
                raise ValueError(f"coefficient ({n},{r}) outside 0 <= n <= {n_max}")
            disc = 4 * n * index - r * r
            if disc < 0:
                raise ValueError(f"coefficient ({n},{r}) violates 4nm - r^2 >= 0")
            if cusp and disc == 0:
                raise ValueError(
                    f"cusp flag set but boundary coefficient ({n},{r}) is nonzero"
                )
            clean[(n, r)] = value
        object.__setattr__(self, "weight", weight)
        object.__setattr__(self, "index", index)
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "character", character)
        object.__setattr__(self, "n_max", n_max)
        object.__setattr__(self, "cusp", cusp)
        object.__setattr__(self, "_coeffs", clean)

    def __setattr__(self, name, value):
        raise AttributeError("JacobiExpansion is immutable")

    # -- access ------------------------------------------------------------

    def coeff(self, n: int, r: int) -> Scalar:
        """Total lookup: zero outside the support region, error beyond n_max."""
        if n < 0 or n > self.n_max:
            raise ValueError(f"coefficient index n={n} outside the stored region")
        return self._coeffs.get((n, r), Scalar.zero())

    def nonzero_items(self):
        return self._coeffs.items()

    def region_cells(self):
        for n in range(self.n_max + 1):
            for r in region_r_values(self.index, n):
                yield (n, r)

    def is_zero(self) -> bool:
        return not self._coeffs

    # -- linear structure ----------------------------------------------------

    def _like(self, coeffs, n_max=None, cusp=None):
        return JacobiExpansion(
            self.weight,
            self.index,
            self.level,
            self.character,
            self.n_max if n_max is None else n_max,
            coeffs,
            cusp=self.cusp if cusp is None else cusp,
        )

    def _check_compatible(self, other: "JacobiExpansion") -> None:
        if (self.weight, self.index, self.level) != (other.weight, other.index, other.level):
            raise ValueError("incompatible weight/index/level")
        if self.character != other.character:
            raise ValueError("incompatible characters")

    def __add__(self, other: "JacobiExpansion") -> "JacobiExpansion":
        self._check_compatible(other)
        n_max = min(self.n_max, other.n_max)
        out: dict[tuple[int, int], Scalar] = {}
        for (n, r), c in self._coeffs.items():
            if n <= n_max:
                out[(n, r)] = c
        for (n, r), c in other._coeffs.items():
            if n <= n_max:
                out[(n, r)] = out.get((n, r), Scalar.zero()) + c
        return JacobiExpansion(
            self.weight, self.index, self.level, self.character, n_max, out,
            cusp=self.cusp and other.cusp,
        )

    def __sub__(self, other: "JacobiExpansion") -> "JacobiExpansion":
        return self + (-1) * other

    def __mul__(self, factor):
        if not isinstance(factor, (int, Fraction, Scalar)):
            return NotImplemented
        factor = Scalar.coerce(factor)
        out = {key: c * factor for key, c in self._coeffs.items()}
        return self._like(out)

    __rmul__ = __mul__

    def truncate(self, n_max: int) -> "JacobiExpansion":
        if n_max > self.n_max:
            raise ValueError("cannot extend a truncated expansion")
        out = {key: c for key, c in self._coeffs.items() if key[0] <= n_max}
        return self._like(out, n_max=n_max)

    def with_cusp_flag(self) -> "JacobiExpansion":
        """A copy flagged as a cusp form; fails if the boundary is nonzero."""
        return self._like(dict(self._coeffs), cusp=True)

    def __eq__(self, other):
        if not isinstance(other, JacobiExpansion):
            return NotImplemented
        if (self.weight, self.index, self.level, self.n_max) != (
            other.weight, other.index, other.level, other.n_max
        ):
            return False
        if self.character != other.character:
            return False
        keys = set(self._coeffs) | set(other._coeffs)
        zero = Scalar.zero()
        return all(
            self._coeffs.get(k, zero) == other._coeffs.get(k, zero) for k in keys
        )

    __hash__ = None

    def __repr__(self):
        return (
            f"JacobiExpansion(k={self.weight}, m={self.index}, N={self.level}, "
            f"chi={self.character.to_spec()}, n_max={self.n_max}, "
            f"{len(self._coeffs)} nonzero)"
        )


# ---------------------------------------------------------------------------
# Index-shift operators
# ---------------------------------------------------------------------------

def index_shift(phi: JacobiExpansion, l: int) -> JacobiExpansion:
    """V_{l,chi}(phi): index m -> ml, coefficients by the closed divisor sum.

    The output is truncated to n <= floor(n_max / l) so that every
    referenced input coefficient is inside the stored region.
    """
    if l < 1:
        raise ValueError("shift parameter must be >= 1")
    if phi.n_max < l:
        raise ValueError(f"need n_max >= {l} to shift by {l}")
    k, level, chi = phi.weight, phi.level, phi.character
    out_n_max = phi.n_max // l
    out_index = phi.index * l
    out: dict[tuple[int, int], Scalar] = {}
    for n in range(out_n_max + 1):
        for r in region_r_values(out_index, n):
            g = gcd(gcd(n, r), l)
            total = Scalar.zero()
            for a in divisors(g):
                if gcd(a, level) != 1:
                    continue
                va = chi.value(a)
                if va.is_zero():
                    continue
                c = phi.coeff(n * l // (a * a), r // a)
                if not c.is_zero():
                    total = total + va * (pow_fraction(a, k - 1) * c)
            if not total.is_zero():
                out[(n, r)] = total
    return JacobiExpansion(k, out_index, level, chi, out_n_max, out, cusp=phi.cusp)


def index_shift_oracle(phi: JacobiExpansion, l: int) -> JacobiExpansion:
    """V_{l,chi}(phi) by direct slash-action evaluation.

    Sums chi(a) d^{-k} Phi((a tau + b)/d, az) over the upper-triangular
    representatives (ad = l, gcd(a, N) = 1, b mod d): every input monomial
    q^n zeta^r contributes e(nb/d) q^{na/d} zeta^{ra}, with the phase taken
    exactly in Q(zeta_lcm(l, ord chi)).  The b-sum must cancel all
    fractional q-exponents; a nonzero fractional residue is an internal
    error.  The result carries the l^(k-1) normalization and the same
    truncation as :func:`index_shift`.
    """
    if l < 1:
        raise ValueError("shift parameter must be >= 1")
    if phi.n_max < l:
        raise ValueError(f"need n_max >= {l} to shift by {l}")
    k, level, chi = phi.weight, phi.level, phi.character
    out_n_max = phi.n_max // l
    out_index = phi.index * l
    ring = lcm(l, chi.order)
    phases = unity_root_table(ring)
    acc: dict[tuple[Fraction, int], Scalar] = {}
    for a in divisors(l):
        if gcd(a, level) != 1:
            continue
        va = chi.value(a)
        if va.is_zero():
            continue
        d = l // a
        weight_ad = va * pow_fraction(d, -k)
        for b in range(d):
            for (n, r), c in phi.nonzero_items():
                phase = phases[(n * b * (ring // d)) % ring]
                key = (Fraction(n * a, d), r * a)
                term = weight_ad * phase * c
                if key in acc:
                    acc[key] = acc[key] + term
                else:
                    acc[key] = term
    scale = pow_fraction(l, k - 1)
    out: dict[tuple[int, int], Scalar] = {}
    for (n_frac, r), value in acc.items():
        value = value * scale
        if value.is_zero():
            continue
        if n_frac.denominator != 1:
            raise ArithmeticError(
                f"fractional exponent {n_frac} survived the b-sum at r={r}"
            )
        n = int(n_frac)
        if n <= out_n_max:
            out[(n, r)] = value
    return JacobiExpansion(k, out_index, level, chi, out_n_max, out, cusp=phi.cusp)


def v0_shift(phi: JacobiExpansion, l: int) -> JacobiExpansion:
    """V^0_{l,chi} = l^(1-k) V_{l,chi}."""
    return index_shift(phi, l) * pow_fraction(l, 1 - phi.weight)


def v_diag(phi: JacobiExpansion, a: int) -> JacobiExpansion:
    """The diagonal operator V^0(a, a): chi(a) a^{-k} Phi(tau, az), index ma^2."""
    if a < 1:
        raise ValueError("diagonal parameter must be >= 1")
    if gcd(a, phi.level) != 1:
        raise ValueError(f"V^0(a,a) requires gcd({a}, {phi.level}) = 1")
    factor = phi.character.value(a) * pow_fraction(a, -phi.weight)
    out = {(n, r * a): factor * c for (n, r), c in phi.nonzero_items()}
    return JacobiExpansion(
        phi.weight, phi.index * a * a, phi.level, phi.character, phi.n_max, out,
        cusp=phi.cusp,
    )


def mul_elliptic(phi: JacobiExpansion, f: JacobiExpansion) -> JacobiExpansion:
    """Multiply by an index-0 (elliptic) expansion: convolution in n.

    The factor must have index 0 and trivial character at the same level;
    weights add.  Truncation is to the smaller n_max.
    """
    if f.index != 0:
        raise ValueError("second factor must have index 0")
    if f.level != phi.level:
        raise ValueError("level mismatch")
    if not f.character.is_trivial():
        raise ValueError("index-0 factor must carry the trivial character")
    n_max = min(phi.n_max, f.n_max)
    out: dict[tuple[int, int], Scalar] = {}
    for (n1, r), c1 in phi.nonzero_items():
        for (n2, _), c2 in f.nonzero_items():
            n = n1 + n2
            if n <= n_max:
                key = (n, r)
                term = c1 * c2
                if key in out:
                    out[key] = out[key] + term
                else:
                    out[key] = term
    return JacobiExpansion(
        phi.weight + f.weight, phi.index, phi.level, phi.character, n_max, out,
        cusp=phi.cusp,
    )


# ---------------------------------------------------------------------------
# Built-in generators (level 1, trivial character)
# ---------------------------------------------------------------------------

def _elliptic_eisenstein(weight: int, factor: int, power: int, n_max: int) -> JacobiExpansion:
    chi = DirichletCharacter.trivial(1)
    coeffs: dict[tuple[int, int], Scalar] = {(0, 0): Scalar.one()}
    for n in range(1, n_max + 1):
        coeffs[(n, 0)] = Scalar.from_rational(factor * sigma(power, n))
    return JacobiExpansion(weight, 0, 1, chi, n_max, coeffs)


def _delta(n_max: int) -> JacobiExpansion:
    # q * prod (1 - q^i)^24, truncated
    poly = [Fraction(0)] * (n_max + 1)
    poly[0] = Fraction(1)
    for _ in range(24):
        for i in range(1, n_max + 1):
            for j in range(n_max, i - 1, -1):
                poly[j] -= poly[j - i]
    chi = DirichletCharacter.trivial(1)
    coeffs = {(n, 0): poly[n - 1] for n in range(1, n_max + 1)}
    return JacobiExpansion(12, 0, 1, chi, n_max, coeffs)


def _eisenstein_index1(weight: int, n_max: int) -> JacobiExpansion:
    # c(n, r) = H(k-1, 4n - r^2) / H(k-1, 0)
    chi = DirichletCharacter.trivial(1)
    norm = cohen_h(weight - 1, 0)
    coeffs: dict[tuple[int, int], Scalar] = {}
    for n in range(n_max + 1):
        for r in region_r_values(1, n):
            coeffs[(n, r)] = Scalar.from_rational(cohen_h(weight - 1, 4 * n - r * r) / norm)
    return JacobiExpansion(weight, 1, 1, chi, n_max, coeffs)


def _phi10(n_max: int) -> JacobiExpansion:
    e4 = _elliptic_eisenstein(4, 240, 3, n_max)
    e6 = _elliptic_eisenstein(6, -504, 5, n_max)
    combo = mul_elliptic(_eisenstein_index1(4, n_max), e6) - mul_elliptic(
        _eisenstein_index1(6, n_max), e4
    )
    return (combo * Fraction(1, 144)).with_cusp_flag()


def _phi12(n_max: int) -> JacobiExpansion:
    e4 = _elliptic_eisenstein(4, 240, 3, n_max)
    e6 = _elliptic_eisenstein(6, -504, 5, n_max)
    combo = mul_elliptic(_eisenstein_index1(4, n_max), mul_elliptic(e4, e4)) - mul_elliptic(
        _eisenstein_index1(6, n_max), e6
    )
    return (combo * Fraction(1, 144)).with_cusp_flag()


BUILTIN_FORMS = ("E4", "E6", "Delta", "E4_1", "E6_1", "phi10_1", "phi12_1")


def builtin_form(name: str, n_max: int) -> JacobiExpansion:
    """A built-in level-1 expansion; elliptic forms come back with index 0."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    if name == "E4":
        return _elliptic_eisenstein(4, 240, 3, n_max)
    if name == "E6":
        return _elliptic_eisenstein(6, -504, 5, n_max)
    if name == "Delta":
        return _delta(n_max)
    if name == "E4_1":
        return _eisenstein_index1(4, n_max)
    if name == "E6_1":
        return _eisenstein_index1(6, n_max)
    if name == "phi10_1":
        return _phi10(n_max)
    if name == "phi12_1":
        return _phi12(n_max)
    raise ValueError(f"unknown built-in form {name!r} (know {', '.join(BUILTIN_FORMS)})")


# ---------------------------------------------------------------------------
# SKJF file format
# ---------------------------------------------------------------------------

def write_skjf(phi: JacobiExpansion) -> str:
    """Serialize to SKJF text: header, then one line per in-region (n, r),
    explicit zeros included, sorted by (n, r)."""
    lines = [
        "SKJF 1",
        f"k={phi.weight} m={phi.index} N={phi.level} chi={phi.character.to_spec()} "
        f"nmax={phi.n_max} cusp={int(phi.cusp)}",
    ]
    for n, r in phi.region_cells():
        lines.append(f"{n} {r} {scalar_to_text(phi.coeff(n, r))}")
    return "\n".join(lines) + "\n"


def parse_skjf(text: str) -> JacobiExpansion:
    """Parse SKJF text; every in-region pair must be present exactly once."""
    lines = text.splitlines()
    if not lines or lines[0].strip() != "SKJF 1":
        raise ParseError(1, "expected header 'SKJF 1'")
    if len(lines) < 2:
        raise ParseError(2, "missing metadata line")
    fields = parse_header(lines[1], ("k", "m", "N", "chi", "nmax", "cusp"), 2)
    weight = parse_int(fields["k"], 2, "weight")
    index = parse_int(fields["m"], 2, "index")
    level = parse_int(fields["N"], 2, "level")
    n_max = parse_int(fields["nmax"], 2, "nmax")
    cusp_flag = fields["cusp"]
    if cusp_flag not in ("0", "1"):
        raise ParseError(2, f"bad cusp flag {cusp_flag!r}")
    if index < 0 or level < 1 or n_max < 0:
        raise ParseError(2, "index/level/nmax out of range")
    try:
        chi = parse_character(fields["chi"], level)
    except ValueError as exc:
        raise ParseError(2, str(exc)) from None
    coeffs: dict[tuple[int, int], Scalar] = {}
    seen: set[tuple[int, int]] = set()
    for line_no, raw in enumerate(lines[2:], start=3):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(line_no, "expected '<n> <r> <value>'")
        n = parse_int(parts[0], line_no, "n")
        r = parse_int(parts[1], line_no, "r")
        if n < 0:
            raise ParseError(line_no, "negative n is not allowed")
        if n > n_max:
            raise ParseError(line_no, f"n={n} exceeds nmax={n_max}")
        if 4 * n * index - r * r < 0 or (index == 0 and r != 0):
            raise ParseError(line_no, f"({n},{r}) outside the support region")
        if (n, r) in seen:
            raise ParseError(line_no, f"duplicate coefficient ({n},{r})")
        seen.add((n, r))
        coeffs[(n, r)] = scalar_from_text(parts[2], line_no)
    for n in range(n_max + 1):
        for r in region_r_values(index, n):
            if (n, r) not in seen:
                raise ParseError(
                    len(lines) + 1, f"missing in-region coefficient ({n},{r})"
                )
    try:
        return JacobiExpansion(weight, index, level, chi, n_max, coeffs,
                               cusp=cusp_flag == "1")
    except ValueError as exc:
        raise ParseError(2, str(exc)) from None
