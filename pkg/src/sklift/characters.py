"""Dirichlet characters mod N and their extension to the monoid Delta_N.

Delta_N is the set of integral 2x2 matrices g = (a b; c d) with positive
determinant, N | c and gcd(a, N) = 1.  A character chi mod N extends to
Delta_N by chi(g) := conj(chi(a)); this extension is constant on left
Gamma_0(N)-cosets and multiplicative on Delta_N.

Three kinds of characters are supported: the principal ("trivial")
character, quadratic characters given by a Kronecker symbol with
fundamental discriminant, and explicit value tables.  Tables are validated
at construction time (complete multiplicativity, zeros exactly at
non-units); the other kinds are correct by construction.

Character specification grammar, shared by files and the CLI::

    trivial
    kronecker:<D>
    table:<v1>,<v2>,...,<vN>      with v = 0 | zeta^<j>/<M>

where the j-th table entry is chi(j) for j = 1..N and zeta^<j>/<M> denotes
e(j/M).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .numtheory import Scalar, is_fundamental_discriminant, kronecker_symbol

__all__ = [
    "Mat2",
    "DirichletCharacter",
    "char_value",
    "char_on_delta",
    "parity_compatible",
    "delta_membership_violation",
    "parse_character",
]


@dataclass(frozen=True)
class Mat2:
    """An integer 2x2 matrix (a b; c d), stored exactly."""

    a: int
    b: int
    c: int
    d: int

    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def adj(self) -> "Mat2":
        return Mat2(self.d, -self.b, -self.c, self.a)

    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def __mul__(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    @staticmethod
    def identity() -> "Mat2":
        return Mat2(1, 0, 0, 1)


def delta_membership_violation(g: Mat2, level: int) -> str | None:
    """The first violated Delta_N condition, or None if g is a member."""
    if g.det() <= 0:
        return f"determinant {g.det()} is not positive"
    if g.c % level:
        return f"lower-left entry {g.c} is not divisible by the level {level}"
    if gcd(g.a, level) != 1:
        return f"upper-left entry {g.a} is not coprime to the level {level}"
    return None


class DirichletCharacter:
    """A Dirichlet character mod N with exact root-of-unity values."""

    __slots__ = ("modulus", "kind", "order", "_values", "_disc", "_table_specs")

    def __init__(self, modulus, kind, order, values, disc=None, table_specs=None):
        self.modulus = modulus
        self.kind = kind
        self.order = order
        self._values = tuple(values)
        self._disc = disc
        self._table_specs = table_specs

    # -- constructors ------------------------------------------------------

    @staticmethod
    def trivial(modulus: int = 1) -> "DirichletCharacter":
        """The principal character mod N."""
        if modulus < 1:
            raise ValueError("modulus must be >= 1")
        values = [
            Scalar.one() if gcd(a, modulus) == 1 else Scalar.zero()
            for a in range(modulus)
        ]
        return DirichletCharacter(modulus, "trivial", 1, values)

    @staticmethod
    def kronecker(disc: int, modulus: int | None = None) -> "DirichletCharacter":
        """The quadratic character (disc / .), optionally pushed to a larger
        modulus; requires a fundamental discriminant whose absolute value
        divides the modulus."""
        if not is_fundamental_discriminant(disc):
            raise ValueError(f"{disc} is not a fundamental discriminant")
        if modulus is None:
            modulus = abs(disc)
        if disc != 1 and modulus % abs(disc):
            raise ValueError(
                f"modulus {modulus} is not a multiple of the conductor {abs(disc)}"
            )
        values = []
        for a in range(modulus):
            if gcd(a, modulus) != 1:
                values.append(Scalar.zero())
            else:
                values.append(Scalar.from_rational(kronecker_symbol(disc, a)))
        order = 1 if disc == 1 else 2
        return DirichletCharacter(modulus, "kronecker", order, values, disc=disc)

    @staticmethod
    def from_table(modulus: int, entries: list[tuple[int, int] | None]) -> "DirichletCharacter":
        """Build from explicit values: entries[j-1] describes chi(j) for
        j = 1..N, either None (value 0) or a pair (power, root_order) meaning
        e(power/root_order).  The table is validated for complete
        multiplicativity and for vanishing exactly at non-units."""
        if modulus < 1:
            raise ValueError("modulus must be >= 1")
        if len(entries) != modulus:
            raise ValueError(f"expected {modulus} table entries, got {len(entries)}")
        values: list[Scalar] = [Scalar.zero()] * modulus
        order = 1
        for j, spec in enumerate(entries, start=1):
            if spec is None:
                values[j % modulus] = Scalar.zero()
            else:
                power, root_order = spec
                if root_order < 1:
                    raise ValueError("root order must be >= 1")
                values[j % modulus] = Scalar.zeta(root_order, power)
                order = lcm(order, root_order // gcd(root_order, power))
        for a in range(modulus):
            want_zero = gcd(a, modulus) != 1
            if values[a].is_zero() != want_zero:
                raise ValueError(
                    f"table value at {a} must be {'zero' if want_zero else 'nonzero'}"
                )
        for a in range(modulus):
            for b in range(a, modulus):
                if values[(a * b) % modulus] != values[a] * values[b]:
                    raise ValueError(
                        f"table is not completely multiplicative at ({a}, {b})"
                    )
        return DirichletCharacter(
            modulus, "table", order, values, table_specs=tuple(entries)
        )

    # -- evaluation --------------------------------------------------------

    def value(self, a: int) -> Scalar:
        return self._values[a % self.modulus]

    __call__ = value

    def is_trivial(self) -> bool:
        return self.order == 1 and all(
            v == 1 for v in self._values if not v.is_zero()
        )

    def to_spec(self) -> str:
        if self.kind == "trivial":
            return "trivial"
        if self.kind == "kronecker":
            return f"kronecker:{self._disc}"
        parts = []
        for spec in self._table_specs:
            if spec is None:
                parts.append("0")
            else:
                parts.append(f"zeta^{spec[0]}/{spec[1]}")
        return "table:" + ",".join(parts)

    def __eq__(self, other):
        if not isinstance(other, DirichletCharacter):
            return NotImplemented
        return self.modulus == other.modulus and self._values == other._values

    __hash__ = None

    def __repr__(self):
        return f"DirichletCharacter({self.to_spec()!r}, modulus={self.modulus})"


_TABLE_VALUE_RE = re.compile(r"^zeta\^(-?\d+)/(\d+)$")


def parse_character(spec: str, modulus: int) -> DirichletCharacter:
    """Parse the character grammar at a given modulus."""
    if spec == "trivial":
        return DirichletCharacter.trivial(modulus)
    if spec.startswith("kronecker:"):
        return DirichletCharacter.kronecker(int(spec[len("kronecker:"):]), modulus)
    if spec.startswith("table:"):
        entries: list[tuple[int, int] | None] = []
        for token in spec[len("table:"):].split(","):
            if token == "0":
                entries.append(None)
                continue
            m = _TABLE_VALUE_RE.match(token)
            if not m:
                raise ValueError(f"bad table value {token!r}")
            entries.append((int(m.group(1)), int(m.group(2))))
        return DirichletCharacter.from_table(modulus, entries)
    raise ValueError(f"unknown character spec {spec!r}")


def char_value(chi: DirichletCharacter, a: int) -> Scalar:
    """chi(a mod N); zero exactly when gcd(a, N) > 1."""
    return chi.value(a)


def char_on_delta(chi: DirichletCharacter, g: Mat2) -> Scalar:
    """The extension of chi to Delta_N: conj(chi(a)) for g = (a b; c d)."""
    reason = delta_membership_violation(g, chi.modulus)
    if reason is not None:
        raise ValueError(f"matrix not in Delta_N at level {chi.modulus}: {reason}")
    return chi.value(g.a).conj()


def parity_compatible(chi: DirichletCharacter, weight: int) -> bool:
    """True iff chi(-1) = (-1)^weight in the scalar ring."""
    sign = Fraction(1) if weight % 2 == 0 else Fraction(-1)
    return chi.value(-1) == Scalar.from_rational(sign)
