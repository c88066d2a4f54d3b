"""Degree-2 Siegel expansions, the Saito-Kurokawa lift, and the
Maass-relation checkers.

A :class:`SiegelExpansion` stores Fourier coefficients A(n, r, m) indexed
by half-integral positive semidefinite matrices (n, r/2; r/2, m), i.e.
n, m >= 0 and 4nm - r^2 >= 0, on the truncation box n <= n_max,
m <= m_max.  Lookup is total with A(T) = 0 outside the semidefinite cone;
lookups beyond the box are refused rather than guessed, and every relation
instance that would reference a coefficient outside the box is skipped and
counted in the report.

The lift of an index-1 Jacobi expansion phi with vanishing constant term
assembles A(n, r, l) from the index shifts V_{l,chi}(phi), which makes the
m-th Fourier-Jacobi slice of the output equal to V_{m,chi}(phi) by
construction.

Three equivalent relation families are checked coefficient-wise:

  classical     A(n,r,m) = sum_{d | (n,r,m)} d^(k-1) chi(d) A(nm/d^2, r/d, 1)
  symmetric_l   sum_{d | (n,r,l)} d^(k-1) chi(d) A(nl/d^2, r/d, m)
                  = sum_{d | (l,r,m)} d^(k-1) chi(d) A(n, r/d, ml/d^2)
  p-local       A(np,r,m) + p^(k-1) chi(p) A(n/p, r/p, m)
                  = A(n,r,pm) + p^(k-1) chi(p) A(n, r/p, m/p)

with the convention that coefficients at non-integral or non-semidefinite
arguments are zero.  For p | N the character kills the twisted terms and
the p-local relation degenerates to A(np, r, m) = A(n, r, pm).  The
rank-<=1 ("singular") coefficients a(l) = A(l, 0, 0) of any member of the
lift image satisfy a(l) = (sum_{d | l} d^(k-1) chi(d)) a(1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .characters import parity_compatible, parse_character
from .jacobi import JacobiExpansion, index_shift
from .numtheory import Scalar, divisors, is_prime, pow_fraction
from .serialize import ParseError, parse_header, parse_int, scalar_from_text, scalar_to_text

__all__ = [
    "SiegelExpansion",
    "RelationReport",
    "Violation",
    "fj_coefficient",
    "lift",
    "check_classical",
    "check_symmetric",
    "check_p_relations",
    "check_singular_law",
    "is_maass",
    "write_sksf",
    "parse_sksf",
    "report_to_text",
    "parse_report",
]


def in_cone(n: int, r: int, m: int) -> bool:
    """Membership in the positive semidefinite half-integral cone."""
    return n >= 0 and m >= 0 and 4 * n * m - r * r >= 0


@dataclass(frozen=True)
class Violation:
    """One failed relation instance: identifiers, witness, both sides."""

    relation: str
    n: int
    r: int
    m: int
    shift: int  # the l or p parameter; 0 for relations without one
    left: Scalar
    right: Scalar

    def sort_key(self):
        return (self.n, self.r, self.m, self.shift, self.relation)


@dataclass
class RelationReport:
    """Outcome of a relation check: violations plus the count of instances
    skipped because a referenced coefficient fell outside the box."""

    violations: list[Violation]
    skipped: int = 0

    @property
    def verdict(self) -> bool:
        return not self.violations

    def merged_with(self, other: "RelationReport") -> "RelationReport":
        out = sorted(self.violations + other.violations, key=Violation.sort_key)
        return RelationReport(out, self.skipped + other.skipped)


class SiegelExpansion:
    """A truncated degree-2 Fourier expansion on the box
    n <= n_max, m <= m_max."""

    __slots__ = ("weight", "level", "character", "n_max", "m_max", "cusp", "_coeffs")

    def __init__(self, weight, level, character, n_max, m_max, coeffs, cusp=False):
        if n_max < 0 or m_max < 0:
            raise ValueError("box bounds must be >= 0")
        if level != character.modulus:
            raise ValueError(f"level {level} != character modulus {character.modulus}")
        if not parity_compatible(character, weight):
            raise ValueError(
                f"character parity violates chi(-1) = (-1)^k for weight {weight}"
            )
        clean: dict[tuple[int, int, int], Scalar] = {}
        for (n, r, m), value in coeffs.items():
            value = Scalar.coerce(value)
            if value.is_zero():
                continue
            if (n, r, m) == (0, 0, 0):
                raise ValueError("the zero matrix is excluded from the support")
            if not in_cone(n, r, m):
                raise ValueError(f"coefficient ({n},{r},{m}) outside the cone")
            if n > n_max or m > m_max:
                raise ValueError(f"coefficient ({n},{r},{m}) outside the box")
            if cusp and 4 * n * m - r * r == 0:
                raise ValueError(
                    f"cusp flag set but singular coefficient ({n},{r},{m}) is nonzero"
                )
            clean[(n, r, m)] = value
        object.__setattr__(self, "weight", weight)
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "character", character)
        object.__setattr__(self, "n_max", n_max)
        object.__setattr__(self, "m_max", m_max)
        object.__setattr__(self, "cusp", cusp)
        object.__setattr__(self, "_coeffs", clean)

    def __setattr__(self, name, value):
        raise AttributeError("SiegelExpansion is immutable")

    # -- access ------------------------------------------------------------

    def a(self, n: int, r: int, m: int) -> Scalar:
        """Total lookup: zero outside the cone, error outside the box."""
        if not in_cone(n, r, m):
            return Scalar.zero()
        if n > self.n_max or m > self.m_max:
            raise ValueError(f"coefficient ({n},{r},{m}) outside the stored box")
        return self._coeffs.get((n, r, m), Scalar.zero())

    def _boxed(self, n, r, m) -> Scalar | None:
        """Like :meth:`a` but with fractional-argument and out-of-box
        conventions for the checkers: non-integral arguments and points
        outside the cone give zero; in-cone points beyond the box give
        None (the instance must be skipped)."""
        if any(isinstance(x, Fraction) and x.denominator != 1 for x in (n, r, m)):
            return Scalar.zero()
        n, r, m = int(n), int(r), int(m)
        if not in_cone(n, r, m):
            return Scalar.zero()
        if n > self.n_max or m > self.m_max:
            return None
        return self._coeffs.get((n, r, m), Scalar.zero())

    def nonzero_items(self):
        return self._coeffs.items()

    def box_cells(self):
        """All (n, r, m) in the box with (n, r/2; r/2, m) >= 0 and != 0."""
        for n in range(self.n_max + 1):
            for m in range(self.m_max + 1):
                bound = isqrt(4 * n * m)
                for r in range(-bound, bound + 1):
                    if (n, r, m) != (0, 0, 0):
                        yield (n, r, m)

    def is_zero(self) -> bool:
        return not self._coeffs

    def perturbed(self, n: int, r: int, m: int, delta=1) -> "SiegelExpansion":
        """A copy with A(n, r, m) shifted by delta (cusp flag dropped)."""
        out = dict(self._coeffs)
        value = self.a(n, r, m) + Scalar.coerce(delta)
        if value.is_zero():
            out.pop((n, r, m), None)
        else:
            out[(n, r, m)] = value
        return SiegelExpansion(
            self.weight, self.level, self.character, self.n_max, self.m_max, out,
            cusp=False,
        )

    def __eq__(self, other):
        if not isinstance(other, SiegelExpansion):
            return NotImplemented
        if (self.weight, self.level, self.n_max, self.m_max) != (
            other.weight, other.level, other.n_max, other.m_max
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
            f"SiegelExpansion(k={self.weight}, N={self.level}, "
            f"chi={self.character.to_spec()}, box={self.n_max}x{self.m_max}, "
            f"{len(self._coeffs)} nonzero)"
        )


# ---------------------------------------------------------------------------
# Fourier-Jacobi slices and the lift
# ---------------------------------------------------------------------------

def fj_coefficient(F: SiegelExpansion, m: int) -> JacobiExpansion:
    """The m-th Fourier-Jacobi coefficient: the slice (n, r) -> A(n, r, m)
    as a Jacobi expansion of index m."""
    if m < 0 or m > F.m_max:
        raise ValueError(f"slice index {m} outside the stored box")
    coeffs = {(n, r): c for (n, r, mm), c in F.nonzero_items() if mm == m}
    return JacobiExpansion(
        F.weight, m, F.level, F.character, F.n_max, coeffs, cusp=F.cusp
    )


def lift(phi: JacobiExpansion, m_max: int) -> SiegelExpansion:
    """The Saito-Kurokawa lift of a cuspidal index-1 expansion: the l-th
    Fourier-Jacobi coefficient of the output is V_{l,chi}(phi).

    Inputs with nonzero constant term would need an Eisenstein part and are
    rejected.  The output is boxed at n <= floor(phi.n_max / m_max) so the
    whole box is determined by stored input coefficients.
    """
    if phi.index != 1:
        raise ValueError(f"lift requires an index-1 expansion, got index {phi.index}")
    if not phi.coeff(0, 0).is_zero():
        raise ValueError(
            "nonzero constant term: the Eisenstein part of the lift is unsupported"
        )
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    if m_max > phi.n_max:
        raise ValueError(f"m_max={m_max} exceeds the input truncation {phi.n_max}")
    n_max = phi.n_max // m_max
    coeffs: dict[tuple[int, int, int], Scalar] = {}
    for l in range(1, m_max + 1):
        shifted = index_shift(phi, l)
        for (n, r), c in shifted.nonzero_items():
            if n <= n_max:
                coeffs[(n, r, l)] = c
    return SiegelExpansion(
        phi.weight, phi.level, phi.character, n_max, m_max, coeffs, cusp=phi.cusp
    )


# ---------------------------------------------------------------------------
# Relation checkers
# ---------------------------------------------------------------------------

def _twist(chi, k: int, d: int) -> Scalar:
    return chi.value(d) * pow_fraction(d, k - 1)


def check_classical(F: SiegelExpansion) -> RelationReport:
    """A(n,r,m) = sum_{d | (n,r,m)} d^(k-1) chi(d) A(nm/d^2, r/d, 1)."""
    chi, k = F.character, F.weight
    violations: list[Violation] = []
    skipped = 0
    for n, r, m in F.box_cells():
        g = gcd(gcd(n, r), m)
        refs = []
        out_of_box = False
        for d in divisors(g):
            ref = F._boxed(n * m // (d * d), r // d, 1)
            if ref is None:
                out_of_box = True
                break
            refs.append((d, ref))
        if out_of_box:
            skipped += 1
            continue
        right = Scalar.zero()
        for d, ref in refs:
            if not ref.is_zero():
                right = right + _twist(chi, k, d) * ref
        left = F.a(n, r, m)
        if left != right:
            violations.append(Violation("classical", n, r, m, 0, left, right))
    return RelationReport(violations, skipped)


def check_symmetric(F: SiegelExpansion, l: int) -> RelationReport:
    """The symmetric family at shift l; l = 1 is identically true."""
    if l < 1:
        raise ValueError("shift must be >= 1")
    chi, k = F.character, F.weight
    violations: list[Violation] = []
    skipped = 0
    for n, r, m in F.box_cells():
        left_terms = []
        right_terms = []
        out_of_box = False
        for d in divisors(gcd(gcd(n, r), l)):
            ref = F._boxed(n * l // (d * d), r // d, m)
            if ref is None:
                out_of_box = True
                break
            left_terms.append((d, ref))
        if not out_of_box:
            for d in divisors(gcd(gcd(l, r), m)):
                ref = F._boxed(n, r // d, m * l // (d * d))
                if ref is None:
                    out_of_box = True
                    break
                right_terms.append((d, ref))
        if out_of_box:
            skipped += 1
            continue
        left = Scalar.zero()
        for d, ref in left_terms:
            if not ref.is_zero():
                left = left + _twist(chi, k, d) * ref
        right = Scalar.zero()
        for d, ref in right_terms:
            if not ref.is_zero():
                right = right + _twist(chi, k, d) * ref
        if left != right:
            violations.append(Violation("symmetric", n, r, m, l, left, right))
    return RelationReport(violations, skipped)


def check_p_relations(F: SiegelExpansion, p: int) -> RelationReport:
    """The two-term local relation at a prime p; for p | N it degenerates
    to A(np, r, m) = A(n, r, pm)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    chi, k = F.character, F.weight
    factor = _twist(chi, k, p)
    violations: list[Violation] = []
    skipped = 0
    for n, r, m in F.box_cells():
        a_up = F._boxed(n * p, r, m)
        a_right = F._boxed(n, r, m * p)
        if a_up is None or a_right is None:
            skipped += 1
            continue
        a_down_l = F._boxed(Fraction(n, p), Fraction(r, p), m)
        a_down_r = F._boxed(n, Fraction(r, p), Fraction(m, p))
        # down-scaled arguments stay inside the box whenever they are integral
        left = a_up + factor * a_down_l
        right = a_right + factor * a_down_r
        if left != right:
            violations.append(Violation("plocal", n, r, m, p, left, right))
    return RelationReport(violations, skipped)


def check_singular_law(F: SiegelExpansion) -> RelationReport:
    """A(l, 0, 0) = (sum_{d | l} d^(k-1) chi(d)) A(1, 0, 0) for l <= n_max."""
    chi, k = F.character, F.weight
    violations: list[Violation] = []
    if F.n_max < 1:
        return RelationReport(violations, 0)
    base = F.a(1, 0, 0)
    for l in range(1, F.n_max + 1):
        expected = Scalar.zero()
        if not base.is_zero():
            for d in divisors(l):
                expected = expected + _twist(chi, k, d) * base
        got = F.a(l, 0, 0)
        if got != expected:
            violations.append(Violation("singular", l, 0, 0, 0, got, expected))
    return RelationReport(violations, 0)


def is_maass(F: SiegelExpansion, p_list: list[int]) -> RelationReport:
    """Symmetric checks at every prime in p_list plus the singular law.

    For a conclusive in-box verdict p_list should contain every prime up to
    max(n_max, m_max); the report carries per-prime witnesses via the shift
    field of each violation.
    """
    report = check_singular_law(F)
    for p in p_list:
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        report = report.merged_with(check_symmetric(F, p))
    return report


# ---------------------------------------------------------------------------
# SKSF file format and report text
# ---------------------------------------------------------------------------

def write_sksf(F: SiegelExpansion) -> str:
    """Serialize to SKSF text: every in-cone box cell except (0,0,0),
    explicit zeros included, sorted by (n, r, m)."""
    lines = [
        "SKSF 1",
        f"k={F.weight} N={F.level} chi={F.character.to_spec()} "
        f"nmax={F.n_max} mmax={F.m_max} cusp={int(F.cusp)}",
    ]
    for n, r, m in sorted(F.box_cells()):
        lines.append(f"{n} {r} {m} {scalar_to_text(F.a(n, r, m))}")
    return "\n".join(lines) + "\n"


def parse_sksf(text: str) -> SiegelExpansion:
    lines = text.splitlines()
    if not lines or lines[0].strip() != "SKSF 1":
        raise ParseError(1, "expected header 'SKSF 1'")
    if len(lines) < 2:
        raise ParseError(2, "missing metadata line")
    fields = parse_header(lines[1], ("k", "N", "chi", "nmax", "mmax", "cusp"), 2)
    weight = parse_int(fields["k"], 2, "weight")
    level = parse_int(fields["N"], 2, "level")
    n_max = parse_int(fields["nmax"], 2, "nmax")
    m_max = parse_int(fields["mmax"], 2, "mmax")
    cusp_flag = fields["cusp"]
    if cusp_flag not in ("0", "1"):
        raise ParseError(2, f"bad cusp flag {cusp_flag!r}")
    if level < 1 or n_max < 0 or m_max < 0:
        raise ParseError(2, "level/nmax/mmax out of range")
    try:
        chi = parse_character(fields["chi"], level)
    except ValueError as exc:
        raise ParseError(2, str(exc)) from None
    coeffs: dict[tuple[int, int, int], Scalar] = {}
    seen: set[tuple[int, int, int]] = set()
    for line_no, raw in enumerate(lines[2:], start=3):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 4:
            raise ParseError(line_no, "expected '<n> <r> <m> <value>'")
        n = parse_int(parts[0], line_no, "n")
        r = parse_int(parts[1], line_no, "r")
        m = parse_int(parts[2], line_no, "m")
        if (n, r, m) == (0, 0, 0):
            raise ParseError(line_no, "(0,0,0) is excluded from the support")
        if not in_cone(n, r, m):
            raise ParseError(line_no, f"({n},{r},{m}) outside the semidefinite cone")
        if n > n_max or m > m_max:
            raise ParseError(line_no, f"({n},{r},{m}) outside the box")
        if (n, r, m) in seen:
            raise ParseError(line_no, f"duplicate coefficient ({n},{r},{m})")
        seen.add((n, r, m))
        coeffs[(n, r, m)] = scalar_from_text(parts[3], line_no)
    for n in range(n_max + 1):
        for m in range(m_max + 1):
            bound = isqrt(4 * n * m)
            for r in range(-bound, bound + 1):
                if (n, r, m) != (0, 0, 0) and (n, r, m) not in seen:
                    raise ParseError(
                        len(lines) + 1, f"missing in-region coefficient ({n},{r},{m})"
                    )
    try:
        return SiegelExpansion(weight, level, chi, n_max, m_max, coeffs,
                               cusp=cusp_flag == "1")
    except ValueError as exc:
        raise ParseError(2, str(exc)) from None


def report_to_text(report: RelationReport) -> str:
    lines = ["VERDICT=PASS" if report.verdict else "VERDICT=FAIL"]
    for v in report.violations:
        lines.append(
            f"REL={v.relation} T=({v.n},{v.r},{v.m}) l={v.shift} "
            f"L={scalar_to_text(v.left)} R={scalar_to_text(v.right)}"
        )
    lines.append(f"SKIPPED={report.skipped}")
    return "\n".join(lines) + "\n"


def parse_report(text: str) -> RelationReport:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] not in ("VERDICT=PASS", "VERDICT=FAIL"):
        raise ParseError(1, "expected VERDICT=PASS or VERDICT=FAIL")
    if not lines[-1].startswith("SKIPPED="):
        raise ParseError(len(lines), "expected trailing SKIPPED=<count>")
    skipped = parse_int(lines[-1][len("SKIPPED="):], len(lines), "skip count")
    violations = []
    for line_no, line in enumerate(lines[1:-1], start=2):
        parts = line.split()
        if len(parts) != 5:
            raise ParseError(line_no, "expected 'REL=.. T=(..) l=.. L=.. R=..'")
        try:
            rel = parts[0].removeprefix("REL=")
            triple = parts[1].removeprefix("T=").strip("()").split(",")
            n, r, m = (int(x) for x in triple)
            shift = int(parts[2].removeprefix("l="))
            left = scalar_from_text(parts[3].removeprefix("L="), line_no)
            right = scalar_from_text(parts[4].removeprefix("R="), line_no)
        except (ValueError, IndexError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(line_no, f"malformed violation line: {line!r}") from None
        violations.append(Violation(rel, n, r, m, shift, left, right))
    report = RelationReport(violations, skipped)
    if report.verdict != (lines[0] == "VERDICT=PASS"):
        raise ParseError(1, "verdict line inconsistent with violation list")
    return report
