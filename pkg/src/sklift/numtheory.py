"""Exact arithmetic for modular-forms computations.

Everything here is exact: rational values are ``fractions.Fraction`` and
values mixing rationals with roots of unity live in :class:`Scalar`, a
power-basis model of Q(zeta_M) reduced modulo the M-th cyclotomic
polynomial.  No floating point is used anywhere.

On top of the scalar layer sit the number-theoretic primitives used by the
rest of the package: divisor enumeration, Kronecker symbols, generalized
Bernoulli numbers B_{n,chi} defined by

    sum_{a=1..f} chi(a) t e^{at} / (e^{ft} - 1)  =  sum_n B_{n,chi} t^n / n!

and Cohen's H-function

    H(r, 0) = zeta(1 - 2r)
    H(r, N) = L(1-r, chi_D) * sum_{d | f} mu(d) chi_D(d) d^{r-1} sigma_{2r-1}(f/d)

where (-1)^r N = D f^2 with D a fundamental discriminant, and H(r, N) = 0
whenever (-1)^r N is not congruent to 0 or 1 mod 4.  The value L(1-r, chi_D)
is -B_{r,chi_D}/r, computed exactly from the series above.  H(1, N) is the
Hurwitz class number.  Because H values are reused heavily when generating
Jacobi Eisenstein series, they are memoised on disk (see :data:`cohen_cache`).
"""

from __future__ import annotations

import os
import threading
from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd as _gcd, isqrt, lcm

__all__ = [
    "Rational",
    "Scalar",
    "gcd",
    "divisors",
    "divisors_coprime_to",
    "is_prime",
    "primes_up_to",
    "moebius",
    "sigma",
    "kronecker_symbol",
    "is_fundamental_discriminant",
    "generalized_bernoulli",
    "cohen_h",
    "cyclotomic_polynomial",
]

#: Exact rational scalar type: always in lowest terms, positive denominator.
Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


# ---------------------------------------------------------------------------
# Divisor combinatorics.  "d | (a, b, c)" always means d divides the gcd;
# the condition "d | (0, 0, 0)" is vacuous and never enumerated.
# ---------------------------------------------------------------------------

def gcd(a: int, b: int) -> int:
    """Greatest common divisor, with gcd(0, 0) = 0."""
    return _gcd(a, b)


@lru_cache(maxsize=None)
def divisors(n: int) -> tuple[int, ...]:
    """All positive divisors of n >= 1, ascending."""
    if n < 1:
        raise ValueError("divisors() requires n >= 1")
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return tuple(small + large[::-1])


def divisors_coprime_to(n: int, level: int) -> list[int]:
    """Positive divisors d of n with gcd(d, level) = 1, ascending."""
    if n < 1 or level < 1:
        raise ValueError("divisors_coprime_to() requires positive arguments")
    return [d for d in divisors(n) if _gcd(d, level) == 1]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def primes_up_to(n: int) -> list[int]:
    return [p for p in range(2, n + 1) if is_prime(p)]


@lru_cache(maxsize=None)
def _factorize(n: int) -> tuple[tuple[int, int], ...]:
    if n < 1:
        raise ValueError("factorization requires n >= 1")
    out = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if m > 1:
        out.append((m, 1))
    return tuple(out)


def moebius(n: int) -> int:
    fac = _factorize(n)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def sigma(k: int, n: int) -> int:
    """Divisor power sum sigma_k(n) = sum_{d | n} d^k."""
    return sum(d ** k for d in divisors(n))


# ---------------------------------------------------------------------------
# Kronecker symbol
# ---------------------------------------------------------------------------

def kronecker_symbol(top: int, n: int) -> int:
    """The Kronecker symbol (top / n), completely multiplicative in n.

    Conventions: (top / 0) = 1 iff top = +-1 else 0; (top / -1) = -1 iff
    top < 0; (top / 2) = 0 for even top and +-1 according to top mod 8.
    """
    if n == 0:
        return 1 if top in (1, -1) else 0
    acc = 1
    if n < 0:
        n = -n
        if top < 0:
            acc = -acc
    while n % 2 == 0:
        n //= 2
        if top % 2 == 0:
            return 0
        if top % 8 in (3, 5):
            acc = -acc
    # n odd and positive: Jacobi symbol (top / n) by quadratic reciprocity
    a = top % n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                acc = -acc
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            acc = -acc
        a %= n
    return acc if n == 1 else 0


def squarefree_part(n: int) -> int:
    """The squarefree kernel of n (sign preserved), n != 0."""
    if n == 0:
        raise ValueError("squarefree_part(0) undefined")
    out = -1 if n < 0 else 1
    for p, e in _factorize(abs(n)):
        if e % 2:
            out *= p
    return out


def is_fundamental_discriminant(d: int) -> bool:
    """True for d = 1 and every discriminant of a quadratic field."""
    if d == 0:
        return False
    if d % 4 == 1:
        return squarefree_part(d) == d
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and squarefree_part(m) == m
    return False


# ---------------------------------------------------------------------------
# Cyclotomic scalars
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def cyclotomic_polynomial(order: int) -> tuple[int, ...]:
    """Coefficients (low to high) of the cyclotomic polynomial Phi_order."""
    if order < 1:
        raise ValueError("order must be >= 1")
    poly = [-1] + [0] * (order - 1) + [1]  # x^order - 1
    for d in divisors(order):
        if d != order:
            poly = _int_poly_div_exact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def _int_poly_div_exact(num: list[int], den: tuple[int, ...]) -> list[int]:
    # den is monic; division must be exact
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + len(den) - 1]
        q[i] = c
        if c:
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return q


def _reduce_coords(order: int, coords: list[Fraction]) -> tuple[Fraction, ...]:
    """Reduce a polynomial in zeta_order modulo Phi_order; pad to length order."""
    phi = cyclotomic_polynomial(order)
    deg = len(phi) - 1
    rem = list(coords) + [_ZERO] * max(0, deg - len(coords))
    for i in range(len(rem) - 1, deg - 1, -1):
        c = rem[i]
        if c:
            rem[i] = _ZERO
            base = i - deg
            for j in range(deg):
                if phi[j]:
                    rem[base + j] -= c * phi[j]
    rem = rem[:deg]
    rem += [_ZERO] * (order - len(rem))
    return tuple(rem)


class Scalar:
    """An exact element of Q(zeta_M) in the power basis 1, zeta, ..., zeta^(M-1).

    Stored canonically: the coordinate vector is the remainder modulo the
    M-th cyclotomic polynomial (so entries beyond degree phi(M)-1 are zero),
    which makes equality a coordinate comparison.  Arithmetic between scalars
    of different orders lifts both into Q(zeta_lcm).  M = 1 is plain rational
    arithmetic.  Instances are immutable.
    """

    __slots__ = ("order", "coords")

    def __init__(self, order: int, coords, _reduced: bool = False):
        if order < 1:
            raise ValueError("scalar order must be >= 1")
        vals = [c if isinstance(c, Fraction) else Fraction(c) for c in coords]
        if not _reduced:
            vals = _reduce_coords(order, vals)
        elif len(vals) != order:
            raise ValueError("coordinate vector length must equal order")
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coords", tuple(vals))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_rational(value) -> "Scalar":
        return Scalar(1, (Fraction(value),), _reduced=True)

    @staticmethod
    def zero() -> "Scalar":
        return _SCALAR_ZERO

    @staticmethod
    def one() -> "Scalar":
        return _SCALAR_ONE

    @staticmethod
    def zeta(order: int, power: int = 1) -> "Scalar":
        """The root of unity e(power/order) = zeta_order^power."""
        if order < 1:
            raise ValueError("order must be >= 1")
        coords = [_ZERO] * order
        coords[power % order] = _ONE
        return Scalar(order, coords)

    @staticmethod
    def coerce(value) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        return Scalar.from_rational(value)

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def as_rational(self) -> Fraction | None:
        """The value as a Fraction if it is rational, else None."""
        if any(self.coords[1:]):
            return None
        return self.coords[0]

    def _as_order(self, order: int) -> "Scalar":
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError("cannot lift to a non-multiple order")
        step = order // self.order
        coords = [_ZERO] * order
        for j, c in enumerate(self.coords):
            if c:
                coords[j * step] = c
        return Scalar(order, coords)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                other = Scalar.from_rational(other)
            else:
                return NotImplemented
        if self.order == other.order:
            coords = tuple(x + y for x, y in zip(self.coords, other.coords))
            return Scalar(self.order, coords, _reduced=True)
        common = lcm(self.order, other.order)
        return self._as_order(common) + other._as_order(common)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.order, tuple(-c for c in self.coords), _reduced=True)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar.from_rational(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                coords = tuple(c * other for c in self.coords)
                return Scalar(self.order, coords, _reduced=True)
            return NotImplemented
        if self.order == 1:
            return other * self.coords[0]
        if other.order == 1:
            return self * other.coords[0]
        if self.order != other.order:
            common = lcm(self.order, other.order)
            return self._as_order(common) * other._as_order(common)
        prod = [_ZERO] * (2 * self.order)
        for i, ci in enumerate(self.coords):
            if ci:
                for j, cj in enumerate(other.coords):
                    if cj:
                        prod[i + j] += ci * cj
        return Scalar(self.order, _reduce_coords(self.order, prod), _reduced=True)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Scalar):
            r = other.as_rational()
            if r is None:
                raise TypeError("division only by rational-valued scalars")
            other = r
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        if other == 0:
            raise ZeroDivisionError("scalar division by zero")
        return self * (Fraction(1) / Fraction(other))

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("scalar powers take non-negative integer exponents")
        result = Scalar.one()
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conj(self) -> "Scalar":
        """Complex conjugation: zeta^j maps to zeta^(-j)."""
        coords = [_ZERO] * self.order
        for j, c in enumerate(self.coords):
            if c:
                coords[(-j) % self.order] += c
        return Scalar(self.order, coords)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar.from_rational(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        if self.order == other.order:
            return self.coords == other.coords
        common = lcm(self.order, other.order)
        return self._as_order(common).coords == other._as_order(common).coords

    __hash__ = None

    def __repr__(self):
        r = self.as_rational()
        if r is not None:
            return f"Scalar({r})"
        return f"Scalar(order={self.order}, coords={self.coords})"


_SCALAR_ZERO = Scalar(1, (_ZERO,), _reduced=True)
_SCALAR_ONE = Scalar(1, (_ONE,), _reduced=True)


@lru_cache(maxsize=None)
def unity_root_table(order: int) -> tuple[Scalar, ...]:
    """All powers zeta_order^j, j = 0..order-1, in canonical form."""
    return tuple(Scalar.zeta(order, j) for j in range(order))


def pow_fraction(base: int, exponent: int) -> Fraction:
    """base^exponent as an exact Fraction, exponent of either sign."""
    if exponent >= 0:
        return Fraction(base ** exponent)
    return Fraction(1, base ** (-exponent))


# ---------------------------------------------------------------------------
# Generalized Bernoulli numbers
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _inv_denominator_series(modulus: int, order: int) -> tuple[Fraction, ...]:
    """Series inverse of q(t) = (e^{modulus*t} - 1)/t, up to t^order."""
    # q_j = modulus^(j+1) / (j+1)!
    q = [Fraction(modulus ** (j + 1), factorial(j + 1)) for j in range(order + 1)]
    inv = [Fraction(1) / q[0]]
    for n in range(1, order + 1):
        acc = _ZERO
        for j in range(1, n + 1):
            acc += q[j] * inv[n - j]
        inv.append(-acc / q[0])
    return tuple(inv)


def _bernoulli_term(n: int, modulus: int, a: int) -> Fraction:
    """n! * [t^n] of t e^{at} / (e^{modulus*t} - 1)."""
    inv = _inv_denominator_series(modulus, n)
    acc = _ZERO
    apow = _ONE
    for j in range(n + 1):
        acc += apow / factorial(j) * inv[n - j]
        apow *= a
    return acc * factorial(n)


def generalized_bernoulli(n: int, chi) -> Scalar:
    """B_{n,chi}, exactly, from the defining exponential generating series.

    ``chi`` is any Dirichlet-character-like object exposing ``modulus`` and
    ``value(a) -> Scalar``.  The trivial character mod 1 yields the Bernoulli
    numbers in the convention with B_1 = +1/2.
    """
    if n < 0:
        raise ValueError("Bernoulli index must be >= 0")
    f = chi.modulus
    total = Scalar.zero()
    for a in range(1, f + 1):
        v = chi.value(a)
        if v.is_zero():
            continue
        total = total + v * _bernoulli_term(n, f, a)
    return total


def _bernoulli_kronecker(n: int, disc: int) -> Fraction:
    """B_{n,chi_D} for the quadratic character chi_D = (disc / .), rational."""
    f = abs(disc) if disc != 1 else 1
    acc = _ZERO
    for a in range(1, f + 1):
        v = kronecker_symbol(disc, a)
        if v:
            acc += v * _bernoulli_term(n, f, a)
    return acc


def _zeta_negative(m: int) -> Fraction:
    """zeta(1 - m) = -B_m / m for m >= 1 (B_1 = +1/2 convention)."""
    return -_bernoulli_kronecker(m, 1) / m


# ---------------------------------------------------------------------------
# Cohen's H-function and its disk cache
# ---------------------------------------------------------------------------

class CohenCache:
    """Disk-backed memo for H(r, N), safe for concurrent reads with
    exclusive writes.

    The cache lives in ``$SK_CACHE_DIR`` (default ``.skcache``) as a
    line-oriented text file, one record per line::

        H <r> <N> <numerator>/<denominator>

    Records may repeat; repeated records must agree.  The file is created
    lazily on first write.
    """

    FILENAME = "cohen_h.txt"

    def __init__(self):
        self._lock = threading.Lock()
        self._path: str | None = None
        self._values: dict[tuple[int, int], Fraction] = {}

    def _resolve_path(self) -> str:
        base = os.environ.get("SK_CACHE_DIR", ".skcache")
        return os.path.join(base, self.FILENAME)

    def _ensure_loaded(self, path: str) -> None:
        if path == self._path:
            return
        values: dict[tuple[int, int], Fraction] = {}
        if os.path.exists(path):
            with open(path, "r", encoding="ascii") as fh:
                for raw in fh:
                    line = raw.strip()
                    if not line:
                        continue
                    parts = line.split()
                    if len(parts) != 4 or parts[0] != "H":
                        raise ValueError(f"malformed cache record: {line!r}")
                    key = (int(parts[1]), int(parts[2]))
                    num, den = parts[3].split("/")
                    val = Fraction(int(num), int(den))
                    if key in values and values[key] != val:
                        raise ValueError(f"conflicting cache records for H{key}")
                    values[key] = val
        self._path = path
        self._values = values

    def get(self, r: int, nval: int) -> Fraction | None:
        with self._lock:
            self._ensure_loaded(self._resolve_path())
            return self._values.get((r, nval))

    def put(self, r: int, nval: int, value: Fraction) -> None:
        with self._lock:
            path = self._resolve_path()
            self._ensure_loaded(path)
            key = (r, nval)
            known = self._values.get(key)
            if known is not None:
                if known != value:
                    raise ValueError(f"conflicting cache records for H{key}")
                return
            self._values[key] = value
            os.makedirs(os.path.dirname(path), exist_ok=True)
            with open(path, "a", encoding="ascii") as fh:
                fh.write(f"H {r} {nval} {value.numerator}/{value.denominator}\n")


#: Process-wide H(r, N) cache.
cohen_cache = CohenCache()


def _fundamental_decomposition(s: int) -> tuple[int, int]:
    """Write s = D f^2 with D a fundamental discriminant; s = 0,1 mod 4."""
    d0 = squarefree_part(s)
    disc = d0 if d0 % 4 == 1 else 4 * d0
    ratio = s // disc
    f = isqrt(ratio)
    if disc * f * f != s:
        raise ArithmeticError(f"no fundamental decomposition for {s}")
    return disc, f


def cohen_h(r: int, nval: int) -> Fraction:
    """Cohen's function H(r, N) as an exact rational.

    H(1, N) is the Hurwitz class number; H(r, 0) = zeta(1-2r); values vanish
    unless (-1)^r N = 0, 1 mod 4.
    """
    if r < 1:
        raise ValueError("cohen_h requires r >= 1")
    if nval < 0:
        raise ValueError("cohen_h requires N >= 0")
    cached = cohen_cache.get(r, nval)
    if cached is not None:
        return cached
    if nval == 0:
        value = _zeta_negative(2 * r)
    else:
        signed = nval if r % 2 == 0 else -nval
        if signed % 4 not in (0, 1):
            value = _ZERO
        else:
            disc, f = _fundamental_decomposition(signed)
            lvalue = -Fraction(_bernoulli_kronecker(r, disc), r)
            acc = 0
            for d in divisors(f):
                mu = moebius(d)
                if mu:
                    acc += mu * kronecker_symbol(disc, d) * d ** (r - 1) * sigma(2 * r - 1, f // d)
            value = lvalue * acc
    cohen_cache.put(r, nval, value)
    return value
