"""Low-level helpers for the line-oriented SKJF/SKSF text formats.

Rational values serialize as ``<numerator>/<denominator>``; scalars with
irrational cyclotomic coordinates serialize as the comma-joined coordinate
vector (one rational per power-basis coordinate, length = ring order).
Parse failures carry 1-based line numbers.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .numtheory import Scalar

__all__ = ["ParseError", "rational_to_text", "scalar_to_text", "scalar_from_text",
           "parse_int", "parse_header"]

_RATIONAL_RE = re.compile(r"^(-?\d+)/(\d+)$")


class ParseError(ValueError):
    """A malformed line in a text format; carries the line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def rational_to_text(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def scalar_to_text(value: Scalar) -> str:
    r = value.as_rational()
    if r is not None:
        return rational_to_text(r)
    return ",".join(rational_to_text(c) for c in value.coords)


def _rational_from_text(text: str, line_no: int) -> Fraction:
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ParseError(line_no, f"bad rational {text!r} (expected num/den)")
    den = int(m.group(2))
    if den == 0:
        raise ParseError(line_no, "zero denominator")
    return Fraction(int(m.group(1)), den)


def scalar_from_text(text: str, line_no: int) -> Scalar:
    parts = text.split(",")
    if len(parts) == 1:
        return Scalar.from_rational(_rational_from_text(text, line_no))
    coords = [_rational_from_text(p, line_no) for p in parts]
    return Scalar(len(coords), coords)


def parse_int(text: str, line_no: int, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ParseError(line_no, f"bad {what} {text!r}") from None


def parse_header(line: str, keys: tuple[str, ...], line_no: int) -> dict[str, str]:
    """Parse ``k1=v1 k2=v2 ...`` requiring exactly the given keys in order."""
    tokens = line.split()
    if len(tokens) != len(keys):
        raise ParseError(line_no, f"expected fields {' '.join(keys)}")
    out = {}
    for token, key in zip(tokens, keys):
        prefix = key + "="
        if not token.startswith(prefix):
            raise ParseError(line_no, f"expected field {key}=..., got {token!r}")
        out[key] = token[len(prefix):]
    return out
