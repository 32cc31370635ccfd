"""Exact integer and rational arithmetic.

Python ints are already arbitrary precision and :class:`fractions.Fraction`
keeps values reduced with a positive denominator, so both are used directly as
the coefficient domain.  This module pins down the operations and the textual
``p/q`` lexeme the polynomial parser relies on.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import DomainError, ParseError

Integer = int
Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

_RATIONAL_RE = re.compile(r"\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*\Z")


def as_rational(value) -> Fraction:
    """Coerce an int, Fraction or ``p/q`` string to a Fraction.

    Floats are rejected: silently importing binary rounding error would defeat
    the point of exact coefficients.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot interpret {type(value).__name__} as an exact rational")


def rat_add(a: Fraction, b: Fraction) -> Fraction:
    return a + b


def rat_sub(a: Fraction, b: Fraction) -> Fraction:
    return a - b


def rat_neg(a: Fraction) -> Fraction:
    return -a


def rat_mul(a: Fraction, b: Fraction) -> Fraction:
    return a * b


def rat_inv(a: Fraction) -> Fraction:
    if a == 0:
        raise DomainError("inverse of zero")
    return 1 / Fraction(a)


def rat_div(a: Fraction, b: Fraction) -> Fraction:
    return Fraction(a) * rat_inv(b)


def is_canonical(q: Fraction) -> bool:
    from math import gcd

    return q.denominator > 0 and gcd(abs(q.numerator), q.denominator) == 1


def parse_integer(text: str) -> int:
    s = text.strip()
    if not re.fullmatch(r"[+-]?\d+", s):
        raise ParseError(f"invalid integer literal {text!r}", text)
    return int(s)


def parse_rational(text: str) -> Fraction:
    """Parse ``"7"``, ``"-5/6"`` or ``"10/4"`` (stored reduced as 5/2)."""
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ParseError(f"invalid rational literal {text!r}", text)
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise DomainError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
